#pragma once

#include "ppv/error.hpp"
#include "ppv/exact/matrix.hpp"
#include "ppv/exact/partial_frac.hpp"
#include "ppv/exact/poly.hpp"
#include "ppv/exact/rat.hpp"
#include "ppv/exact/ratfunc.hpp"
#include "ppv/forge.hpp"
#include "ppv/local_seed.hpp"
#include "ppv/parallel.hpp"
#include "ppv/patcher.hpp"
#include "ppv/rootdata.hpp"
#include "ppv/series/tmatrix.hpp"
#include "ppv/series/tseries.hpp"
#include "ppv/tower.hpp"
