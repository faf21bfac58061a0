#pragma once

#include <stdexcept>
#include <string>

namespace ppv {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define PPV_DEFINE_ERROR(Name)                                                \
  class Name : public error {                                                 \
  public:                                                                     \
    explicit Name(const std::string &what) : error(#Name ": " + what) {}      \
  }

PPV_DEFINE_ERROR(DivByZero);
PPV_DEFINE_ERROR(ZeroLeadingTerm);
PPV_DEFINE_ERROR(SingularLeadingMatrix);
PPV_DEFINE_ERROR(NonInvertibleScalar);
PPV_DEFINE_ERROR(NotRepresentable);
PPV_DEFINE_ERROR(InsufficientPrecision);
PPV_DEFINE_ERROR(PoleOutsidePointSet);
PPV_DEFINE_ERROR(PrecisionExhausted);
PPV_DEFINE_ERROR(WrongPointCount);
PPV_DEFINE_ERROR(InvalidPoints);
PPV_DEFINE_ERROR(InvalidInput);
PPV_DEFINE_ERROR(ParseError);

#undef PPV_DEFINE_ERROR

} // namespace ppv
