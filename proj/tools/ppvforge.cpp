// ppvforge: build and check parameterized Picard-Vessiot equations for split
// groups over Q((t))(x).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ppv.hpp"
#include "ppv/io/json_io.hpp"

namespace {

using ppv::io::json;

constexpr int kExitPass = 0;
constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;

/// "0,1,...,11" style lists; "..." continues the step of the two previous
/// entries up to the next one.
std::vector<ppv::Rat> parse_points(const std::string &text) {
  std::vector<std::string> tokens;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    tokens.push_back(b == std::string::npos ? "" : tok.substr(b, e - b + 1));
  }
  std::vector<ppv::Rat> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] != "...") {
      out.push_back(ppv::Rat::parse(tokens[i]));
      continue;
    }
    if (out.size() < 2 || i + 1 >= tokens.size() || tokens[i + 1] == "...")
      throw ppv::ParseError("'...' needs two entries before it and one after it");
    const ppv::Rat step = out.back() - out[out.size() - 2];
    const ppv::Rat last = ppv::Rat::parse(tokens[i + 1]);
    if (step.is_zero() || ((last - out.back()) / step).den() != 1 || (last - out.back()) / step < ppv::Rat(1))
      throw ppv::ParseError("'...' does not reach " + last.str() + " in steps of " + step.str());
    for (ppv::Rat v = out.back() + step; v != last; v += step)
      out.push_back(v);
  }
  return out;
}

json read_json(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ppv::ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw ppv::ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json(const std::string &path, const json &j) {
  std::ofstream out(path);
  if (!out)
    throw ppv::InvalidInput("cannot write '" + path + "'");
  out << j.dump(1) << "\n";
}

void print_report(const ppv::VerificationReport &rep) {
  std::printf("%-24s %-13s %-6s %s\n", "check", "status", "order", "notes");
  for (const auto &c : rep.checks) {
    std::string status = ppv::to_string(c.status);
    if (!c.mandatory)
      status += "*";
    std::printf("%-24s %-13s %-6d %s\n", c.name.c_str(), status.c_str(), c.verified_order,
                c.notes.c_str());
  }
  for (const auto &n : rep.notes)
    std::printf("note: %s\n", n.c_str());
  std::printf("(* = not mandatory)\noverall: %s\n", rep.overall() ? "pass" : "fail");
}

// ---------------------------------------------------------------------------

struct BuildArgs {
  std::string group;
  std::string points;
  int prec = 16;
  std::string out;
};

int cmd_build(const BuildArgs &a) {
  const auto rd = ppv::RootDatum::make(a.group);
  const ppv::PointSet ps =
      a.points.empty() ? ppv::default_points(rd) : ppv::PointSet(parse_points(a.points));
  const auto b = ppv::build(rd, ps, a.prec);
  write_json(a.out, ppv::io::bundle_to_json(b));
  std::printf("%s, %zu points, precision %d -> %s\n", rd.label().c_str(), ps.size(), a.prec,
              a.out.c_str());
  print_report(b.report);
  return b.report.overall() ? kExitPass : kExitCheck;
}

int cmd_verify(const std::string &path) {
  const auto b = ppv::io::bundle_from_json(read_json(path));
  const auto rep = ppv::verify_bundle(b);
  std::printf("%s, %zu points, precision %d\n", b.rd.label().c_str(), b.ps.size(), b.N);
  print_report(rep);
  if (!(rep == b.report))
    std::printf("warning: the stored report differs from the recomputed one\n");
  return rep.overall() ? kExitPass : kExitCheck;
}

int cmd_factor(const std::string &in, const std::string &out) {
  const json j = read_json(in);
  ppv::PatchProblem<ppv::Coeff> p;
  if (j.is_object() && j.contains("seeds")) {
    const auto b = ppv::io::bundle_from_json(j);
    p = {b.ps, {}, b.rd.rep_dim(), b.N};
    for (const auto &s : b.seeds)
      p.inputs.push_back(s.Y_local);
  } else {
    p = ppv::io::patch_problem_from_json(j);
  }
  const auto sol = ppv::factor_simultaneous(p);
  const auto rep = ppv::verify_patch(p, sol);
  if (!out.empty())
    write_json(out, json{{"points", ppv::io::points_to_json(p.ps)},
                         {"patch", ppv::io::patch_to_json(sol)},
                         {"report", ppv::io::to_json(rep)}});
  std::printf("%zu points, %zux%zu, target t^%d\n", p.ps.size(), p.n, p.n, p.N_target);
  for (std::size_t i = 0; i < p.ps.size(); ++i)
    std::printf("  q = %-8s residual vanishes mod t^%-3d Z_i in F_i ring: %s\n",
                p.ps[i].str().c_str(), rep.verified_order[i], rep.z_in_Fi[i] ? "yes" : "no");
  std::printf("Y in F0 ring: %s, Y == I mod t: %s\noverall: %s\n", rep.y_in_F0 ? "yes" : "no",
              rep.identity_mod_t ? "yes" : "no", rep.pass() ? "pass" : "fail");
  return rep.pass() ? kExitPass : kExitCheck;
}

int cmd_rootcheck(const std::string &group, unsigned seed) {
  const auto rd = ppv::RootDatum::make(group);
  bool ok = true;
  std::printf("%s: %zu roots, %zu positive, rank %d\n", rd.label().c_str(), rd.roots().size(),
              rd.num_positive(), rd.rank());
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  for (const auto &r : rd.roots()) {
    const bool springer = ppv::springer_identity_check(rd, r.id, ppv::formal_scalar());
    bool additive = true;
    for (int k = 0; k < 8; ++k) {
      const ppv::Rat a(num(rng), den(rng)), b(num(rng), den(rng));
      additive = additive && ppv::u_matrix(rd, r.id, a) * ppv::u_matrix(rd, r.id, b) ==
                                 ppv::u_matrix(rd, r.id, a + b);
    }
    ok = ok && springer && additive;
    std::printf("  %-12s springer %-4s additivity %s\n", ppv::root_name(r.id).c_str(),
                springer ? "pass" : "FAIL", additive ? "pass" : "FAIL");
  }
  std::vector<ppv::GroupDescriptor> desc;
  for (std::size_t i = 0; i < 4 * rd.num_positive(); ++i) {
    const auto [fam, alpha] = ppv::seed_assignment(rd, i);
    desc.push_back({ppv::family_root(fam, alpha), ppv::family_multiplier(fam)});
  }
  const auto pg = ppv::propgen_hypothesis_check(rd, desc);
  std::printf("generation hypotheses (%zu descriptors): %s\n", desc.size(),
              pg.pass ? "pass" : "FAIL");
  for (const auto &m : pg.missing)
    std::printf("  missing %s\n", m.c_str());
  ok = ok && pg.pass;
  std::printf("overall: %s\n", ok ? "pass" : "fail");
  return ok ? kExitPass : kExitCheck;
}

int cmd_reconstruct(const std::string &in, std::optional<int> dx, std::optional<int> prec) {
  const json j = read_json(in);
  const auto a = ppv::io::detail::guarded("series", [&] {
    return ppv::io::ratfunc_series_from_json(j.is_object() && j.contains("series") ? j.at("series") : j);
  });
  const int N = prec ? *prec : a.prec();
  if (N >= ppv::kExact)
    throw ppv::InvalidInput("the series is exact; pass --prec");
  const auto r = dx ? ppv::reconstruct(a, *dx, N) : ppv::reconstruct_schedule(a, N);
  if (!r.success) {
    std::printf("inconclusive at bounds (d_x <= %d, %d orders)\n", r.bound, N);
    return kExitCheck;
  }
  std::printf("certificate: Q a == P mod t^%d, deg_x P = %d, deg_x Q = %d\n", r.verified_order,
              r.d_x_num, r.d_x_den);
  std::cout << "P = " << r.numerator << "\nQ = " << r.denominator << "\n";
  return kExitPass;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Parameterized Picard-Vessiot equations by patching"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));

  BuildArgs ba;
  auto *build = app.add_subcommand("build", "construct and verify an equation bundle");
  build->add_option("--group", ba.group, "A1, A2, ..., C2")->required();
  build->add_option("--points", ba.points, "comma list of rationals, '...' allowed");
  build->add_option("--prec", ba.prec, "t-adic precision N")->capture_default_str();
  build->add_option("--out", ba.out, "bundle path")->required();

  std::string verify_in;
  auto *verify = app.add_subcommand("verify", "recheck a bundle from its raw data");
  verify->add_option("--in,path", verify_in, "bundle path")->required();

  std::string factor_in, factor_out;
  auto *factor = app.add_subcommand("factor", "simultaneous factorization Y_i = Z_i^-1 Y");
  factor->add_option("--in,path", factor_in, "problem or bundle path")->required();
  factor->add_option("--out", factor_out, "solution path");

  std::string rc_group;
  unsigned rng_seed = 1;
  auto *rootcheck = app.add_subcommand("rootcheck", "Springer identity and generation criterion");
  rootcheck->add_option("--group", rc_group, "A1, A2, ..., C2")->required();
  rootcheck->add_option("--rng-seed", rng_seed, "seed for the random additivity samples")
      ->capture_default_str();

  std::string rec_in;
  std::optional<int> rec_dx, rec_prec;
  auto *rec = app.add_subcommand("reconstruct", "rational reconstruction of a t-series");
  rec->add_option("--in,path", rec_in, "series path")->required();
  rec->add_option("--dx", rec_dx, "x-degree bound (default: schedule 1, 2, 4, 8)");
  rec->add_option("--prec", rec_prec, "number of t-orders to use");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }
  ppv::thread_count() = threads;

  try {
    if (*build)
      return cmd_build(ba);
    if (*verify)
      return cmd_verify(verify_in);
    if (*factor)
      return cmd_factor(factor_in, factor_out);
    if (*rootcheck)
      return cmd_rootcheck(rc_group, rng_seed);
    if (*rec)
      return cmd_reconstruct(rec_in, rec_dx, rec_prec);
  } catch (const ppv::ParseError &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ppv::InvalidInput &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ppv::InvalidPoints &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ppv::WrongPointCount &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ppv::InsufficientPrecision &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ppv::error &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCheck;
  }
  return kExitUsage;
}
