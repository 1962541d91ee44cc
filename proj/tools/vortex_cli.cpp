// Batch front end: solve orchestration, persistence, report emission.
// Exit codes: 0 success, 2 config error, 3 solver failure, 4 certification
// failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "vortex/diagnostics.hpp"
#include "vortex/identities.hpp"
#include "vortex/io.hpp"
#include "vortex/planar.hpp"
#include "vortex/radial.hpp"
#include "vortex/shooting.hpp"

namespace {

constexpr const char* kVersion = "0.3.0";
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitCertify = 4;

using vortex::io::json;

std::string rat_str(const vortex::Rat& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

struct Common {
  int n1 = 0, n2 = 0;
  double eps = 1.0;
  double lambda = 1.0;
  double tol = 1e-8;
  double t_max = 12.0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--n1", c.n1, "vortex multiplicity 1")->check(CLI::NonNegativeNumber);
  sub->add_option("--n2", c.n2, "vortex multiplicity 2")->check(CLI::NonNegativeNumber);
  sub->add_option("--eps", c.eps, "deformation parameter")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--lambda", c.lambda, "coupling")->check(CLI::PositiveNumber);
  sub->add_option("--tol", c.tol, "integrator tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--t-max", c.t_max, "log-radius horizon");
}

json common_json(const std::string& mode, const Common& c) {
  return {{"mode", mode}, {"version", kVersion}, {"n1", c.n1},     {"n2", c.n2},
          {"eps", c.eps}, {"lambda", c.lambda},  {"tol", c.tol},   {"t_max", c.t_max}};
}

// ---------------------------------------------------------------------------

int run_solve_radial(const Common& c, double beta1, double beta2,
                     const std::string& out, const std::string& report_out,
                     const std::string& atlas_path, double identity_tol) {
  vortex::RadialParams params{c.n1, c.n2, c.eps, 1.0};
  if (!params.valid()) {
    std::fprintf(stderr, "invalid parameters\n");
    return kExitConfig;
  }
  vortex::SolveOptions opts;
  opts.shoot.t_max = c.t_max;
  std::vector<vortex::AtlasCell> atlas;
  if (!atlas_path.empty()) {
    atlas = vortex::io::read_atlas_csv(atlas_path);
    opts.atlas = &atlas;
  }
  auto rep = vortex::solve_for_target({beta1, beta2}, params, c.tol, opts);
  if (!rep.converged) {
    std::fprintf(stderr, "solver failed: %s\n", rep.message.c_str());
    return kExitSolver;
  }
  vortex::RadialSolution sol = rep.solution;
  if (c.lambda != 1.0) sol = vortex::rescale_lambda(sol, c.lambda);

  json run = common_json("solve-radial", c);
  run["beta1"] = beta1;
  run["beta2"] = beta2;
  run["iterations"] = rep.iterations;

  json jsol = vortex::io::radial_to_json(sol);
  jsol["run"] = run;
  vortex::io::write_json(jsol, out);

  auto identity = vortex::pohozaev_report(rep.solution);
  json jrep = vortex::io::report_to_json(identity);
  jrep["run"] = run;
  vortex::io::write_json(jrep, report_out);

  std::printf("converged in %d iterations, a = (%.12g, %.12g), max rel err %.3g\n",
              rep.iterations, rep.shoot.a1, rep.shoot.a2, identity.max_rel_err());
  if (identity.max_rel_err() >= identity_tol) {
    std::fprintf(stderr, "identity check failed (>= %g)\n", identity_tol);
    return kExitCertify;
  }
  return 0;
}

int run_shoot(const Common& c, double a1, double a2, const std::string& out) {
  vortex::RadialParams params{c.n1, c.n2, c.eps, 1.0};
  if (!params.valid()) {
    std::fprintf(stderr, "invalid parameters\n");
    return kExitConfig;
  }
  vortex::ShootOptions so;
  so.t_max = c.t_max;
  auto [outcome, sol] = vortex::shoot({a1, a2}, params, c.tol, so);
  if (c.lambda != 1.0) sol = vortex::rescale_lambda(sol, c.lambda);
  if (!out.empty()) {
    json run = common_json("shoot", c);
    run["a1"] = a1;
    run["a2"] = a2;
    json jsol = vortex::io::radial_to_json(sol);
    jsol["run"] = run;
    vortex::io::write_json(jsol, out);
  }
  std::printf("%s", vortex::outcome_kind_name(outcome.kind).c_str());
  if (outcome.kind == vortex::OutcomeKind::NonTopological)
    std::printf("  beta = (%.12g, %.12g)  certified=%d", outcome.beta1, outcome.beta2,
                int(sol.certified));
  std::printf("\n");
  return outcome.kind == vortex::OutcomeKind::NumericalFailure ? kExitSolver : 0;
}

int run_scan(const Common& c, double a1_lo, double a1_hi, double a2_lo, double a2_hi,
             int steps, int workers, const std::string& out) {
  vortex::RadialParams params{c.n1, c.n2, c.eps, 1.0};
  if (!params.valid() || steps < 2) {
    std::fprintf(stderr, "invalid parameters\n");
    return kExitConfig;
  }
  auto cells = vortex::scan_region(a1_lo, a1_hi, a2_lo, a2_hi, steps, params, c.tol,
                                   workers);
  vortex::io::write_atlas_csv(cells, out);
  int nt = 0;
  for (const auto& cell : cells)
    if (cell.outcome.kind == vortex::OutcomeKind::NonTopological) ++nt;
  std::printf("%zu cells (%d non-topological) -> %s\n", cells.size(), nt, out.c_str());
  return 0;
}

struct PlanarArgs {
  std::vector<double> p1, p2;  // flat x y pairs
  double beta1 = 0.0, beta2 = 0.0;
  double radius = 40.0;
  int side = 321;
  double newton_tol = 1e-10;
  int steps = 10;
  double identity_tol = 1e-2;
  std::string out = "planar.json";
};

std::vector<vortex::Point> to_points(const std::vector<double>& flat) {
  std::vector<vortex::Point> pts;
  for (std::size_t i = 0; i + 1 < flat.size(); i += 2) pts.push_back({flat[i], flat[i + 1]});
  return pts;
}

void add_planar(CLI::App* sub, PlanarArgs& a) {
  sub->add_option("--points1", a.p1, "vortex points of component 1 (x y pairs)");
  sub->add_option("--points2", a.p2, "vortex points of component 2 (x y pairs)");
  sub->add_option("--beta1", a.beta1, "target decay 1")->required();
  sub->add_option("--beta2", a.beta2, "target decay 2")->required();
  sub->add_option("--radius", a.radius, "disk radius")->check(CLI::PositiveNumber);
  sub->add_option("--side", a.side, "grid points per side")->check(CLI::Range(3, 600));
  sub->add_option("--newton-tol", a.newton_tol, "Newton residual tolerance");
  sub->add_option("--steps", a.steps, "uniform continuation schedule size");
  sub->add_option("--identity-tol", a.identity_tol, "identity certification tolerance");
  sub->add_option("--out", a.out, "output header path (payload CSV alongside)");
}

int run_planar(const Common& c, const PlanarArgs& a, bool emit_path) {
  if (a.p1.size() % 2 || a.p2.size() % 2) {
    std::fprintf(stderr, "point lists must contain x y pairs\n");
    return kExitConfig;
  }
  vortex::VortexConfig cfg;
  cfg.n1 = c.n1;
  cfg.n2 = c.n2;
  cfg.points1 = to_points(a.p1);
  cfg.points2 = to_points(a.p2);
  cfg.eps = 1.0;
  if (!cfg.valid()) {
    std::fprintf(stderr, "point counts must match the multiplicities\n");
    return kExitConfig;
  }
  // Targets below eps=1 run the same homotopy with the points pre-scaled.
  if (c.eps < 1.0)
    for (auto* pts : {&cfg.points1, &cfg.points2})
      for (auto& p : *pts) {
        p[0] *= c.eps;
        p[1] *= c.eps;
      }

  vortex::RadialParams rparams{c.n1, c.n2, 1.0, 1.0};
  auto rad = vortex::solve_for_target({a.beta1, a.beta2}, rparams, c.tol);
  if (!rad.converged) {
    std::fprintf(stderr, "radial seed failed: %s\n", rad.message.c_str());
    return kExitSolver;
  }

  vortex::DiskGrid grid(a.radius, a.side);
  vortex::ContinuationOptions copts;
  copts.steps = a.steps;
  copts.newton.tol = a.newton_tol;
  int step_idx = 0;
  const auto stem = std::filesystem::path(a.out).stem().string();
  const auto dir = std::filesystem::path(a.out).parent_path();
  if (emit_path) {
    copts.on_step = [&](const vortex::PlanarSolution& s) {
      char name[64];
      std::snprintf(name, sizeof(name), "-step%03d", step_idx++);
      const std::string payload = stem + name + ".csv";
      json j = vortex::io::planar_header_json(s, payload);
      vortex::io::write_json(j, (dir / (stem + name + ".json")).string());
      vortex::io::write_planar_payload(s, (dir / payload).string());
    };
  }
  auto res = vortex::continue_in_eps(rad.solution, cfg, {a.beta1, a.beta2}, grid, copts);
  if (!res.completed) {
    std::fprintf(stderr, "continuation failed: %s\n", res.message.c_str());
    return kExitSolver;
  }

  const vortex::PlanarSolution& final_sol = res.path.back();
  const std::string payload = stem + ".csv";
  json run = common_json(emit_path ? "continue" : "solve-planar", c);
  run["beta1"] = a.beta1;
  run["beta2"] = a.beta2;
  run["radius"] = a.radius;
  run["side"] = a.side;
  run["steps"] = a.steps;
  json j = vortex::io::planar_header_json(final_sol, payload);
  j["run"] = run;
  vortex::io::write_json(j, a.out);
  vortex::io::write_planar_payload(final_sol, (dir / payload).string());

  auto identity = vortex::pohozaev_planar_report(final_sol);
  json jrep = vortex::io::report_to_json(identity);
  jrep["run"] = run;
  vortex::io::write_json(jrep, (dir / (stem + "-report.json")).string());

  std::printf("continuation done in %zu steps, residual %.3g, max rel err %.3g\n",
              res.path.size(), final_sol.residual_norm, identity.max_rel_err());
  if (identity.max_rel_err() >= a.identity_tol) {
    std::fprintf(stderr, "identity check failed (>= %g)\n", a.identity_tol);
    return kExitCertify;
  }
  return 0;
}

int run_verify(const std::string& path, double cert_tol, double identity_tol) {
  json j = vortex::io::read_json(path);
  const std::string schema = j.value("schema", "");
  if (schema == vortex::io::kSchemaRadial) {
    vortex::RadialSolution sol = vortex::io::radial_from_json(j);
    vortex::estimate_beta(sol, cert_tol);
    if (!sol.certified) {
      std::fprintf(stderr, "certification failed: beta agreement %.3g >= %g\n",
                   sol.beta_agreement, cert_tol);
      return kExitCertify;
    }
    auto identity = vortex::pohozaev_report(sol);
    std::printf("beta = (%.12g, %.12g), agreement %.3g, max rel err %.3g\n",
                sol.beta_slope.first, sol.beta_slope.second, sol.beta_agreement,
                identity.max_rel_err());
    if (identity.max_rel_err() >= identity_tol) {
      std::fprintf(stderr, "identity check failed (>= %g)\n", identity_tol);
      return kExitCertify;
    }
    return 0;
  }
  if (schema == vortex::io::kSchemaPlanar) {
    vortex::PlanarSolution sol = vortex::io::planar_from_files(path);
    if (!sol.converged) {
      std::fprintf(stderr, "stored solution is not converged\n");
      return kExitCertify;
    }
    auto identity = vortex::pohozaev_planar_report(sol);
    std::printf("max rel err %.3g\n", identity.max_rel_err());
    if (identity.max_rel_err() >= sol.grid_tol) {
      std::fprintf(stderr, "identity check failed (>= %g)\n", sol.grid_tol);
      return kExitCertify;
    }
    return 0;
  }
  std::fprintf(stderr, "unrecognized schema '%s'\n", schema.c_str());
  return kExitConfig;
}

int run_exclusion(const std::string& b1s, const std::string& b2s, int n1, int n2,
                  const std::string& out) {
  auto b1 = vortex::parse_rational(b1s);
  auto b2 = vortex::parse_rational(b2s);
  if (!b1 || !b2 || *b1 <= vortex::Rat(1) || *b2 <= vortex::Rat(1)) {
    std::fprintf(stderr, "beta values must be rationals > 1\n");
    return kExitConfig;
  }
  auto rep = vortex::exclusion_check(*b1, *b2, n1, n2);
  json j;
  j["schema"] = "vortex.exclusion-report.v1";
  j["run"] = {{"mode", "exclusion"}, {"version", kVersion}, {"n1", n1},
              {"n2", n2},            {"beta1", b1s},        {"beta2", b2s}};
  j["satisfies_product_condition"] = rep.satisfies_product_condition;
  j["boundary_case"] = rep.boundary_case;
  j["exclusion_value"] = rat_str(rep.exclusion_value);
  j["on_curve"] = rep.on_curve;
  if (rep.nearest_k) j["nearest_k"] = *rep.nearest_k;
  if (rep.distance_to_curve) j["distance_to_curve"] = rat_str(*rep.distance_to_curve);
  if (rep.predicted_S) j["predicted_S"] = rat_str(*rep.predicted_S);
  if (rep.on_curve && rep.predicted_S &&
      rep.predicted_S->denominator() == 1) {
    const long long s = rep.predicted_S->numerator();
    const vortex::Rat m = 2 * (*b1 + n1) / s;
    const vortex::Rat n = 2 * (*b2 + n2) / s;
    auto mass = vortex::mass_relations_check(m, n, int(s), n1, n2, *b1, *b2);
    j["mass"] = {{"m", rat_str(m)},
                 {"n", rat_str(n)},
                 {"s", s},
                 {"consistent", mass.consistent},
                 {"degenerate", mass.degenerate}};
  }
  if (!out.empty()) vortex::io::write_json(j, out);
  std::printf("%s\n", j.dump(2).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skew-coupled vortex system: radial shooting, planar continuation, "
               "identity certification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "",
                 "key=value config file with a [mode] section; flags win");

  Common c;
  double beta1 = 0.0, beta2 = 0.0, a1 = 0.0, a2 = 0.0;
  double identity_tol = 1e-6, cert_tol = 1e-6;
  std::string out, report_out = "report.json", atlas_path, verify_path;
  std::string rat_b1, rat_b2;
  double a1_lo = -8, a1_hi = 0, a2_lo = -8, a2_hi = 0;
  int steps = 16, workers = 1;
  PlanarArgs pa;

  auto* sr = app.add_subcommand("solve-radial", "shoot for target decay exponents");
  add_common(sr, c);
  sr->add_option("--beta1", beta1, "target decay 1")->required();
  sr->add_option("--beta2", beta2, "target decay 2")->required();
  sr->add_option("--out", out, "solution JSON path")->default_val("solution.json");
  sr->add_option("--report", report_out, "identity report path");
  sr->add_option("--atlas", atlas_path, "atlas CSV for the initial guess");
  sr->add_option("--identity-tol", identity_tol, "identity certification tolerance");

  auto* sh = app.add_subcommand("shoot", "single shot from given origin constants");
  add_common(sh, c);
  sh->add_option("--a1", a1, "origin constant 1")->required();
  sh->add_option("--a2", a2, "origin constant 2")->required();
  sh->add_option("--out", out, "solution JSON path");

  auto* sc = app.add_subcommand("scan", "outcome atlas over a rectangle of (a1,a2)");
  add_common(sc, c);
  sc->add_option("--a1-lo", a1_lo);
  sc->add_option("--a1-hi", a1_hi);
  sc->add_option("--a2-lo", a2_lo);
  sc->add_option("--a2-hi", a2_hi);
  sc->add_option("--steps", steps, "grid points per side");
  sc->add_option("--workers", workers, "parallel workers");
  sc->add_option("--out", out, "atlas CSV path")->default_val("atlas.csv");

  auto* sp = app.add_subcommand("solve-planar", "planar solve via homotopy from the "
                                                "collapsed radial seed");
  add_common(sp, c);
  add_planar(sp, pa);

  auto* co = app.add_subcommand("continue", "homotopy in eps emitting every step");
  add_common(co, c);
  add_planar(co, pa);

  auto* ve = app.add_subcommand("verify", "re-certify a stored solution");
  ve->add_option("file", verify_path, "solution JSON path")->required();
  ve->add_option("--cert-tol", cert_tol, "beta agreement tolerance");
  ve->add_option("--identity-tol", identity_tol, "identity tolerance");

  auto* ex = app.add_subcommand("exclusion", "exact rational admissibility report");
  ex->add_option("--n1", c.n1)->required();
  ex->add_option("--n2", c.n2)->required();
  ex->add_option("--beta1", rat_b1, "rational decay 1 (p, p/q or decimal)")->required();
  ex->add_option("--beta2", rat_b2, "rational decay 2")->required();
  ex->add_option("--out", out, "report JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (sr->parsed())
      return run_solve_radial(c, beta1, beta2, out.empty() ? "solution.json" : out,
                              report_out, atlas_path, identity_tol);
    if (sh->parsed()) return run_shoot(c, a1, a2, out);
    if (sc->parsed())
      return run_scan(c, a1_lo, a1_hi, a2_lo, a2_hi, steps, workers,
                      out.empty() ? "atlas.csv" : out);
    if (sp->parsed()) return run_planar(c, pa, false);
    if (co->parsed()) return run_planar(c, pa, true);
    if (ve->parsed()) return run_verify(verify_path, cert_tol, identity_tol);
    if (ex->parsed()) return run_exclusion(rat_b1, rat_b2, c.n1, c.n2, out);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  }
  return kExitConfig;
}
