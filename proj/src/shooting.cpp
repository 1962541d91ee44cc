#include "vortex/shooting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace vortex {

bool admissible(const DecayPair& d, int n1, int n2) {
  return d.beta1 > 1.0 && d.beta2 > 1.0 &&
         (d.beta1 - 1.0) * (d.beta2 - 1.0) > double(n1 + 1) * double(n2 + 1);
}

std::pair<Outcome, RadialSolution> shoot(const ShootingParams& sp,
                                         const RadialParams& params, double tol,
                                         const ShootOptions& opts) {
  const double r0 = default_r0(params, sp, tol);
  LogState start = origin_series_start(params, sp, r0);
  RadialSolution sol = integrate(start, params, opts.t_max, tol);
  sol.shoot = sp;
  if (sol.outcome.kind == OutcomeKind::NonTopological ||
      sol.outcome.kind == OutcomeKind::MaxRadiusReached) {
    estimate_beta(sol, opts.cert_tol);
  }
  return {sol.outcome, std::move(sol)};
}

namespace {

// beta(a) evaluated through the slope route; empty when the shot leaves the
// non-topological basin.
std::optional<std::pair<double, double>> beta_of(const ShootingParams& sp,
                                                 const RadialParams& params,
                                                 double tol,
                                                 const ShootOptions& so) {
  auto [outcome, sol] = shoot(sp, params, tol, so);
  if (outcome.kind != OutcomeKind::NonTopological) return std::nullopt;
  return sol.beta_slope;
}

}  // namespace

SolveReport solve_for_target(const DecayPair& target, const RadialParams& params,
                             double tol, const SolveOptions& opts) {
  SolveReport rep;
  rep.admissible_target = admissible(target, params.n1, params.n2);

  // Initial guess: nearest non-topological atlas cell by beta distance,
  // fallback a_i = -2(beta_i - 1).
  ShootingParams a{-2.0 * (target.beta1 - 1.0), -2.0 * (target.beta2 - 1.0)};
  if (opts.atlas) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : *opts.atlas) {
      if (c.outcome.kind != OutcomeKind::NonTopological) continue;
      const double d = std::hypot(c.outcome.beta1 - target.beta1,
                                  c.outcome.beta2 - target.beta2);
      if (d < best || (d == best && std::pair(c.a1, c.a2) < std::pair(a.a1, a.a2))) {
        best = d;
        a = {c.a1, c.a2};
      }
    }
  }

  auto residual = [&](const ShootingParams& sp)
      -> std::optional<std::pair<double, double>> {
    auto b = beta_of(sp, params, tol, opts.shoot);
    if (!b) return std::nullopt;
    return std::pair(b->first - target.beta1, b->second - target.beta2);
  };

  auto F = residual(a);
  // Recover an in-basin starting point.  The non-topological set is a thin
  // sheet (a ridge between the topological and blow-down basins for unequal
  // multiplicities), so deepening the guess is not enough; fall back to a
  // coarse scan and take the in-basin cell with beta nearest the target.
  for (int k = 0; k < 6 && !F; ++k) {
    a.a1 -= 1.0;
    a.a2 -= 1.0;
    F = residual(a);
  }
  if (!F) {
    const double scan_tol = std::min(tol, 1e-6);
    double best = std::numeric_limits<double>::infinity();
    ShootingParams pick;
    for (double s1 = -0.5; s1 >= -10.0; s1 -= 0.5)
      for (double s2 = -0.5; s2 >= -10.0; s2 -= 0.5) {
        auto b = beta_of({s1, s2}, params, scan_tol, opts.shoot);
        if (!b) continue;
        const double d =
            std::hypot(b->first - target.beta1, b->second - target.beta2);
        if (d < best) {
          best = d;
          pick = {s1, s2};
        }
      }
    if (best < std::numeric_limits<double>::infinity()) {
      a = pick;
      F = residual(a);
    }
  }
  if (!F) {
    rep.message = "no non-topological starting point found";
    return rep;
  }

  const double h = opts.fd_step;
  double norm2 = F->first * F->first + F->second * F->second;

  for (int it = 0; it < opts.max_iterations; ++it) {
    rep.iterations = it + 1;
    if (std::max(std::abs(F->first), std::abs(F->second)) < tol * 10.0 ||
        std::sqrt(norm2) < tol) break;

    // Central-difference Jacobian; fall back to one-sided at basin walls.
    double J[2][2];
    bool ok = true;
    for (int col = 0; col < 2 && ok; ++col) {
      const double hc = std::max(h, h * std::abs(col == 0 ? a.a1 : a.a2));
      ShootingParams ap = a, am = a;
      (col == 0 ? ap.a1 : ap.a2) += hc;
      (col == 0 ? am.a1 : am.a2) -= hc;
      auto Fp = residual(ap);
      auto Fm = residual(am);
      if (Fp && Fm) {
        J[0][col] = (Fp->first - Fm->first) / (2.0 * hc);
        J[1][col] = (Fp->second - Fm->second) / (2.0 * hc);
      } else if (Fp) {
        J[0][col] = (Fp->first - F->first) / hc;
        J[1][col] = (Fp->second - F->second) / hc;
      } else if (Fm) {
        J[0][col] = (F->first - Fm->first) / hc;
        J[1][col] = (F->second - Fm->second) / hc;
      } else {
        ok = false;
      }
    }
    if (!ok) {
      rep.message = "jacobian evaluation left the basin";
      break;
    }
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    if (std::abs(det) < 1e-14) {
      rep.message = "singular jacobian";
      break;
    }
    const double d1 = -(J[1][1] * F->first - J[0][1] * F->second) / det;
    const double d2 = -(-J[1][0] * F->first + J[0][0] * F->second) / det;

    // Armijo backtracking on |F|^2, factor 0.5, floor 2^-10; basin exits are
    // treated as failed line-search trials.
    double alpha = 1.0;
    bool stepped = false;
    while (alpha >= std::pow(2.0, -10)) {
      ShootingParams trial{a.a1 + alpha * d1, a.a2 + alpha * d2};
      auto Ft = residual(trial);
      if (Ft) {
        const double n2t = Ft->first * Ft->first + Ft->second * Ft->second;
        if (n2t < norm2 * (1.0 - 1e-4 * alpha) || n2t < tol * tol) {
          a = trial;
          F = Ft;
          norm2 = n2t;
          stepped = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!stepped) {
      rep.message = "line search stalled at damping floor";
      break;
    }
  }

  auto [outcome, sol] = shoot(a, params, tol, opts.shoot);
  rep.shoot = a;
  rep.solution = std::move(sol);
  rep.final_residual = std::sqrt(norm2);
  rep.converged = outcome.kind == OutcomeKind::NonTopological &&
                  std::max(std::abs(F->first), std::abs(F->second)) < tol * 10.0 &&
                  rep.solution.certified;
  if (rep.converged) rep.message = "converged";
  return rep;
}

std::vector<AtlasCell> scan_region(double a1_lo, double a1_hi, double a2_lo,
                                   double a2_hi, int steps,
                                   const RadialParams& params, double tol,
                                   int workers) {
  if (steps < 2) throw std::invalid_argument("scan_region: steps must be >= 2");
  std::vector<AtlasCell> cells(std::size_t(steps) * steps);
  auto cell_at = [&](int idx) {
    const int i = idx / steps;  // row: a1 index
    const int j = idx % steps;
    AtlasCell c;
    c.a1 = a1_lo + (a1_hi - a1_lo) * i / (steps - 1);
    c.a2 = a2_lo + (a2_hi - a2_lo) * j / (steps - 1);
    auto [outcome, sol] = shoot({c.a1, c.a2}, params, tol);
    (void)sol;
    c.outcome = outcome;
    return c;
  };
  const int n = steps * steps;
  workers = std::max(1, workers);
  if (workers == 1) {
    for (int idx = 0; idx < n; ++idx) cells[idx] = cell_at(idx);
  } else {
    std::vector<std::thread> pool;
    std::atomic_int next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int idx = next++; idx < n; idx = next++) cells[idx] = cell_at(idx);
      });
    for (auto& th : pool) th.join();
  }
  return cells;
}

}  // namespace vortex
