#ifndef VORTEX_SHOOTING_HPP
#define VORTEX_SHOOTING_HPP

#include <optional>
#include <vector>

#include "vortex/radial.hpp"

namespace vortex {

/// Target asymptotic decay exponents.
struct DecayPair {
  double beta1 = 0.0;
  double beta2 = 0.0;
};

/// Admissibility (beta1-1)(beta2-1) > (N1+1)(N2+1).
bool admissible(const DecayPair& d, int n1, int n2);

struct AtlasCell {
  double a1 = 0.0, a2 = 0.0;
  Outcome outcome;
};

struct ShootOptions {
  double t_max = 12.0;
  double cert_tol = 1e-6;
};

/// One shot: series start + integrate + beta estimation.
std::pair<Outcome, RadialSolution> shoot(const ShootingParams& sp,
                                         const RadialParams& params, double tol,
                                         const ShootOptions& opts = {});

struct SolveReport {
  ShootingParams shoot;
  RadialSolution solution;
  bool converged = false;
  bool admissible_target = true;
  int iterations = 0;
  double final_residual = 0.0;
  std::string message;
};

struct SolveOptions {
  ShootOptions shoot;
  int max_iterations = 60;
  double fd_step = 1e-5;
  const std::vector<AtlasCell>* atlas = nullptr;  // optional initial-guess cache
};

/// Damped quasi-Newton on F(a) = beta(a) - beta_target with a central
/// finite-difference Jacobian and Armijo backtracking on |F|^2.
SolveReport solve_for_target(const DecayPair& target, const RadialParams& params,
                             double tol, const SolveOptions& opts = {});

/// Deterministic row-major grid of outcomes over [a1_lo,a1_hi] x [a2_lo,a2_hi].
std::vector<AtlasCell> scan_region(double a1_lo, double a1_hi, double a2_lo,
                                   double a2_hi, int steps,
                                   const RadialParams& params, double tol = 1e-8,
                                   int workers = 1);

}  // namespace vortex

#endif
