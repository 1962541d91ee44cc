#ifndef VORTEX_DIAGNOSTICS_HPP
#define VORTEX_DIAGNOSTICS_HPP

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <vector>

#include "vortex/planar.hpp"
#include "vortex/radial.hpp"
#include "vortex/shooting.hpp"

namespace vortex {

using Rat = boost::rational<long long>;

/// Parse "p", "p/q" or a plain decimal into an exact rational.
std::optional<Rat> parse_rational(const std::string& s);
double to_double(const Rat& r);

/// Admissibility (the strict product condition) and position relative to the
/// exclusion set { (k-1)/k : k = 2..max(N1,N2) } of the concentration value
/// N1/(b1+N1) + N2/(b2+N2).
struct AdmissibilityReport {
  bool satisfies_product_condition = false;  // (b1-1)(b2-1) > (N1+1)(N2+1)
  bool boundary_case = false;                // equality in the product condition
  Rat exclusion_value{0};
  bool on_curve = false;
  std::optional<int> nearest_k;
  std::optional<Rat> distance_to_curve;
  std::optional<Rat> predicted_S;  // (b1+N1)(b2+N2)/(b1 b2 - N1 N2), if denom > 0
};

/// Exact rational arithmetic; no floating-point misclassification at curve
/// boundaries.  Requires beta_i > 1.
AdmissibilityReport exclusion_check(const Rat& beta1, const Rat& beta2, int n1, int n2);

/// Floating path for solver-produced values; on-curve within tol.
AdmissibilityReport exclusion_check(double beta1, double beta2, int n1, int n2,
                                    double tol = 1e-9);

/// Blow-up mass relations at concentration masses M, N over |S| points:
///   origin:   M N (|S|-1) = 2 N N1 + 2 M N2
///   infinity: M N (|S|+1) = 2 b1 N + 2 b2 M
///   total:    |S| M = 2 (b1+N1),  |S| N = 2 (b2+N2)
struct MassProfile {
  Rat mass_m{0}, mass_n{0};
  int s_count = 0;
  Rat residual_origin{0}, residual_infinity{0};
  Rat residual_total_m{0}, residual_total_n{0};
  bool consistent = false;
  bool degenerate = false;  // M N - 2M - 2N = 0 (M+N >= 8 boundary)
};

MassProfile mass_relations_check(const Rat& mass_m, const Rat& mass_n, int s_count,
                                 int n1, int n2, const Rat& beta1, const Rat& beta2);

struct MassProfileD {
  double mass_m = 0, mass_n = 0;
  int s_count = 0;
  double residual_origin = 0, residual_infinity = 0;
  double residual_total_m = 0, residual_total_n = 0;
  bool consistent = false;
  bool degenerate = false;
};

MassProfileD mass_relations_check(double mass_m, double mass_n, int s_count, int n1,
                                  int n2, double beta1, double beta2,
                                  double tol = 1e-9);

/// Rescaling w_i(x) = u_i(x / r_n) - 2 ln r_n used to inspect concentration
/// candidates.  Radial route: w_i sampled at the requested radii; refuses when
/// rho / r_n leaves the resolved radial range.
struct RescaledProfile {
  double r_n = 1.0;
  std::vector<double> radii;
  std::vector<double> w1, w2;
};

RescaledProfile rescale_profile(const RadialSolution& sol, double r_n,
                                const std::vector<double>& radii);

/// Planar route: w_i at the given points, u interpolated as v + h.
struct RescaledPlanarProfile {
  double r_n = 1.0;
  std::vector<Point> points;
  std::vector<double> w1, w2;
};

RescaledPlanarProfile rescale_profile(const PlanarSolution& sol, double r_n,
                                      const std::vector<Point>& points);

}  // namespace vortex

#endif
