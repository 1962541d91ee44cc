#include "vortex/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vortex {

std::optional<Rat> parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      long long num = std::stoll(s.substr(0, slash));
      long long den = std::stoll(s.substr(slash + 1));
      if (den == 0) return std::nullopt;
      return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      const std::string frac = s.substr(dot + 1);
      if (frac.size() > 15) return std::nullopt;
      long long den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      long long whole = std::stoll(s.substr(0, dot).empty() ? "0" : s.substr(0, dot));
      long long num = std::stoll(frac.empty() ? "0" : frac);
      const bool neg = !s.empty() && s[0] == '-';
      Rat r = Rat(std::abs(whole)) + Rat(num, den);
      return neg ? -r : r;
    }
    return Rat(std::stoll(s));
  } catch (...) {
    return std::nullopt;
  }
}

double to_double(const Rat& r) {
  return double(r.numerator()) / double(r.denominator());
}

AdmissibilityReport exclusion_check(const Rat& beta1, const Rat& beta2, int n1,
                                    int n2) {
  if (beta1 <= Rat(1) || beta2 <= Rat(1))
    throw std::invalid_argument("exclusion_check: beta_i must exceed 1");
  AdmissibilityReport rep;
  const Rat lhs = (beta1 - 1) * (beta2 - 1);
  const Rat rhs = Rat((n1 + 1) * (n2 + 1));
  rep.satisfies_product_condition = lhs > rhs;
  rep.boundary_case = lhs == rhs;
  rep.exclusion_value = Rat(n1) / (beta1 + n1) + Rat(n2) / (beta2 + n2);

  const Rat denom = beta1 * beta2 - Rat(n1 * n2);
  if (denom > Rat(0))
    rep.predicted_S = (beta1 + n1) * (beta2 + n2) / denom;

  const int kmax = std::max(n1, n2);
  for (int k = 2; k <= kmax; ++k) {
    const Rat d = boost::abs(rep.exclusion_value - Rat(k - 1, k));
    if (!rep.distance_to_curve || d < *rep.distance_to_curve) {
      rep.distance_to_curve = d;
      rep.nearest_k = k;
    }
  }
  rep.on_curve = rep.distance_to_curve && *rep.distance_to_curve == Rat(0);
  return rep;
}

AdmissibilityReport exclusion_check(double beta1, double beta2, int n1, int n2,
                                    double tol) {
  // floating path: route through a rational approximation for the report
  // structure, but decide on-curve with the floating tolerance
  if (!(beta1 > 1.0) || !(beta2 > 1.0))
    throw std::invalid_argument("exclusion_check: beta_i must exceed 1");
  AdmissibilityReport rep;
  const double lhs = (beta1 - 1.0) * (beta2 - 1.0);
  const double rhs = double((n1 + 1) * (n2 + 1));
  rep.satisfies_product_condition = lhs > rhs + tol;
  rep.boundary_case = std::abs(lhs - rhs) <= tol;
  const double value = n1 / (beta1 + n1) + n2 / (beta2 + n2);
  rep.exclusion_value = Rat(llround(value * 1e12), 1000000000000LL);
  const double denom = beta1 * beta2 - double(n1 * n2);
  if (denom > 0.0) {
    const double s = (beta1 + n1) * (beta2 + n2) / denom;
    rep.predicted_S = Rat(llround(s * 1e12), 1000000000000LL);
  }
  double best = -1.0;
  for (int k = 2; k <= std::max(n1, n2); ++k) {
    const double d = std::abs(value - double(k - 1) / k);
    if (best < 0.0 || d < best) {
      best = d;
      rep.nearest_k = k;
    }
  }
  if (best >= 0.0) rep.distance_to_curve = Rat(llround(best * 1e12), 1000000000000LL);
  rep.on_curve = best >= 0.0 && best <= tol;
  return rep;
}

MassProfile mass_relations_check(const Rat& m, const Rat& n, int s, int n1, int n2,
                                 const Rat& beta1, const Rat& beta2) {
  MassProfile p;
  p.mass_m = m;
  p.mass_n = n;
  p.s_count = s;
  p.residual_origin = m * n * Rat(s - 1) - Rat(2 * n1) * n - Rat(2 * n2) * m;
  p.residual_infinity = m * n * Rat(s + 1) - 2 * beta1 * n - 2 * beta2 * m;
  p.residual_total_m = Rat(s) * m - 2 * (beta1 + n1);
  p.residual_total_n = Rat(s) * n - 2 * (beta2 + n2);
  p.consistent = p.residual_origin == Rat(0) && p.residual_infinity == Rat(0) &&
                 p.residual_total_m == Rat(0) && p.residual_total_n == Rat(0);
  p.degenerate = m * n - 2 * m - 2 * n == Rat(0);
  return p;
}

MassProfileD mass_relations_check(double m, double n, int s, int n1, int n2,
                                  double beta1, double beta2, double tol) {
  MassProfileD p;
  p.mass_m = m;
  p.mass_n = n;
  p.s_count = s;
  p.residual_origin = m * n * (s - 1) - 2.0 * n1 * n - 2.0 * n2 * m;
  p.residual_infinity = m * n * (s + 1) - 2.0 * beta1 * n - 2.0 * beta2 * m;
  p.residual_total_m = s * m - 2.0 * (beta1 + n1);
  p.residual_total_n = s * n - 2.0 * (beta2 + n2);
  p.consistent = std::abs(p.residual_origin) < tol &&
                 std::abs(p.residual_infinity) < tol &&
                 std::abs(p.residual_total_m) < tol &&
                 std::abs(p.residual_total_n) < tol;
  p.degenerate = std::abs(m * n - 2.0 * m - 2.0 * n) < tol;
  return p;
}

RescaledProfile rescale_profile(const RadialSolution& sol, double r_n,
                                const std::vector<double>& radii) {
  if (!(r_n > 0.0)) throw std::invalid_argument("rescale_profile: r_n must be positive");
  if (sol.samples.empty()) throw std::invalid_argument("rescale_profile: empty solution");
  const double r_lo = std::exp(sol.samples.front().t);
  const double r_hi = std::exp(sol.samples.back().t);
  RescaledProfile out;
  out.r_n = r_n;
  out.radii = radii;
  RadialInterpolant interp(sol);
  const double shift = 2.0 * std::log(r_n);
  for (double rho : radii) {
    const double r = rho / r_n;
    if (r < r_lo || r > r_hi)
      throw std::invalid_argument("rescale_profile: radius outside resolved range");
    auto [u1, u2] = interp(r);
    out.w1.push_back(u1 - shift);
    out.w2.push_back(u2 - shift);
  }
  return out;
}

RescaledPlanarProfile rescale_profile(const PlanarSolution& sol, double r_n,
                                      const std::vector<Point>& points) {
  if (!(r_n > 0.0)) throw std::invalid_argument("rescale_profile: r_n must be positive");
  DiskGrid grid(sol.grid_radius, sol.grid_side);
  Background bg(sol.config, sol.decay);
  RescaledPlanarProfile out;
  out.r_n = r_n;
  out.points = points;
  const double shift = 2.0 * std::log(r_n);
  const double margin = grid.spacing();
  for (const auto& p : points) {
    const double x = p[0] / r_n, y = p[1] / r_n;
    if (std::hypot(x, y) > grid.radius() - margin)
      throw std::invalid_argument("rescale_profile: point outside resolved range");
    out.w1.push_back(interp_value(sol.v1, grid, x, y) + bg.h1(x, y) - shift);
    out.w2.push_back(interp_value(sol.v2, grid, x, y) + bg.h2(x, y) - shift);
  }
  return out;
}

}  // namespace vortex
