#include "vortex/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vortex {

namespace {

constexpr double kPi = 3.14159265358979323846;

// exp with the argument clamped so intermediate overshoots past u = 0 cannot
// overflow; valid states always have u_i < 0 so e^{u_i} <= 1.
inline double safe_exp(double x) { return std::exp(std::min(x, 60.0)); }

}  // namespace

bool LogState::finite() const {
  return std::isfinite(t) && std::isfinite(u1) && std::isfinite(u2) &&
         std::isfinite(m1) && std::isfinite(m2);
}

std::string outcome_kind_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::NonTopological: return "non-topological";
    case OutcomeKind::Topological: return "topological";
    case OutcomeKind::MixedUndetermined: return "mixed-undetermined";
    case OutcomeKind::MaxRadiusReached: return "max-radius";
    case OutcomeKind::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

std::optional<OutcomeKind> outcome_kind_from_name(const std::string& s) {
  for (auto k : {OutcomeKind::NonTopological, OutcomeKind::Topological,
                 OutcomeKind::MixedUndetermined, OutcomeKind::MaxRadiusReached,
                 OutcomeKind::NumericalFailure}) {
    if (outcome_kind_name(k) == s) return k;
  }
  return std::nullopt;
}

RadialQuadratures RadialSolution::quad_total() const {
  RadialQuadratures q = quad;
  q.flux1 += quad_tail.flux1;
  q.flux2 += quad_tail.flux2;
  q.joint += quad_tail.joint;
  q.mass1 += quad_tail.mass1;
  q.mass2 += quad_tail.mass2;
  return q;
}

LogDeriv log_rhs(const LogState& s, const RadialParams& p) {
  if (!s.finite()) throw std::invalid_argument("log_rhs: non-finite state");
  const double e1 = safe_exp(s.u1);
  const double e2 = safe_exp(s.u2);
  const double w = std::exp(2.0 * s.t) * p.lambda;
  return {s.m1, s.m2, -w * e2 * (1.0 - e1), -w * e1 * (1.0 - e2)};
}

void origin_series_coeffs(const RadialParams& p, const ShootingParams& sp,
                          double& c1, double& gamma1, double& c2, double& gamma2) {
  const double en1 = p.eps * p.n1;
  const double en2 = p.eps * p.n2;
  gamma1 = 2.0 * en2 + 2.0;
  gamma2 = 2.0 * en1 + 2.0;
  // Leading balance of Delta u_1 = -lambda e^{u2}(1-e^{u1}) near r = 0:
  // e^{u2} ~ e^{a2} r^{2 eps N2}; the factor (1-e^{u1}) tends to 1 when the
  // vortex term drives u_1 -> -inf, and to 1-e^{a1} when eps N1 = 0.
  const double s1 = (en1 > 0.0) ? 1.0 : 1.0 - std::exp(sp.a1);
  const double s2 = (en2 > 0.0) ? 1.0 : 1.0 - std::exp(sp.a2);
  c1 = -p.lambda * std::exp(sp.a2) * s1 / (gamma1 * gamma1);
  c2 = -p.lambda * std::exp(sp.a1) * s2 / (gamma2 * gamma2);
}

LogState origin_series_start(const RadialParams& p, const ShootingParams& sp,
                             double r0) {
  if (!(r0 > 0.0)) throw std::invalid_argument("origin_series_start: r0 must be positive");
  if (!p.valid()) throw std::invalid_argument("origin_series_start: invalid params");
  double c1, g1, c2, g2;
  origin_series_coeffs(p, sp, c1, g1, c2, g2);
  const double en1 = p.eps * p.n1;
  const double en2 = p.eps * p.n2;
  const double lr = std::log(r0);
  LogState s;
  s.t = lr;
  s.u1 = 2.0 * en1 * lr + sp.a1 + c1 * std::pow(r0, g1);
  s.u2 = 2.0 * en2 * lr + sp.a2 + c2 * std::pow(r0, g2);
  s.m1 = 2.0 * en1 + g1 * c1 * std::pow(r0, g1);
  s.m2 = 2.0 * en2 + g2 * c2 * std::pow(r0, g2);
  return s;
}

double default_r0(const RadialParams& p, const ShootingParams& sp, double tol) {
  // The dropped next-order term is O(r^{gamma + 2}); shrink r0 until it is
  // below 0.01 * tol.
  double c1, g1, c2, g2;
  origin_series_coeffs(p, sp, c1, g1, c2, g2);
  const double g = std::min(g1, g2) + 2.0;
  const double scale = std::max({std::abs(c1), std::abs(c2), 1.0});
  double r0 = 1e-6;
  while (scale * std::pow(r0, g) > 0.01 * tol && r0 > 1e-14) r0 *= 0.5;
  return r0;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5.0;
constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0,
                 A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0;
constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0,
                 A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0;
constexpr double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0,
                 B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0;
constexpr double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0,
                 E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;
constexpr double C2 = 1.0 / 5.0, C3 = 3.0 / 10.0, C4 = 4.0 / 5.0, C5 = 8.0 / 9.0;

constexpr int kDim = 9;  // u1 u2 m1 m2 flux1 flux2 joint mass1 mass2
using Vec = std::array<double, kDim>;

struct RhsEval {
  const RadialParams* params;
  const IntegrateOptions* opts;

  Vec operator()(double t, const Vec& y) const {
    const double e1 = safe_exp(y[0]);
    const double e2 = safe_exp(y[1]);
    const double w = std::exp(2.0 * t) * params->lambda;
    double f1 = 0.0, f2 = 0.0;
    if (opts->forcing) {
      auto f = opts->forcing(t);
      f1 = f[0];
      f2 = f[1];
    }
    Vec d;
    d[0] = y[2];
    d[1] = y[3];
    d[2] = -w * e2 * (1.0 - e1) + f1;
    d[3] = -w * e1 * (1.0 - e2) + f2;
    const double q = 2.0 * kPi * std::exp(2.0 * t);
    d[4] = q * e2 * (1.0 - e1);
    d[5] = q * e1 * (1.0 - e2);
    d[6] = q * e1 * e2;
    d[7] = q * e1;
    d[8] = q * e2;
    return d;
  }
};

bool vec_finite(const Vec& y) {
  for (double v : y)
    if (!std::isfinite(v)) return false;
  return true;
}

// Interpolate m_i at time t from the sample list (linear; used only for the
// plateau test over a window of width opts.plateau_window).
bool slope_at(const std::vector<LogState>& samples, double t, double& m1, double& m2) {
  if (samples.empty() || t < samples.front().t || t > samples.back().t) return false;
  auto it = std::lower_bound(samples.begin(), samples.end(), t,
                             [](const LogState& s, double tv) { return s.t < tv; });
  if (it == samples.begin()) {
    m1 = it->m1;
    m2 = it->m2;
    return true;
  }
  auto lo = std::prev(it);
  const double w = (t - lo->t) / (it->t - lo->t);
  m1 = lo->m1 + w * (it->m1 - lo->m1);
  m2 = lo->m2 + w * (it->m2 - lo->m2);
  return true;
}

}  // namespace

RadialSolution integrate(const LogState& start, const RadialParams& params,
                         double t_max, double tol, const IntegrateOptions& opts) {
  RadialSolution sol;
  sol.params = params;

  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be positive");
  if (!start.finite()) {
    sol.outcome = Outcome::failure("non-finite start state");
    return sol;
  }

  RhsEval rhs{&params, &opts};

  double t = start.t;
  Vec y{start.u1, start.u2, start.m1, start.m2, 0, 0, 0, 0, 0};
  // Quadrature contribution of (0, r0]: e^{u_i} ~ e^{u_i(r0)} (r/r0)^{2 eps N_i},
  // so the omitted core integrates in closed form to an O(r0^2) piece.
  {
    const double r0 = std::exp(start.t);
    const double en1 = params.eps * params.n1;
    const double en2 = params.eps * params.n2;
    const double e1 = safe_exp(start.u1);
    const double e2 = safe_exp(start.u2);
    const double core1 = 2.0 * kPi * e1 * r0 * r0 / (2.0 + 2.0 * en1);
    const double core2 = 2.0 * kPi * e2 * r0 * r0 / (2.0 + 2.0 * en2);
    y[4] += core2 * (1.0 - e1);  // flux1 integrand ~ e^{u2}(1-e^{u1})
    y[5] += core1 * (1.0 - e2);
    y[7] += core1;
    y[8] += core2;
  }

  sol.samples.push_back(start);

  const double hmin = 1e-14;
  double h = opts.fixed_step ? *opts.fixed_step : 1e-3;
  double err_prev = 1.0;
  const double safety = 0.9;
  Vec k1 = rhs(t, y);
  bool have_k1 = true;

  auto record = [&](double tt, const Vec& yy) {
    LogState s;
    s.t = tt;
    s.u1 = yy[0];
    s.u2 = yy[1];
    s.m1 = yy[2];
    s.m2 = yy[3];
    sol.samples.push_back(s);
  };

  while (t < t_max) {
    if (t + h > t_max) h = t_max - t;

    if (!have_k1) {
      k1 = rhs(t, y);
      have_k1 = true;
    }
    Vec y2, y3, y4, y5, y6, y7;
    for (int i = 0; i < kDim; ++i) y2[i] = y[i] + h * A21 * k1[i];
    Vec k2 = rhs(t + C2 * h, y2);
    for (int i = 0; i < kDim; ++i) y3[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
    Vec k3 = rhs(t + C3 * h, y3);
    for (int i = 0; i < kDim; ++i)
      y4[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    Vec k4 = rhs(t + C4 * h, y4);
    for (int i = 0; i < kDim; ++i)
      y5[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    Vec k5 = rhs(t + C5 * h, y5);
    for (int i = 0; i < kDim; ++i)
      y6[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] +
                          A65 * k5[i]);
    Vec k6 = rhs(t + h, y6);
    for (int i = 0; i < kDim; ++i)
      y7[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] +
                          B6 * k6[i]);
    Vec k7 = rhs(t + h, y7);

    if (!vec_finite(y7)) {
      sol.quad = {y[4], y[5], y[6], y[7], y[8]};
      sol.outcome = Outcome::failure("non-finite state during integration");
      return sol;
    }

    double err = 0.0;
    for (int i = 0; i < kDim; ++i) {
      const double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                            E6 * k6[i] + E7 * k7[i]);
      const double sc = tol * 0.5 + tol * 0.5 * std::max(std::abs(y[i]), std::abs(y7[i]));
      err = std::max(err, std::abs(e) / sc);
    }

    const bool accept = opts.fixed_step || err <= 1.0;
    if (accept) {
      t += h;
      y = y7;
      k1 = k7;  // FSAL
      record(t, y);

      // Event: topological basin (fields at 0 with vanishing slopes), or the
      // trajectory crossed above 0 (overshoot on the topological side).
      const double thr = opts.topo_threshold;
      if ((y[0] > -thr && y[1] > -thr && std::abs(y[2]) < thr && std::abs(y[3]) < thr) ||
          y[0] > 0.5 || y[1] > 0.5) {
        sol.quad = {y[4], y[5], y[6], y[7], y[8]};
        sol.outcome = Outcome::topological();
        return sol;
      }
    }
    if (!opts.fixed_step) {
      // PI step controller.
      const double order = 5.0;
      double fac = safety * std::pow(std::max(err, 1e-16), -0.7 / order) *
                   std::pow(std::max(err_prev, 1e-16), 0.4 / order);
      fac = std::clamp(fac, 0.2, 5.0);
      h *= fac;
      if (accept) err_prev = std::max(err, 1e-16);
      if (h < hmin) {
        sol.quad = {y[4], y[5], y[6], y[7], y[8]};
        sol.outcome = Outcome::failure("step-size underflow");
        return sol;
      }
    }
  }

  sol.quad = {y[4], y[5], y[6], y[7], y[8]};

  // Classification at t_max: slope plateau over the trailing window with both
  // decays super-logarithmic (m_i < -2) certifies the non-topological basin.
  double m1w, m2w;
  const double last_t = sol.samples.back().t;
  const double ptol = std::max(100.0 * tol, 1e-10);
  if (slope_at(sol.samples, last_t - opts.plateau_window, m1w, m2w)) {
    const double m1 = sol.samples.back().m1, m2 = sol.samples.back().m2;
    if (std::abs(m1 - m1w) < ptol && std::abs(m2 - m2w) < ptol && m1 < -2.0 &&
        m2 < -2.0) {
      sol.outcome = Outcome::non_topological(-m1 / 2.0, -m2 / 2.0);
      return sol;
    }
  }
  sol.outcome = Outcome::max_radius();
  return sol;
}

void estimate_beta(RadialSolution& sol, double cert_tol) {
  if (sol.samples.empty()) return;
  const auto& last = sol.samples.back();
  const bool converging =
      sol.outcome.kind == OutcomeKind::NonTopological ||
      (sol.outcome.kind == OutcomeKind::MaxRadiusReached && last.m1 < -2.0 &&
       last.m2 < -2.0);
  if (!converging) {
    sol.outcome = (sol.outcome.kind == OutcomeKind::NumericalFailure)
                      ? sol.outcome
                      : Outcome::mixed();
    sol.certified = false;
    return;
  }

  const double en1 = sol.params.eps * sol.params.n1;
  const double en2 = sol.params.eps * sol.params.n2;
  const double fourpi = 4.0 * kPi;

  // Raw slope estimates seed the analytic tails; iterate once so the tails
  // use self-consistent decay rates.
  double b1 = -last.m1 / 2.0, b2 = -last.m2 / 2.0;
  RadialQuadratures tail{};
  for (int pass = 0; pass < 2; ++pass) {
    const double w = 2.0 * kPi * std::exp(2.0 * last.t);
    const double e1 = std::exp(last.u1), e2 = std::exp(last.u2);
    // Integrand decay rates in t: e^{u_i} ~ r^{-2 beta_i}.
    tail.flux1 = w * e2 * (1.0 - e1) / (2.0 * b2 - 2.0);
    tail.flux2 = w * e1 * (1.0 - e2) / (2.0 * b1 - 2.0);
    tail.joint = w * e1 * e2 / (2.0 * b1 + 2.0 * b2 - 2.0);
    tail.mass1 = w * e1 / (2.0 * b1 - 2.0);
    tail.mass2 = w * e2 / (2.0 * b2 - 2.0);
    b1 = -(last.m1 - tail.flux1 / (2.0 * kPi)) / 2.0;
    b2 = -(last.m2 - tail.flux2 / (2.0 * kPi)) / 2.0;
  }
  sol.quad_tail = tail;
  sol.beta_slope = {b1, b2};
  sol.beta_flux = {(sol.quad.flux1 + tail.flux1) / fourpi - en1,
                   (sol.quad.flux2 + tail.flux2) / fourpi - en2};
  sol.beta_agreement = std::max(std::abs(sol.beta_slope.first - sol.beta_flux.first),
                                std::abs(sol.beta_slope.second - sol.beta_flux.second));
  sol.certified = sol.beta_agreement < cert_tol && sol.beta_slope.first > 1.0 &&
                  sol.beta_slope.second > 1.0;
  if (sol.certified || sol.outcome.kind == OutcomeKind::NonTopological) {
    sol.outcome = Outcome::non_topological(sol.beta_slope.first, sol.beta_slope.second);
  }
}

RadialSolution rescale_lambda(const RadialSolution& sol, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("rescale_lambda: lambda must be positive");
  RadialSolution out = sol;
  out.params.lambda = lambda;
  const double shift = 0.5 * std::log(lambda);
  for (auto& s : out.samples) s.t -= shift;
  auto scale = [&](RadialQuadratures& q) {
    q.flux1 /= lambda;
    q.flux2 /= lambda;
    q.joint /= lambda;
    q.mass1 /= lambda;
    q.mass2 /= lambda;
  };
  scale(out.quad);
  scale(out.quad_tail);
  return out;
}

}  // namespace vortex
