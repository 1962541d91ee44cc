#ifndef VORTEX_RADIAL_HPP
#define VORTEX_RADIAL_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vortex {

/// Parameters of the collapsed-vortex radial system.
/// The coupling lambda is kept for the rescaling helper but all solvers
/// run with lambda = 1; see rescale_lambda().
struct RadialParams {
  int n1 = 0;
  int n2 = 0;
  double eps = 1.0;     // deformation parameter multiplying the vortex strength
  double lambda = 1.0;  // positive coupling, fixed to 1 internally

  bool valid() const {
    return n1 >= 0 && n2 >= 0 && eps >= 0.0 && eps <= 1.0 && lambda > 0.0;
  }
};

/// Additive constants in the origin expansion u_i = 2 eps N_i ln r + a_i + o(1).
struct ShootingParams {
  double a1 = 0.0;
  double a2 = 0.0;
};

/// State in log-radius t = ln r.  m_i = r u_i'(r) = du_i/dt.
struct LogState {
  double t = 0.0;
  double u1 = 0.0, u2 = 0.0;
  double m1 = 0.0, m2 = 0.0;

  bool finite() const;
};

struct LogDeriv {
  double du1, du2, dm1, dm2;
};

enum class OutcomeKind {
  NonTopological,
  Topological,
  MixedUndetermined,
  MaxRadiusReached,
  NumericalFailure,
};

struct Outcome {
  OutcomeKind kind = OutcomeKind::MixedUndetermined;
  double beta1 = 0.0;  // set for NonTopological
  double beta2 = 0.0;
  std::string reason;  // set for NumericalFailure

  static Outcome non_topological(double b1, double b2) {
    return {OutcomeKind::NonTopological, b1, b2, {}};
  }
  static Outcome topological() { return {OutcomeKind::Topological, 0, 0, {}}; }
  static Outcome mixed() { return {OutcomeKind::MixedUndetermined, 0, 0, {}}; }
  static Outcome max_radius() { return {OutcomeKind::MaxRadiusReached, 0, 0, {}}; }
  static Outcome failure(std::string why) {
    return {OutcomeKind::NumericalFailure, 0, 0, std::move(why)};
  }
};

std::string outcome_kind_name(OutcomeKind k);
std::optional<OutcomeKind> outcome_kind_from_name(const std::string& s);

/// Quadratures accumulated alongside the trajectory (weight 2*pi*e^{2t} dt = 2*pi*r dr).
struct RadialQuadratures {
  double flux1 = 0.0;   // int e^{u2}(1 - e^{u1}) dx
  double flux2 = 0.0;   // int e^{u1}(1 - e^{u2}) dx
  double joint = 0.0;   // int e^{u1+u2} dx
  double mass1 = 0.0;   // int e^{u1} dx
  double mass2 = 0.0;   // int e^{u2} dx
};

struct RadialSolution {
  RadialParams params;
  ShootingParams shoot;
  std::vector<LogState> samples;  // strictly increasing t
  Outcome outcome;
  std::pair<double, double> beta_slope{0.0, 0.0};
  std::pair<double, double> beta_flux{0.0, 0.0};
  RadialQuadratures quad;        // truncated at the last sample
  RadialQuadratures quad_tail;   // analytic tails beyond the last sample
  double beta_agreement = 0.0;   // max componentwise |beta_slope - beta_flux|
  bool certified = false;

  double t_end() const { return samples.empty() ? 0.0 : samples.back().t; }
  RadialQuadratures quad_total() const;
};

/// Optional hooks for integrate(): a manufactured forcing added to dm_i/dt,
/// and a fixed step size overriding adaptive control (for order studies).
struct IntegrateOptions {
  std::function<std::array<double, 2>(double)> forcing;  // t -> (f1, f2)
  std::optional<double> fixed_step;
  double topo_threshold = 1e-8;   // both u_i > -thr and |m_i| < thr
  double plateau_window = 2.0;    // slope plateau window in t
};

/// Right-hand side of the log-radius system:
///   du_i/dt = m_i
///   dm_1/dt = -e^{2t} lambda e^{u2}(1 - e^{u1}),  dm_2/dt symmetric.
LogDeriv log_rhs(const LogState& state, const RadialParams& params);

/// Series start at r0: u_i = 2 eps N_i ln r0 + a_i + c_i r0^{gamma_i} with
///   gamma_1 = 2 eps N_2 + 2,   c_1 = -lambda e^{a2} s1 / gamma_1^2,
/// where s1 = 1 when eps N_1 > 0 (e^{u1} -> 0 at the origin) and
/// s1 = 1 - e^{a1} when eps N_1 = 0 (u_1 -> a_1); symmetric for c_2.
LogState origin_series_start(const RadialParams& params, const ShootingParams& shoot,
                             double r0);

/// Series coefficients, exposed for the defect-convergence tests.
void origin_series_coeffs(const RadialParams& params, const ShootingParams& shoot,
                          double& c1, double& gamma1, double& c2, double& gamma2);

/// Default start radius: adaptively shrunk so the dropped term is < 0.01*tol.
double default_r0(const RadialParams& params, const ShootingParams& shoot, double tol);

/// Adaptive Dormand-Prince 5(4) integration in t with PI step control and
/// event detection; quadratures are carried as extra state components.
RadialSolution integrate(const LogState& start, const RadialParams& params,
                         double t_max, double tol,
                         const IntegrateOptions& opts = {});

/// Dual-route decay estimates: slopes (-m_i/2, tail corrected) and flux
/// integrals (flux_i/(4 pi) - eps N_i, tail corrected).  Fills beta_slope,
/// beta_flux, quad_tail, beta_agreement, certified on the solution.
void estimate_beta(RadialSolution& sol, double cert_tol = 1e-6);

/// Exact lambda rescaling r -> r sqrt(lambda): shifts samples t -> t - ln(lambda)/2
/// and scales quadratures by 1/lambda, mapping a lambda=1 trajectory to the
/// solution of the system with coupling lambda.
RadialSolution rescale_lambda(const RadialSolution& sol, double lambda);

}  // namespace vortex

#endif
