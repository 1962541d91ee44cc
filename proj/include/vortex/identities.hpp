#ifndef VORTEX_IDENTITIES_HPP
#define VORTEX_IDENTITIES_HPP

#include "vortex/planar.hpp"
#include "vortex/radial.hpp"
#include "vortex/shooting.hpp"

namespace vortex {

/// Computed flux/Pohozaev integrals against their closed forms.
/// flux1 = int e^{u2}(1-e^{u1}),   expected 4 pi (beta1 + N1)
/// flux2 = int e^{u1}(1-e^{u2}),   expected 4 pi (beta2 + N2)
/// mass1 = int e^{u1},   expected 4 pi (b1 b2 - N1 N2 - b1 - N1) + grad_corr
/// mass2 = int e^{u2},   expected 4 pi (b1 b2 - N1 N2 - b2 - N2) + grad_corr
/// joint = int e^{u1+u2}, expected 4 pi ((b1-1)(b2-1) - (N1+1)(N2+1)) + grad_corr
/// In the collapsed radial case N_i is replaced by eps N_i and grad_corr = 0.
struct IdentityReport {
  double beta1 = 0.0, beta2 = 0.0;
  double eff_n1 = 0.0, eff_n2 = 0.0;  // eps N_i (radial) or N_i (planar)
  double flux1 = 0.0, flux2 = 0.0;
  double mass1 = 0.0, mass2 = 0.0;
  double joint = 0.0;
  double grad_corr = 0.0;
  double exp_flux1 = 0.0, exp_flux2 = 0.0;
  double exp_mass1 = 0.0, exp_mass2 = 0.0;
  double exp_joint = 0.0;
  double rel_err_flux1 = 0.0, rel_err_flux2 = 0.0;
  double rel_err_mass1 = 0.0, rel_err_mass2 = 0.0;
  double rel_err_joint = 0.0;
  double max_rel_err() const;
};

/// Flux identities only (radial route).  Throws std::invalid_argument on an
/// uncertified solution.
IdentityReport flux_report(const RadialSolution& sol);

/// All five identities for a certified collapsed radial solution.
IdentityReport pohozaev_report(const RadialSolution& sol);

/// All five identities for a planar solution, including the gradient
/// correction evaluated by biquadratic interpolation at the vortex points.
/// Throws if a vortex point lies within 2 cells of the disk boundary.
IdentityReport pohozaev_planar_report(const PlanarSolution& sol);

/// Post-hoc trapezoidal quadratures over the recorded samples; independent of
/// the in-flight accumulators (consistency oracle).
RadialQuadratures trapezoid_quadratures(const RadialSolution& sol);

}  // namespace vortex

#endif
