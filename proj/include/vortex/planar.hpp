#ifndef VORTEX_PLANAR_HPP
#define VORTEX_PLANAR_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "vortex/radial.hpp"
#include "vortex/shooting.hpp"

namespace vortex {

using Point = std::array<double, 2>;

/// Vortex configuration of the planar system; the Dirac sources sit at the
/// scaled points eps * p_ij.
struct VortexConfig {
  int n1 = 0;
  int n2 = 0;
  std::vector<Point> points1;
  std::vector<Point> points2;
  double eps = 1.0;

  bool valid() const {
    return n1 >= 0 && n2 >= 0 && int(points1.size()) == n1 &&
           int(points2.size()) == n2 && eps >= 0.0 && eps <= 1.0;
  }
};

/// Background h_i(x) = 2 sum_j ln|x - eps p_ij| - (N_i + beta_i) ln(1+|x|^2)
/// and the source g_i(x) = 4 (N_i + beta_i) / (1+|x|^2)^2.  Delta h_i = -g_i
/// away from the vortex points.
class Background {
 public:
  Background(const VortexConfig& config, const DecayPair& decay);

  double h1(double x, double y) const { return h(points1_, w1_, x, y); }
  double h2(double x, double y) const { return h(points2_, w2_, x, y); }
  double g1(double x, double y) const { return g(w1_, x, y); }
  double g2(double x, double y) const { return g(w2_, x, y); }
  Point grad_h1(double x, double y) const { return grad_h(points1_, w1_, x, y); }
  Point grad_h2(double x, double y) const { return grad_h(points2_, w2_, x, y); }

  const std::vector<Point>& scaled_points1() const { return points1_; }
  const std::vector<Point>& scaled_points2() const { return points2_; }

 private:
  static double h(const std::vector<Point>& pts, double w, double x, double y);
  static double g(double w, double x, double y);
  static Point grad_h(const std::vector<Point>& pts, double w, double x, double y);

  std::vector<Point> points1_, points2_;  // already scaled by eps
  double w1_, w2_;                        // N_i + beta_i
};

/// Uniform Cartesian grid restricted to the disk |x| <= radius; homogeneous
/// Neumann closure (dropped legs) at the disk boundary.
class DiskGrid {
 public:
  DiskGrid(double radius, int points_per_side);

  double radius() const { return radius_; }
  int side() const { return n_; }
  double spacing() const { return h_; }
  int num_nodes() const { return int(nodes_.size()); }
  double x(int i) const { return -radius_ + h_ * i; }
  double y(int j) const { return -radius_ + h_ * j; }
  int node(int i, int j) const {
    return (i < 0 || j < 0 || i >= n_ || j >= n_) ? -1 : index_[std::size_t(i) * n_ + j];
  }
  std::pair<int, int> cell(int k) const { return nodes_[k]; }
  Point coord(int k) const { return {x(nodes_[k].first), y(nodes_[k].second)}; }

 private:
  double radius_;
  int n_;
  double h_;
  std::vector<int> index_;                   // (i,j) -> node id or -1
  std::vector<std::pair<int, int>> nodes_;   // node id -> (i,j)
};

using Field = std::vector<double>;  // one value per grid node

struct PlanarSolution {
  VortexConfig config;
  DecayPair decay;
  double grid_radius = 0.0;
  int grid_side = 0;
  double grid_tol = 1e-2;  // claimed grid tolerance for certification
  Field v1, v2;
  double residual_norm = 0.0;
  std::vector<double> newton_history;
  bool converged = false;
};

/// Discrete residual R_i = Lap_h v_i + e^{u_j}(1 - e^{u_i}) - g_i with
/// u_i = v_i + h_i; e^{u} underflows to 0 exactly at vortex-coincident nodes.
void assemble_residual(const Field& v1, const Field& v2, const Background& bg,
                       const DiskGrid& grid, Field& r1, Field& r2);

double residual_max_norm(const Field& r1, const Field& r2);

struct NewtonOptions {
  double tol = 1e-10;
  int max_iterations = 30;
  double damping_floor = 1.0 / 1024.0;
};

/// One damped Newton update with the analytic block linearization; returns the
/// accepted damping factor (0 on linear-solve breakdown).
double newton_step(PlanarSolution& state, const Background& bg, const DiskGrid& grid);

/// Full Newton iteration; residual norms recorded into newton_history.
bool newton_solve(PlanarSolution& state, const Background& bg, const DiskGrid& grid,
                  const NewtonOptions& opts = {});

/// Radial trajectory interpolant u_i(ln r) (cubic Hermite inside the sample
/// range, origin series below, linear log extension above).
class RadialInterpolant {
 public:
  explicit RadialInterpolant(const RadialSolution& sol);
  /// u_i at radius r.
  std::pair<double, double> operator()(double r) const;
  /// remainder v_i = u_i - h_i0 at radius r (smooth through the origin).
  std::pair<double, double> remainder(double r, const DecayPair& decay) const;

 private:
  const RadialSolution* sol_;
  double c1_, g1_, c2_, g2_;
};

/// Initial planar iterate from a certified collapsed radial solution.
PlanarSolution seed_from_radial(const RadialSolution& radial, const VortexConfig& config,
                                const DecayPair& decay, const DiskGrid& grid);

struct ContinuationOptions {
  int steps = 10;              // uniform default schedule 0..1
  double min_step = 1.0 / 1024.0;
  NewtonOptions newton;
  std::function<void(const PlanarSolution&)> on_step;
};

struct ContinuationResult {
  std::vector<PlanarSolution> path;
  bool completed = false;
  double reached_eps = 0.0;
  std::string message;
};

/// Homotopy in eps from the collapsed radial solution to the full planar
/// configuration; adaptive step halving on Newton failure.
ContinuationResult continue_in_eps(const RadialSolution& radial_seed,
                                   const VortexConfig& config_at_one,
                                   const DecayPair& decay, const DiskGrid& grid,
                                   const ContinuationOptions& opts = {});

/// Biquadratic interpolation of a node field and its gradient.
double interp_value(const Field& f, const DiskGrid& grid, double x, double y);
Point interp_gradient(const Field& f, const DiskGrid& grid, double x, double y);

}  // namespace vortex

#endif
