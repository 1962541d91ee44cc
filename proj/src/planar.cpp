#include "vortex/planar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace vortex {

namespace {
inline double sq(double v) { return v * v; }
}

// ---------------------------------------------------------------------------
// Background

Background::Background(const VortexConfig& config, const DecayPair& decay) {
  if (!config.valid()) throw std::invalid_argument("Background: invalid config");
  points1_ = config.points1;
  points2_ = config.points2;
  for (auto& p : points1_) {
    p[0] *= config.eps;
    p[1] *= config.eps;
  }
  for (auto& p : points2_) {
    p[0] *= config.eps;
    p[1] *= config.eps;
  }
  w1_ = config.n1 + decay.beta1;
  w2_ = config.n2 + decay.beta2;
}

double Background::h(const std::vector<Point>& pts, double w, double x, double y) {
  double s = 0.0;
  for (const auto& p : pts) {
    const double d2 = sq(x - p[0]) + sq(y - p[1]);
    s += std::log(d2);  // = 2 ln|x-p|; -inf at the vortex point is intended
  }
  return s - w * std::log1p(x * x + y * y);
}

double Background::g(double w, double x, double y) {
  return 4.0 * w / sq(1.0 + x * x + y * y);
}

Point Background::grad_h(const std::vector<Point>& pts, double w, double x, double y) {
  double gx = 0.0, gy = 0.0;
  for (const auto& p : pts) {
    const double dx = x - p[0], dy = y - p[1];
    const double d2 = dx * dx + dy * dy;
    gx += 2.0 * dx / d2;
    gy += 2.0 * dy / d2;
  }
  const double r2 = x * x + y * y;
  gx -= 2.0 * w * x / (1.0 + r2);
  gy -= 2.0 * w * y / (1.0 + r2);
  return {gx, gy};
}

// ---------------------------------------------------------------------------
// DiskGrid

DiskGrid::DiskGrid(double radius, int points_per_side)
    : radius_(radius), n_(points_per_side) {
  if (!(radius > 0.0) || n_ < 3) throw std::invalid_argument("DiskGrid: bad arguments");
  h_ = 2.0 * radius_ / (n_ - 1);
  index_.assign(std::size_t(n_) * n_, -1);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (sq(x(i)) + sq(y(j)) <= radius_ * radius_ + 1e-12) {
        index_[std::size_t(i) * n_ + j] = int(nodes_.size());
        nodes_.emplace_back(i, j);
      }
    }
}

// ---------------------------------------------------------------------------
// Residual and Newton

void assemble_residual(const Field& v1, const Field& v2, const Background& bg,
                       const DiskGrid& grid, Field& r1, Field& r2) {
  const int m = grid.num_nodes();
  const double h2 = sq(grid.spacing());
  r1.assign(m, 0.0);
  r2.assign(m, 0.0);
  for (int k = 0; k < m; ++k) {
    auto [i, j] = grid.cell(k);
    const double xk = grid.x(i), yk = grid.y(j);
    double lap1 = 0.0, lap2 = 0.0;
    for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      const int nb = grid.node(i + di, j + dj);
      if (nb >= 0) {  // dropped legs at the disk boundary: homogeneous Neumann
        lap1 += v1[nb] - v1[k];
        lap2 += v2[nb] - v2[k];
      }
    }
    const double e1 = std::exp(v1[k] + bg.h1(xk, yk));
    const double e2 = std::exp(v2[k] + bg.h2(xk, yk));
    r1[k] = lap1 / h2 + e2 * (1.0 - e1) - bg.g1(xk, yk);
    r2[k] = lap2 / h2 + e1 * (1.0 - e2) - bg.g2(xk, yk);
  }
}

double residual_max_norm(const Field& r1, const Field& r2) {
  double m = 0.0;
  for (double v : r1) m = std::max(m, std::abs(v));
  for (double v : r2) m = std::max(m, std::abs(v));
  return m;
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// Jacobian of the coupled residual, unknowns interleaved (2k, 2k+1).
SpMat assemble_jacobian(const Field& v1, const Field& v2, const Background& bg,
                        const DiskGrid& grid) {
  const int m = grid.num_nodes();
  const double h2 = sq(grid.spacing());
  std::vector<Triplet> trip;
  trip.reserve(std::size_t(m) * 12);
  for (int k = 0; k < m; ++k) {
    auto [i, j] = grid.cell(k);
    const double xk = grid.x(i), yk = grid.y(j);
    int legs = 0;
    for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      const int nb = grid.node(i + di, j + dj);
      if (nb >= 0) {
        ++legs;
        trip.emplace_back(2 * k, 2 * nb, 1.0 / h2);
        trip.emplace_back(2 * k + 1, 2 * nb + 1, 1.0 / h2);
      }
    }
    const double e1 = std::exp(v1[k] + bg.h1(xk, yk));
    const double e2 = std::exp(v2[k] + bg.h2(xk, yk));
    trip.emplace_back(2 * k, 2 * k, -legs / h2 - e1 * e2);
    trip.emplace_back(2 * k, 2 * k + 1, e2 * (1.0 - e1));
    trip.emplace_back(2 * k + 1, 2 * k + 1, -legs / h2 - e1 * e2);
    trip.emplace_back(2 * k + 1, 2 * k, e1 * (1.0 - e2));
  }
  SpMat J(2 * m, 2 * m);
  J.setFromTriplets(trip.begin(), trip.end());
  return J;
}

}  // namespace

double newton_step(PlanarSolution& state, const Background& bg, const DiskGrid& grid) {
  const int m = grid.num_nodes();
  Field r1, r2;
  assemble_residual(state.v1, state.v2, bg, grid, r1, r2);
  const double res0 = residual_max_norm(r1, r2);

  SpMat J = assemble_jacobian(state.v1, state.v2, bg, grid);
  Eigen::SparseLU<SpMat> lu;
  lu.compute(J);
  if (lu.info() != Eigen::Success) return 0.0;

  Eigen::VectorXd rhs(2 * m);
  for (int k = 0; k < m; ++k) {
    rhs[2 * k] = -r1[k];
    rhs[2 * k + 1] = -r2[k];
  }
  Eigen::VectorXd delta = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !delta.allFinite()) return 0.0;

  const double floor = 1.0 / 1024.0;
  Field t1(m), t2(m);
  for (double alpha = 1.0; alpha >= floor; alpha *= 0.5) {
    for (int k = 0; k < m; ++k) {
      t1[k] = state.v1[k] + alpha * delta[2 * k];
      t2[k] = state.v2[k] + alpha * delta[2 * k + 1];
    }
    assemble_residual(t1, t2, bg, grid, r1, r2);
    const double res = residual_max_norm(r1, r2);
    if (res < res0 || alpha == floor) {
      state.v1.swap(t1);
      state.v2.swap(t2);
      state.residual_norm = res;
      return alpha;
    }
  }
  return 0.0;
}

bool newton_solve(PlanarSolution& state, const Background& bg, const DiskGrid& grid,
                  const NewtonOptions& opts) {
  Field r1, r2;
  assemble_residual(state.v1, state.v2, bg, grid, r1, r2);
  state.residual_norm = residual_max_norm(r1, r2);
  state.newton_history.clear();
  state.newton_history.push_back(state.residual_norm);
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (state.residual_norm < opts.tol) break;
    const double alpha = newton_step(state, bg, grid);
    if (alpha == 0.0) {
      state.converged = false;
      return false;
    }
    state.newton_history.push_back(state.residual_norm);
  }
  state.converged = state.residual_norm < opts.tol;
  return state.converged;
}

// ---------------------------------------------------------------------------
// Radial seed

RadialInterpolant::RadialInterpolant(const RadialSolution& sol) : sol_(&sol) {
  origin_series_coeffs(sol.params, sol.shoot, c1_, g1_, c2_, g2_);
}

std::pair<double, double> RadialInterpolant::operator()(double r) const {
  const auto& s = sol_->samples;
  const double en1 = sol_->params.eps * sol_->params.n1;
  const double en2 = sol_->params.eps * sol_->params.n2;
  if (r <= 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    return {en1 > 0 ? -inf : sol_->shoot.a1, en2 > 0 ? -inf : sol_->shoot.a2};
  }
  const double t = std::log(r);
  if (t <= s.front().t) {
    return {2.0 * en1 * t + sol_->shoot.a1 + c1_ * std::pow(r, g1_),
            2.0 * en2 * t + sol_->shoot.a2 + c2_ * std::pow(r, g2_)};
  }
  if (t >= s.back().t) {
    const auto& b = s.back();
    return {b.u1 + b.m1 * (t - b.t), b.u2 + b.m2 * (t - b.t)};
  }
  auto it = std::lower_bound(s.begin(), s.end(), t,
                             [](const LogState& a, double tv) { return a.t < tv; });
  const auto& hi = *it;
  const auto& lo = *std::prev(it);
  const double dt = hi.t - lo.t;
  const double w = (t - lo.t) / dt;
  auto hermite = [&](double f0, double d0, double f1, double d1) {
    const double w2 = w * w, w3 = w2 * w;
    return f0 * (2 * w3 - 3 * w2 + 1) + d0 * dt * (w3 - 2 * w2 + w) +
           f1 * (-2 * w3 + 3 * w2) + d1 * dt * (w3 - w2);
  };
  return {hermite(lo.u1, lo.m1, hi.u1, hi.m1), hermite(lo.u2, lo.m2, hi.u2, hi.m2)};
}

std::pair<double, double> RadialInterpolant::remainder(double r,
                                                       const DecayPair& decay) const {
  const int n1 = sol_->params.n1, n2 = sol_->params.n2;
  const double lp = std::log1p(r * r);
  if (r > 0.0 && std::log(r) > sol_->samples.front().t) {
    auto [u1, u2] = (*this)(r);
    const double lr = std::log(r);
    return {u1 - 2.0 * n1 * lr + (n1 + decay.beta1) * lp,
            u2 - 2.0 * n2 * lr + (n2 + decay.beta2) * lp};
  }
  // Below the first sample (including r = 0) the series form is smooth.
  return {sol_->shoot.a1 + (n1 + decay.beta1) * lp + c1_ * std::pow(r, g1_),
          sol_->shoot.a2 + (n2 + decay.beta2) * lp + c2_ * std::pow(r, g2_)};
}

PlanarSolution seed_from_radial(const RadialSolution& radial, const VortexConfig& config,
                                const DecayPair& decay, const DiskGrid& grid) {
  if (radial.params.n1 != config.n1 || radial.params.n2 != config.n2 ||
      radial.params.eps != 1.0) {
    throw std::invalid_argument(
        "seed_from_radial: seed must be the collapsed solve (eps=1, same multiplicities)");
  }
  RadialInterpolant interp(radial);
  PlanarSolution s;
  s.config = config;
  s.decay = decay;
  s.grid_radius = grid.radius();
  s.grid_side = grid.side();
  const int m = grid.num_nodes();
  s.v1.resize(m);
  s.v2.resize(m);
  for (int k = 0; k < m; ++k) {
    auto [x, y] = grid.coord(k);
    auto [v1, v2] = interp.remainder(std::hypot(x, y), decay);
    s.v1[k] = v1;
    s.v2[k] = v2;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Continuation

ContinuationResult continue_in_eps(const RadialSolution& radial_seed,
                                   const VortexConfig& config_at_one,
                                   const DecayPair& decay, const DiskGrid& grid,
                                   const ContinuationOptions& opts) {
  ContinuationResult out;
  PlanarSolution cur = seed_from_radial(radial_seed, config_at_one, decay, grid);

  double eps = 0.0;
  double step = (opts.steps > 0) ? 1.0 / opts.steps : 0.1;
  bool first = true;
  while (true) {
    VortexConfig cfg = config_at_one;
    cfg.eps = eps;
    cur.config = cfg;
    Background bg(cfg, decay);
    PlanarSolution trial = cur;
    if (newton_solve(trial, bg, grid, opts.newton)) {
      cur = trial;
      out.path.push_back(cur);
      out.reached_eps = eps;
      if (opts.on_step) opts.on_step(cur);
      if (eps >= 1.0) {
        out.completed = true;
        out.message = "reached eps=1";
        return out;
      }
      step = std::min(step * 2.0, 1.0 / opts.steps);
      eps = eps + step;
      if (eps > 1.0 - 1e-12) eps = 1.0;
      first = false;
    } else {
      if (first) {
        out.message = "newton failed at eps=0";
        return out;
      }
      // retreat: halve the step from the last good eps
      const double last_good = out.reached_eps;
      step *= 0.5;
      if (step < opts.min_step) {
        out.message = "step floor reached at eps=" + std::to_string(last_good);
        return out;
      }
      eps = last_good + step;
      if (eps > 1.0 - 1e-12) eps = 1.0;
    }
  }
}

// ---------------------------------------------------------------------------
// Biquadratic interpolation

namespace {

// 3x3 tensor Lagrange basis on nodes {-1,0,1} in stencil coordinates.
inline void lagrange3(double s, double* L, double* dL) {
  L[0] = 0.5 * s * (s - 1.0);
  L[1] = 1.0 - s * s;
  L[2] = 0.5 * s * (s + 1.0);
  dL[0] = s - 0.5;
  dL[1] = -2.0 * s;
  dL[2] = s + 0.5;
}

void stencil_center(const DiskGrid& grid, double x, double y, int& ic, int& jc) {
  const double h = grid.spacing();
  ic = int(std::lround((x + grid.radius()) / h));
  jc = int(std::lround((y + grid.radius()) / h));
  ic = std::clamp(ic, 1, grid.side() - 2);
  jc = std::clamp(jc, 1, grid.side() - 2);
}

}  // namespace

double interp_value(const Field& f, const DiskGrid& grid, double x, double y) {
  int ic, jc;
  stencil_center(grid, x, y, ic, jc);
  const double h = grid.spacing();
  const double sx = (x - grid.x(ic)) / h, sy = (y - grid.y(jc)) / h;
  double Lx[3], dLx[3], Ly[3], dLy[3];
  lagrange3(sx, Lx, dLx);
  lagrange3(sy, Ly, dLy);
  double v = 0.0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      const int nb = grid.node(ic + a, jc + b);
      if (nb < 0) throw std::invalid_argument("interp: stencil leaves the disk");
      v += Lx[a + 1] * Ly[b + 1] * f[nb];
    }
  return v;
}

Point interp_gradient(const Field& f, const DiskGrid& grid, double x, double y) {
  int ic, jc;
  stencil_center(grid, x, y, ic, jc);
  const double h = grid.spacing();
  const double sx = (x - grid.x(ic)) / h, sy = (y - grid.y(jc)) / h;
  double Lx[3], dLx[3], Ly[3], dLy[3];
  lagrange3(sx, Lx, dLx);
  lagrange3(sy, Ly, dLy);
  double gx = 0.0, gy = 0.0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      const int nb = grid.node(ic + a, jc + b);
      if (nb < 0) throw std::invalid_argument("interp: stencil leaves the disk");
      gx += dLx[a + 1] * Ly[b + 1] * f[nb] / h;
      gy += Lx[a + 1] * dLy[b + 1] * f[nb] / h;
    }
  return {gx, gy};
}

}  // namespace vortex
