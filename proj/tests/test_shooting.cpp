#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vortex/shooting.hpp"

using namespace vortex;

TEST_CASE("admissibility condition") {
  CHECK(admissible({3.0, 3.0}, 0, 0));
  CHECK(admissible({4.0, 6.0}, 1, 2));   // 15 > 6
  CHECK(!admissible({4.0, 4.0}, 2, 2));  // 9 = 9, not strict
  CHECK(!admissible({0.5, 9.0}, 0, 0));  // beta1 <= 1
}

TEST_CASE("scan grid arithmetic") {
  auto cells = scan_region(0.0, 1.0, 0.0, 1.0, 2, {0, 0, 1.0, 1.0}, 1e-6);
  REQUIRE(cells.size() == 4);
  CHECK(cells[0].a1 == 0.0);
  CHECK(cells[0].a2 == 0.0);
  CHECK(cells[1].a1 == 0.0);
  CHECK(cells[1].a2 == 1.0);
  CHECK(cells[2].a1 == 1.0);
  CHECK(cells[2].a2 == 0.0);
  CHECK(cells[3].a1 == 1.0);
  CHECK(cells[3].a2 == 1.0);
}

TEST_CASE("scan is deterministic across worker counts") {
  RadialParams p{0, 0, 1.0, 1.0};
  auto seq = scan_region(-5.0, -2.0, -5.0, -2.0, 4, p, 1e-6, 1);
  auto par = scan_region(-5.0, -2.0, -5.0, -2.0, 4, p, 1e-6, 4);
  REQUIRE(seq.size() == par.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].outcome.kind == par[i].outcome.kind);
    CHECK(seq[i].outcome.beta1 == par[i].outcome.beta1);
    CHECK(seq[i].outcome.beta2 == par[i].outcome.beta2);
  }
}

TEST_CASE("atlas swap symmetry for equal multiplicities") {
  RadialParams p{1, 1, 1.0, 1.0};
  auto cells = scan_region(-5.0, -3.0, -5.0, -3.0, 3, p, 1e-7);
  auto at = [&](int i, int j) -> const AtlasCell& { return cells[i * 3 + j]; };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(at(i, j).outcome.kind == at(j, i).outcome.kind);
      CHECK(at(i, j).outcome.beta1 == at(j, i).outcome.beta2);
      CHECK(at(i, j).outcome.beta2 == at(j, i).outcome.beta1);
    }
}

TEST_CASE("basin extremes") {
  RadialParams p{0, 0, 1.0, 1.0};
  auto [top, sol_top] = shoot({2.0, 2.0}, p, 1e-8);
  CHECK(top.kind == OutcomeKind::Topological);

  auto [low, sol_low] = shoot({-12.0, -12.0}, p, 1e-8);
  CHECK((low.kind == OutcomeKind::NonTopological ||
         low.kind == OutcomeKind::MaxRadiusReached));
  if (low.kind == OutcomeKind::NonTopological) CHECK(low.beta1 > 2.0);
}

TEST_CASE("symmetric shot gives equal decay exponents") {
  auto [outcome, sol] = shoot({-4.0, -4.0}, {1, 1, 1.0, 1.0}, 1e-8);
  REQUIRE(outcome.kind == OutcomeKind::NonTopological);
  CHECK(outcome.beta1 == outcome.beta2);
}

TEST_CASE("basin boundary located by bisection along the diagonal") {
  RadialParams p{0, 0, 1.0, 1.0};
  auto kind_at = [&](double a) {
    auto [o, s] = shoot({a, a}, p, 1e-8);
    return o.kind;
  };
  double lo = -3.0, hi = 2.0;
  REQUIRE(kind_at(lo) != OutcomeKind::Topological);
  REQUIRE(kind_at(hi) == OutcomeKind::Topological);
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kind_at(mid) == OutcomeKind::Topological ? hi : lo) = mid;
  }
  CHECK(hi - lo < 1e-8);
  CHECK(kind_at(lo) != OutcomeKind::Topological);
  CHECK(kind_at(hi) == OutcomeKind::Topological);
}

TEST_CASE("solve_for_target reaches the zero-vortex target") {
  auto rep = solve_for_target({3.0, 3.0}, {0, 0, 1.0, 1.0}, 1e-8);
  REQUIRE(rep.converged);
  CHECK(rep.admissible_target);
  CHECK(rep.solution.certified);
  CHECK(rep.solution.beta_slope.first == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(rep.solution.beta_slope.second == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(std::abs(rep.shoot.a1 - rep.shoot.a2) < 1e-6);
}

TEST_CASE("solve_for_target flags inadmissible targets but still reports") {
  auto rep = solve_for_target({2.9, 2.9}, {2, 2, 1.0, 1.0}, 1e-8);
  CHECK(!rep.admissible_target);  // (1.9)^2 = 3.61 < 9
}

TEST_CASE("atlas cache seeds the solve") {
  RadialParams p{0, 0, 1.0, 1.0};
  auto atlas = scan_region(-6.0, -2.0, -6.0, -2.0, 5, p, 1e-7);
  SolveOptions opts;
  opts.atlas = &atlas;
  auto rep = solve_for_target({3.0, 3.5}, p, 1e-8, opts);
  REQUIRE(rep.converged);
  CHECK(rep.solution.beta_slope.first == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(rep.solution.beta_slope.second == doctest::Approx(3.5).epsilon(1e-6));
}
