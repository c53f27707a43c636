#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tmink/torsion_fem.hpp"

using namespace tmink;

namespace {

constexpr double kSquareConstant = 0.14057701497149108;  // tau of the unit square

TorsionField solve(const Polygon& p, double h) {
  SolverOptions o;
  o.target_h = h;
  return solve_torsion(p, o);
}

}  // namespace

TEST(Torsion, UnitSquare) {
  const TorsionField f = solve(axis_box(0, 0, 1, 1), 0.02);
  EXPECT_NEAR(f.tau_energy, kSquareConstant, 0.005 * kSquareConstant);
  EXPECT_LT(f.relative_gap(), 1e-6);
  EXPECT_LT(f.linear_residual, 1e-8);
}

TEST(Torsion, DiskLimit) {
  const TorsionField f = solve(regular_polygon(128, 1.0), 0.03);
  EXPECT_NEAR(f.tau_energy, std::numbers::pi / 2, 0.01 * std::numbers::pi / 2);
  double umax = 0.0;
  for (double v : f.u) umax = std::max(umax, v);
  EXPECT_NEAR(umax, 0.5, 0.01);
}

TEST(Torsion, SquareScalesWithFourthPower) {
  const TorsionField a = solve(axis_box(-1, -1, 1, 1), 0.04);
  EXPECT_NEAR(a.tau_energy, 16 * kSquareConstant, 0.005 * 16 * kSquareConstant);
  const TorsionField b = solve(axis_box(-2, -2, 2, 2), 0.08);
  EXPECT_NEAR(b.tau_energy / a.tau_energy, 16.0, 1e-6);
}

TEST(Torsion, EnergyAndMassAgree) {
  for (std::size_t n : {3u, 5u, 9u}) {
    const TorsionField f = solve(regular_polygon(n, 1.0, 0.2), 0.05);
    EXPECT_LT(f.relative_gap(), 1e-6) << n;
  }
}

TEST(Torsion, RefinementConverges) {
  const Polygon p = axis_box(0, 0, 1, 1);
  const double e0 = std::abs(solve(p, 0.08).tau_energy - kSquareConstant);
  const double e1 = std::abs(solve(p, 0.04).tau_energy - kSquareConstant);
  EXPECT_LT(e1, 0.5 * e0);
}

TEST(Torsion, NonNegativeAndZeroOnBoundary) {
  const TorsionField f = solve(regular_polygon(6, 1.0), 0.05);
  const auto mask = f.mesh.boundary_mask();
  for (std::size_t i = 0; i < f.u.size(); ++i) {
    EXPECT_GE(f.u[i], 0.0);
    if (mask[i]) EXPECT_EQ(f.u[i], 0.0);
  }
}

TEST(Torsion, MonotoneUnderInclusion) {
  const double inner = solve(axis_box(-1, -1, 1, 1), 0.04).tau_energy;
  const double outer = solve(regular_polygon(8, 1.5, std::numbers::pi / 8), 0.04).tau_energy;
  EXPECT_LT(inner, outer);
}

TEST(Torsion, MissingTargetSizeIsPrecondition) {
  try {
    solve_torsion(axis_box(0, 0, 1, 1), SolverOptions{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(GradientAt, DiskCenterAndOffCenter) {
  const TorsionField f = solve(regular_polygon(128, 1.0), 0.02);
  EXPECT_LT(norm(gradient_at(f, {0, 0})), 0.02);
  const Vec2 g = gradient_at(f, {0.5, 0});
  EXPECT_NEAR(g.x, -0.5, 0.02);
  EXPECT_NEAR(g.y, 0.0, 0.02);
}

TEST(GradientAt, OutsideThrows) {
  const TorsionField f = solve(axis_box(0, 0, 1, 1), 0.1);
  try {
    gradient_at(f, {2, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PointOutside);
  }
}

TEST(GradientBound, BelowDiameter) {
  const TorsionField f = solve(axis_box(-2, -1, 2, 1), 0.05);
  EXPECT_LT(max_gradient_norm(f), metrics(f.mesh.domain).diameter);
}

TEST(SqrtConcavity, HoldsOnSquareAndTriangle) {
  for (const Polygon& p : {axis_box(0, 0, 1, 1), regular_polygon(3, 1.0)}) {
    const ConcavityReport r = check_sqrt_concavity(solve(p, 0.03), 200, 1);
    EXPECT_EQ(r.trials, 200);
    EXPECT_EQ(r.violations, 0);
  }
}

TEST(WarmStart, GuessGivesSameSolution) {
  const TriMesh m = triangulate(regular_polygon(7, 1.0), 0.04);
  const TorsionField cold = solve_torsion(m);
  const TorsionField warm = solve_torsion(m, {}, &cold.u);
  EXPECT_NEAR(warm.tau_energy, cold.tau_energy, 1e-9 * cold.tau_energy);
  EXPECT_LE(warm.cg_iterations, cold.cg_iterations);
}
