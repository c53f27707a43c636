#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tmink/solver.hpp"

using namespace tmink;

namespace {

constexpr double kSquareConstant = 0.14057701497149108;

std::vector<Direction> axes() {
  return {Direction(1, 0), Direction(0, 1), Direction(-1, 0), Direction(0, -1)};
}

std::vector<Direction> angles(const std::vector<double>& deg) {
  std::vector<Direction> out;
  for (double d : deg) out.push_back(Direction::from_degrees(d));
  return out;
}

TargetMeasure uneven() {
  return project_balance({1, 2, 1.5, 0.8, 1, 2, 1.5, 0.8}, angles({0, 45, 90, 135, 180, 225, 270, 315}));
}

}  // namespace

TEST(ProjectBalance, AlreadyBalancedIsUnchanged) {
  const TargetMeasure t = project_balance({1, 1, 1, 1}, axes());
  for (double w : t.weights()) EXPECT_NEAR(w, 1.0, 1e-15);
}

TEST(ProjectBalance, SmallImbalanceIsSpread) {
  const TargetMeasure t = project_balance({1.02, 1, 1, 1}, axes());
  EXPECT_NEAR(t.weights()[0], 1.01, 1e-12);
  EXPECT_NEAR(t.weights()[2], 1.01, 1e-12);
  EXPECT_NEAR(t.weights()[1], 1.0, 1e-12);
  EXPECT_LT(t.imbalance(), 1e-12);
}

TEST(ProjectBalance, LargeImbalanceIsRejected) {
  try {
    project_balance({1, 1.5, 1, 1}, axes());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnbalanceableMeasure);
  }
}

TEST(ProjectBalance, HalfPlaneIsRejected) {
  try {
    project_balance({1, 1, 1}, angles({0, 45, 90}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnbalanceableMeasure);
  }
}

TEST(TargetMeasure, CheckedRejectsImbalanceAndBadWeights) {
  EXPECT_THROW(TargetMeasure::checked(axes(), {1, 1.01, 1, 1}), Error);
  EXPECT_THROW(TargetMeasure::checked(axes(), {1, 0, 1, 0}), Error);
  EXPECT_NO_THROW(TargetMeasure::checked(axes(), {2, 3, 2, 3}));
}

TEST(Objective, ScaleAndTranslationInvariant) {
  const TargetMeasure t = uneven();
  const std::vector<double> h(t.size(), 1.0);
  const ObjectiveValue a = objective(h, t, 0.02);
  std::vector<double> h2(h);
  for (double& v : h2) v *= 2.0;
  const ObjectiveValue b = objective(h2, t, 0.04);
  EXPECT_NEAR(a.J, b.J, 1e-9 * a.J);
  // Translation by x changes h_i by <x, X_i>; sum c_i <x, X_i> = 0 for balanced c.
  std::vector<double> h3(h);
  const Vec2 x{0.1, -0.05};
  for (std::size_t i = 0; i < h3.size(); ++i) h3[i] += dot(x, t.normals()[i].vec());
  const ObjectiveValue c = objective(h3, t, 0.02, &a);
  EXPECT_NEAR(a.J, c.J, 1e-9 * a.J);
}

TEST(Objective, EulerFactorNearOne) {
  const ObjectiveValue v = objective(std::vector<double>(8, 1.0), uneven(), 0.02);
  EXPECT_NEAR(v.euler_factor, 1.0, 0.01);
  EXPECT_GT(v.tau, 0.0);
}

TEST(Objective, GradientOrthogonalToTranslations) {
  const TargetMeasure t = uneven();
  const ObjectiveValue v = objective(std::vector<double>(t.size(), 1.0), t, 0.02);
  Vec2 s;
  for (std::size_t i = 0; i < t.size(); ++i) s += t.normals()[i].vec() * v.grad[i];
  double gnorm = 0.0;
  for (double g : v.grad) gnorm += std::abs(g);
  EXPECT_LT(norm(s), 0.01 * gnorm);
}

TEST(Objective, GradientMatchesFiniteDifferences) {
  const GradientCheck g = gradient_fd_check(uneven(), std::vector<double>(8, 1.0), {1, 3}, 1e-3, 0.01);
  EXPECT_LT(g.worst, 0.05);
}

TEST(Objective, SquareIsStationaryForUniformTarget) {
  const TargetMeasure t = TargetMeasure::checked(axes(), {1, 1, 1, 1});
  const ObjectiveValue v = objective({1, 1, 1, 1}, t, 0.04);
  double g = 0.0, c = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    g += v.grad[i] * v.grad[i];
    c += 1.0;
  }
  const double q = std::pow(v.tau, -0.25);
  EXPECT_LT(std::sqrt(g), 0.03 * q * std::sqrt(c));
}

TEST(Solve, UnitSquareFromItsMeasure) {
  const double w = 2 * kSquareConstant;
  const TargetMeasure t = TargetMeasure::checked(axes(), {w, w, w, w});
  const SolveReport r = solve_minkowski(t);
  EXPECT_TRUE(r.converged);
  for (double h : r.h_final.values()) EXPECT_NEAR(h, 0.5, 0.005);
  EXPECT_NEAR(r.polygon.area(), 1.0, 0.02);
  EXPECT_LE(r.final_residual, 0.01);
  ASSERT_FALSE(r.residual_history.empty());
  EXPECT_EQ(r.objective_history.size(), r.residual_history.size());
}

TEST(Solve, UnevenTargetReproducesMeasure) {
  const TargetMeasure t = uneven();
  const SolveReport r = solve_minkowski(t);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(relative_l1(r.mu_final.weights, t.weights()), 0.015);
  EXPECT_NEAR(r.dilation, r.dilation_from_tau, 0.01);
}

TEST(Solve, ScaledTargetScalesBodyByCubeRoot) {
  const TargetMeasure t = uneven();
  const SolveReport a = solve_minkowski(t);
  const SolveReport b = solve_minkowski(t.scaled(8.0));
  EXPECT_NEAR(metrics(b.polygon).diameter / metrics(a.polygon).diameter, 2.0, 0.02);
}

TEST(Solve, DeterministicForFixedSeed) {
  SolveOptions o;
  o.seed = 3;
  o.initial_jitter = 0.1;
  const SolveReport a = solve_minkowski(uneven(), o);
  const SolveReport b = solve_minkowski(uneven(), o);
  EXPECT_EQ(a.h_final.values(), b.h_final.values());
  EXPECT_EQ(a.residual_history, b.residual_history);
}

TEST(Solve, IterationLimitThrowsWithPartialReport) {
  SolveOptions o;
  o.max_iters = 1;
  try {
    solve_minkowski(uneven(), o);
    FAIL();
  } catch (const NoConvergenceError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoConvergence);
    EXPECT_FALSE(e.report().converged);
    EXPECT_EQ(e.report().iterations, 1);
  }
}

TEST(Uniqueness, SingleSeedHasNoPairs) {
  const UniquenessReport r = uniqueness_probe(uneven(), {7});
  EXPECT_EQ(r.solutions.size(), 1u);
  EXPECT_TRUE(r.pairwise_relative.empty());
  EXPECT_TRUE(r.pass);
}

TEST(Uniqueness, SeedsAgree) {
  const UniquenessReport r = uniqueness_probe(uneven(), {1, 2});
  EXPECT_TRUE(r.pass) << r.worst;
}
