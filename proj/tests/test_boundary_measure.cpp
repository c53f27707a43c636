#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "tmink/boundary_measure.hpp"
#include "tmink/verify.hpp"

using namespace tmink;

namespace {

constexpr double kSquareConstant = 0.14057701497149108;

}  // namespace

TEST(BoundaryFlux, DiskFluxIsOne) {
  const MeasuredBody b = measure_body(regular_polygon(128, 1.0), 0.02);
  const BoundaryFlux g = boundary_flux(b.field);
  // Away from the (nearly flat) polygon corners the flux should sit near |du/dnu| = 1.
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < g.magnitude.size(); ++i) {
    if (!g.on_boundary[i]) continue;
    sum += g.magnitude[i];
    ++count;
  }
  ASSERT_GT(count, 0);
  EXPECT_NEAR(sum / count, 1.0, 0.02);
  EXPECT_NEAR(b.measure.total(), 2 * std::numbers::pi, 0.02 * 2 * std::numbers::pi);
}

TEST(TorsionMeasure, SquareSidesAreEqual) {
  const MeasuredBody b = measure_body(axis_box(-1, -1, 1, 1), 0.02);
  ASSERT_EQ(b.measure.weights.size(), 4u);
  const double tau = 16 * kSquareConstant;
  for (double w : b.measure.weights) EXPECT_NEAR(w, tau, 0.01 * tau);
  EXPECT_LT(b.measure.closure_defect(), 1e-4);
}

TEST(TorsionMeasure, ClosureOnRandomBodies) {
  for (const auto& p : polygon_corpus(10, 21)) {
    const MeasuredBody b = measure_body(p, 0.02 * metrics(p).circumradius);
    EXPECT_LT(b.measure.closure_defect(), 0.01);
  }
}

TEST(TorsionMeasure, RepresentationResidual) {
  for (const auto& p : polygon_corpus(10, 22)) {
    const MeasuredBody b = measure_body(p, 0.02 * metrics(p).circumradius);
    EXPECT_LT(representation_residual(b.field, b.measure), 0.01);
  }
}

TEST(TorsionMeasure, SupportSpecKeepsInactiveNormals) {
  const SupportSpec s({Direction(1, 0), Direction(0, 1), Direction(-1, 0), Direction(0, -1), Direction(1, 1)},
                      {1, 1, 1, 1, 5});
  SolverOptions so;
  so.target_h = 0.05;
  const TorsionField f = solve_torsion(build_polytope(s), so);
  const SurfaceMeasure mu = torsion_measure(f, s);
  ASSERT_EQ(mu.weights.size(), 5u);
  EXPECT_EQ(mu.weights[1], 0.0);
  EXPECT_LT(representation_residual(f, s, mu), 0.01);
}

TEST(MixedTorsion, LinearInSecondArgument) {
  const MeasuredBody b = measure_body(regular_polygon(6, 1.0, 0.1), 0.03);
  const Polygon k = regular_polygon(5, 0.7, 0.4);
  const Polygon l = axis_box(-0.3, -0.2, 0.5, 0.6);
  const double lhs = mixed_torsion(b.measure, minkowski_sum(scale(k, 2.0), scale(l, 0.5)));
  const double rhs = 2.0 * mixed_torsion(b.measure, k) + 0.5 * mixed_torsion(b.measure, l);
  EXPECT_NEAR(lhs, rhs, 1e-9 * std::abs(rhs));
}

TEST(MixedTorsion, OwnBodyGivesFourTau) {
  const MeasuredBody b = measure_body(axis_box(-1, -1, 1, 1), 0.02);
  EXPECT_NEAR(mixed_torsion(b.measure, axis_box(-1, -1, 1, 1)), 4 * b.field.tau_energy, 0.01 * b.field.tau_energy);
}

TEST(MixedTorsion, TranslationInvariantInSecondArgument) {
  const MeasuredBody b = measure_body(regular_polygon(7, 1.0), 0.03);
  const Polygon k = regular_polygon(4, 0.5);
  EXPECT_NEAR(mixed_torsion(b.measure, translate(k, {3, -2})), mixed_torsion(b.measure, k),
              0.01 * mixed_torsion(b.measure, k));
}

TEST(Hadamard, SquareAlongItself) {
  const Polygon sq = axis_box(-1, -1, 1, 1);
  const std::array<double, 3> s{0.02, 0.01, 0.005};
  const HadamardReport r = hadamard_fd_check(sq, sq, s, 0.02);
  EXPECT_NEAR(r.predicted, 4 * r.tau0, 0.01 * r.tau0);
  EXPECT_LT(r.samples.back().mismatch, 0.02);
  EXPECT_LT(r.extrapolated_mismatch, 0.02);
}

TEST(Hadamard, SquareAlongOctagon) {
  const std::array<double, 3> s{0.02, 0.01, 0.005};
  const HadamardReport r =
      hadamard_fd_check(axis_box(-1, -1, 1, 1), regular_polygon(8, 1.0, std::numbers::pi / 8), s, 0.02);
  EXPECT_LT(r.samples.back().mismatch, 0.02);
  EXPECT_LE(r.samples[2].mismatch, r.samples[0].mismatch);
}

TEST(Hadamard, RejectsBadSteps) {
  const Polygon sq = axis_box(-1, -1, 1, 1);
  const std::array<double, 2> increasing{0.01, 0.02};
  EXPECT_THROW(hadamard_fd_check(sq, sq, increasing, 0.1), Error);
  EXPECT_THROW(hadamard_fd_check(sq, sq, std::span<const double>{}, 0.1), Error);
}
