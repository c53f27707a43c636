#include <gtest/gtest.h>

#include <array>
#include <numbers>
#include <random>

#include "tmink/verify.hpp"

using namespace tmink;

TEST(RandomPolygon, RespectsConstraints) {
  std::mt19937_64 rng(1);
  const RandomPolygonOptions o;
  for (int k = 0; k < 200; ++k) {
    const Polygon p = random_polygon(rng, o);
    const PolygonMetrics m = metrics(p);
    EXPECT_GE(p.size(), 3u);
    EXPECT_LE(p.size(), 10u);
    EXPECT_LE(m.circumradius / m.inradius, o.max_aspect + 1e-9);
    EXPECT_GE(min_interior_angle(p) * 180 / std::numbers::pi, o.min_corner_deg - 1e-9);
  }
}

TEST(RandomPolygon, CorpusIsSeeded) {
  const auto a = polygon_corpus(5, 9);
  const auto b = polygon_corpus(5, 9);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(hausdorff_distance(a[i], b[i]), 0.0);
}

TEST(MinkowskiCombination, SupportIsInterpolated) {
  const Polygon p0 = axis_box(-1, -1, 1, 1);
  const Polygon p1 = regular_polygon(6, 2.0, 0.2);
  const Polygon m = minkowski_combination(p0, p1, 0.25);
  for (int k = 0; k < 36; ++k) {
    const Direction d = Direction::from_degrees(10.0 * k);
    EXPECT_NEAR(support_function(m, d), 0.75 * support_function(p0, d) + 0.25 * support_function(p1, d), 1e-12);
  }
  EXPECT_LT(hausdorff_distance(minkowski_combination(p1, p1, 0.4), p1), 1e-12);
}

TEST(BrunnMinkowski, SquareAndHexagon) {
  const std::array<double, 3> t{0.25, 0.5, 0.75};
  const CheckReport r = brunn_minkowski_check(axis_box(-1, -1, 1, 1), regular_polygon(6, 1.2, 0.3), t, 0.04);
  EXPECT_EQ(r.trials, 3);
  EXPECT_TRUE(r.pass()) << r.worst_margin;
}

TEST(BrunnMinkowski, HomotheticPairIsEquality) {
  const Polygon p0 = regular_polygon(5, 1.0);
  const Polygon p1 = translate(scale(p0, 2.0), {0.5, 0.2});
  BrunnMinkowskiOptions o;
  o.expect_equality = true;
  const std::array<double, 2> t{0.3, 0.6};
  const CheckReport r = brunn_minkowski_check(p0, p1, t, 0.03, o);
  EXPECT_TRUE(r.pass()) << r.worst_margin;
}

TEST(Continuity, SmallPerturbationsStayWithinBudget) {
  const Polygon p = regular_polygon(6, 1.0, 0.2);
  const CheckReport r = continuity_check(p, 0.005, 3, 0.04, 5);
  EXPECT_EQ(r.trials, 3);
  EXPECT_TRUE(r.pass()) << r.worst_margin;
}

TEST(Continuity, RejectsLargePerturbations) {
  EXPECT_THROW(continuity_check(axis_box(-1, -1, 1, 1), 0.5, 1, 0.1, 1), Error);
}

TEST(Homogeneity, SquareScales) {
  const std::array<double, 2> s{0.5, 2.0};
  const CheckReport r = homogeneity_check(axis_box(-1, -1, 1, 1), s, 0.02);
  EXPECT_EQ(r.trials, 4);
  EXPECT_TRUE(r.pass()) << r.worst_margin;
}

TEST(Homogeneity, NonPositiveScaleThrows) {
  const std::array<double, 1> s{-1.0};
  EXPECT_THROW(homogeneity_check(axis_box(-1, -1, 1, 1), s, 0.1), Error);
}

TEST(CheckReport, MergeKeepsWorst) {
  CheckReport a, b;
  a.add("x", 1, 0.5);
  b.add("y", 2, -0.1);
  a.merge(b);
  EXPECT_EQ(a.trials, 2);
  EXPECT_EQ(a.failures, 1);
  EXPECT_DOUBLE_EQ(a.worst_margin, -0.1);
  EXPECT_FALSE(a.pass());
}

TEST(Corpus, SmallRunPasses) {
  CorpusOptions o;
  o.corpus_size = 2;
  o.bm_pairs = 1;
  for (const auto& r : run_corpus_checks(o)) EXPECT_TRUE(r.pass()) << r.name << " " << r.worst_margin;
}
