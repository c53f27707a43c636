#include <gtest/gtest.h>

#include <random>

#include "tmink/mesh.hpp"
#include "tmink/verify.hpp"

using namespace tmink;

namespace {

void expect_valid(const TriMesh& m) {
  const MeshCheck c = check_mesh(m);
  EXPECT_TRUE(c.conforming) << c.message;
  EXPECT_TRUE(c.oriented) << c.message;
  EXPECT_TRUE(c.facets_partition) << c.message;
  EXPECT_LT(c.area_defect, 1e-12);
  EXPECT_TRUE(c.ok()) << "min angle " << c.min_angle_deg;
}

}  // namespace

TEST(Triangulate, UnitSquareCoarse) {
  const TriMesh m = triangulate(axis_box(0, 0, 1, 1), 0.25);
  EXPECT_GE(m.triangles.size(), 32u);
  expect_valid(m);
}

TEST(Triangulate, TwoSquareAtHalf) {
  const TriMesh m = triangulate(axis_box(-1, -1, 1, 1), 0.5);
  EXPECT_GE(m.triangles.size(), 32u);
  expect_valid(m);
}

TEST(Triangulate, RejectsBadTargetSize) {
  const Polygon sq = axis_box(0, 0, 1, 1);
  for (double h : {0.0, -0.1, 0.5, 2.0}) {
    try {
      triangulate(sq, h);
      FAIL() << h;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Precondition);
    }
  }
}

TEST(Triangulate, NodeCapIsEnforced) {
  MeshOptions o;
  o.max_nodes = 1000;
  try {
    triangulate(axis_box(0, 0, 1, 1), 0.005, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MeshTooFine);
  }
}

TEST(Triangulate, RandomCorpusIsValid) {
  const auto corpus = polygon_corpus(20, 11);
  for (const auto& p : corpus) {
    expect_valid(triangulate(p, 0.05 * metrics(p).circumradius));
  }
}

TEST(Triangulate, EdgeLengthsFollowTarget) {
  const double h = 0.05;
  const TriMesh m = triangulate(regular_polygon(7, 1.0), h);
  EXPECT_LE(check_mesh(m).max_edge, 1.45 * h * (1 + 1e-9));
  for (const auto& e : m.boundary_edges) EXPECT_LE(e.length, h);
}

TEST(Triangulate, NodeCountGrowsAsTargetShrinks) {
  const Polygon p = regular_polygon(6, 1.0);
  std::size_t prev = 0;
  for (double h : {0.2, 0.1, 0.05}) {
    const std::size_t n = triangulate(p, h).nodes.size();
    EXPECT_GT(n, prev);
    prev = n;
  }
}

TEST(Triangulate, Deterministic) {
  const Polygon p = regular_polygon(5, 1.0, 0.3);
  const TriMesh a = triangulate(p, 0.07);
  const TriMesh b = triangulate(p, 0.07);
  ASSERT_EQ(a.nodes.size(), b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    EXPECT_EQ(a.nodes[i].x, b.nodes[i].x);
    EXPECT_EQ(a.nodes[i].y, b.nodes[i].y);
  }
  EXPECT_EQ(a.triangles, b.triangles);
}

TEST(Refine, QuadruplesTrianglesAndKeepsArea) {
  const TriMesh m = triangulate(axis_box(0, 0, 1, 1), 0.2);
  const TriMesh r = refine(m);
  EXPECT_EQ(r.triangles.size(), 4 * m.triangles.size());
  EXPECT_EQ(r.boundary_edges.size(), 2 * m.boundary_edges.size());
  const MeshCheck c = check_mesh(r);
  EXPECT_TRUE(c.conforming);
  EXPECT_TRUE(c.oriented);
  EXPECT_LT(c.area_defect, 1e-12);
  EXPECT_NEAR(c.min_angle_deg, check_mesh(m).min_angle_deg, 1e-9);
}

TEST(Refine, RespectsNodeCap) {
  const TriMesh m = triangulate(axis_box(0, 0, 1, 1), 0.2);
  EXPECT_THROW(refine(m, 10), Error);
}

TEST(DeformMesh, IdentityKeepsNodes) {
  const Polygon p = regular_polygon(6, 1.0, 0.2);
  const TriMesh m = triangulate(p, 0.1);
  const TriMesh d = deform_mesh(m, p);
  for (std::size_t i = 0; i < m.nodes.size(); ++i) EXPECT_LT(distance(m.nodes[i], d.nodes[i]), 1e-12);
}

TEST(DeformMesh, SimilarityMapsExactly) {
  const Polygon p = regular_polygon(5, 1.0, 0.1);
  const TriMesh m = triangulate(p, 0.1);
  const Vec2 t{0.4, -0.2};
  const TriMesh d = deform_mesh(m, translate(scale(p, 1.7), t));
  for (std::size_t i = 0; i < m.nodes.size(); ++i) EXPECT_LT(distance(m.nodes[i] * 1.7 + t, d.nodes[i]), 1e-12);
  expect_valid(d);
}

TEST(DeformMesh, SmallSupportChangeStaysValid) {
  const SupportSpec s({Direction(1, 0), Direction(0, 1), Direction(-1, 0), Direction(0, -1), Direction(1, 1)},
                      {1, 1, 1, 1, 1.2});
  const Polygon p = build_polytope(s);
  const TriMesh m = triangulate(p, 0.08);
  const Polygon q = build_polytope(s.with_values({1.05, 1, 0.97, 1, 1.22}));
  const TriMesh d = deform_mesh(m, q);
  const MeshCheck c = check_mesh(d);
  EXPECT_TRUE(c.conforming);
  EXPECT_TRUE(c.oriented);
  EXPECT_LT(c.area_defect, 1e-12);
  for (const auto& e : d.boundary_edges) EXPECT_NEAR(e.length, distance(d.nodes[e.a], d.nodes[e.b]), 1e-15);
}

TEST(DeformMesh, RejectsDifferentStructure) {
  const TriMesh m = triangulate(regular_polygon(5, 1.0), 0.1);
  try {
    deform_mesh(m, regular_polygon(6, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}
