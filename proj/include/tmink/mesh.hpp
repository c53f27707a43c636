#ifndef TMINK_MESH_HPP
#define TMINK_MESH_HPP

// Triangulation of convex polygons. Boundary samples and an interior
// triangular lattice are inserted into a constrained Delaunay triangulation
// (Lawson flips, polygon edges never flipped); a Ruppert-style pass then
// splits skinny or oversized triangles, splitting boundary segments when the
// new circumcenter would encroach them.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tmink/error.hpp"
#include "tmink/geometry.hpp"

namespace tmink {

struct BoundaryEdge {
  int a = 0;
  int b = 0;
  int facet = 0;  // polygon edge index
  double length = 0.0;
};

struct TriMesh {
  Polygon domain;
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;  // oriented counterclockwise along the boundary
  double target_h = 0.0;

  std::vector<char> boundary_mask() const {
    std::vector<char> mask(nodes.size(), 0);
    for (const auto& e : boundary_edges) mask[e.a] = mask[e.b] = 1;
    return mask;
  }

  double triangle_area(std::size_t t) const {
    const auto& tri = triangles[t];
    return 0.5 * cross(nodes[tri[1]] - nodes[tri[0]], nodes[tri[2]] - nodes[tri[0]]);
  }
};

struct MeshOptions {
  /// Boundary spacing is boundary_ratio * target_h when set, target_h otherwise.
  bool graded = true;
  double boundary_ratio = 0.25;
  std::size_t max_nodes = 2'000'000;
  double min_angle_deg = 22.0;
  /// Triangles with an edge longer than this multiple of target_h are split.
  double max_edge_factor = 1.45;
  /// Lattice points closer than this multiple of target_h to the boundary are dropped.
  double lattice_clearance = 0.55;
};

namespace detail {

inline double orient(const Vec2& a, const Vec2& b, const Vec2& c) { return cross(b - a, c - a); }

inline double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double ad = adx * adx + ady * ady;
  const double bd = bdx * bdx + bdy * bdy;
  const double cd = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

inline Vec2 circumcenter(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Vec2 ab = b - a;
  const Vec2 ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  return a + Vec2{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
}

inline double min_angle(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double la = distance(b, c), lb = distance(c, a), lc = distance(a, b);
  auto ang = [](double opp, double s1, double s2) {
    const double v = std::clamp((s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2), -1.0, 1.0);
    return std::acos(v);
  };
  return std::min({ang(la, lb, lc), ang(lb, lc, la), ang(lc, la, lb)});
}

class CdtBuilder {
 public:
  CdtBuilder(const Polygon& domain, double target_h, const MeshOptions& opts)
      : domain_(domain), h_(target_h), opts_(opts) {
    double s = 0.0;
    for (const auto& v : domain.vertices()) s = std::max({s, std::abs(v.x), std::abs(v.y)});
    scale_ = std::max(s, 1e-300);
    eps_ = 1e-13 * scale_ * scale_;
  }

  TriMesh build() {
    seed_fan();
    sample_boundary();
    fill_lattice();
    refine_quality();
    return finish();
  }

 private:
  struct Tri {
    std::array<int, 3> v{};
    std::array<int, 3> nb{-1, -1, -1};
    std::array<int, 3> facet{-1, -1, -1};
  };
  enum class Where { Inside, OnEdge, Outside };
  struct Location {
    Where where;
    int tri;
    int edge;
  };

  const Polygon& domain_;
  double h_;
  MeshOptions opts_;
  double scale_ = 1.0;
  double eps_ = 0.0;
  std::vector<Vec2> pts_;
  std::vector<int> corner_;  // polygon vertex index, or -1
  double max_segment_ = std::numeric_limits<double>::infinity();  // boundary segments never grow
  std::vector<Tri> tris_;
  std::vector<int> touched_;
  int last_ = 0;

  int add_point(const Vec2& p, int corner = -1) {
    if (pts_.size() >= opts_.max_nodes) {
      fail(ErrorKind::MeshTooFine, "node count would exceed cap of " + std::to_string(opts_.max_nodes));
    }
    pts_.push_back(p);
    corner_.push_back(corner);
    return static_cast<int>(pts_.size()) - 1;
  }

  Vec2 P(int v) const { return pts_[static_cast<std::size_t>(v)]; }

  int new_tri() {
    tris_.emplace_back();
    return static_cast<int>(tris_.size()) - 1;
  }

  // Sets edge i of t to face neighbour u (or boundary facet when u < 0)
  // and repairs the back pointer in u.
  void link(int t, int i, int u, int facet) {
    tris_[t].nb[i] = u;
    tris_[t].facet[i] = u < 0 ? facet : -1;
    if (u < 0) return;
    const int a = tris_[t].v[(i + 1) % 3];
    const int b = tris_[t].v[(i + 2) % 3];
    for (int j = 0; j < 3; ++j) {
      if (tris_[u].v[(j + 1) % 3] == b && tris_[u].v[(j + 2) % 3] == a) {
        tris_[u].nb[j] = t;
        tris_[u].facet[j] = -1;
        return;
      }
    }
  }

  void seed_fan() {
    const std::size_t n = domain_.size();
    for (std::size_t k = 0; k < n; ++k) add_point(domain_.vertex(k), static_cast<int>(k));
    // Fan from vertex 0; triangle k covers (0, k+1, k+2).
    for (std::size_t k = 0; k + 2 < n; ++k) {
      const int t = new_tri();
      tris_[t].v = {0, static_cast<int>(k + 1), static_cast<int>(k + 2)};
    }
    const int m = static_cast<int>(n) - 2;
    for (int t = 0; t < m; ++t) {
      // edge 0: (k+1, k+2) is polygon facet k+1
      tris_[t].nb[0] = -1;
      tris_[t].facet[0] = t + 1;
      // edge 1: (k+2, 0)
      if (t + 1 < m) {
        tris_[t].nb[1] = t + 1;
      } else {
        tris_[t].nb[1] = -1;
        tris_[t].facet[1] = static_cast<int>(n) - 1;
      }
      // edge 2: (0, k+1)
      if (t > 0) {
        tris_[t].nb[2] = t - 1;
      } else {
        tris_[t].nb[2] = -1;
        tris_[t].facet[2] = 0;
      }
    }
    // Plain Lawson sweep on the fan (no distinguished apex).
    bool changed = true;
    while (changed) {
      changed = false;
      for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
        for (int i = 0; i < 3; ++i) {
          const int u = tris_[t].nb[i];
          if (u < 0) continue;
          int j = 0;
          while (tris_[u].nb[j] != t) ++j;
          const auto& tv = tris_[t].v;
          if (incircle(P(tv[0]), P(tv[1]), P(tv[2]), P(tris_[u].v[j])) > eps_ * scale_ * scale_) {
            flip(t, i);
            changed = true;
          }
        }
      }
    }
  }

  // Flips the edge opposite vertex i of t. Afterwards t = (p, a, d) and the
  // neighbour slot holds (p, d, b), with p = old t.v[i].
  void flip(int t, int i) {
    const int u = tris_[t].nb[i];
    int j = 0;
    while (tris_[u].nb[j] != t) ++j;
    const int p = tris_[t].v[i];
    const int a = tris_[t].v[(i + 1) % 3];
    const int b = tris_[t].v[(i + 2) % 3];
    const int d = tris_[u].v[j];
    const int t_opp_a = tris_[t].nb[(i + 1) % 3], t_opp_a_f = tris_[t].facet[(i + 1) % 3];
    const int t_opp_b = tris_[t].nb[(i + 2) % 3], t_opp_b_f = tris_[t].facet[(i + 2) % 3];
    const int u_opp_b = tris_[u].nb[(j + 1) % 3], u_opp_b_f = tris_[u].facet[(j + 1) % 3];
    const int u_opp_a = tris_[u].nb[(j + 2) % 3], u_opp_a_f = tris_[u].facet[(j + 2) % 3];
    tris_[t].v = {p, a, d};
    tris_[u].v = {p, d, b};
    link(t, 0, u_opp_b, u_opp_b_f);
    link(t, 1, u, -1);
    link(t, 2, t_opp_b, t_opp_b_f);
    link(u, 0, u_opp_a, u_opp_a_f);
    link(u, 1, t_opp_a, t_opp_a_f);
    link(u, 2, t, -1);
    touched_.push_back(t);
    touched_.push_back(u);
  }

  // Restores the Delaunay property around a freshly inserted vertex; the
  // stack holds (triangle, index of the new vertex in it).
  void legalize(std::vector<std::pair<int, int>> stack) {
    while (!stack.empty()) {
      auto [t, i] = stack.back();
      stack.pop_back();
      const int u = tris_[t].nb[i];
      if (u < 0) continue;
      int j = 0;
      while (tris_[u].nb[j] != t) ++j;
      const auto& tv = tris_[t].v;
      if (incircle(P(tv[0]), P(tv[1]), P(tv[2]), P(tris_[u].v[j])) > 0.0) {
        flip(t, i);
        // Apex sits at index 0 in both triangles after the flip.
        stack.emplace_back(t, 0);
        stack.emplace_back(u, 0);
      }
    }
  }

  Location locate(const Vec2& p, int start) const {
    int t = (start >= 0 && start < static_cast<int>(tris_.size())) ? start : 0;
    std::uint32_t rot = 0;
    for (std::size_t guard = 0; guard < 4 * tris_.size() + 16; ++guard) {
      bool moved = false;
      rot = rot * 1664525u + 1013904223u;
      const int off = static_cast<int>(rot >> 30) % 3;
      for (int k = 0; k < 3; ++k) {
        const int i = (k + off) % 3;
        const Vec2 a = P(tris_[t].v[(i + 1) % 3]);
        const Vec2 b = P(tris_[t].v[(i + 2) % 3]);
        if (orient(a, b, p) < -eps_) {
          if (tris_[t].nb[i] < 0) return {Where::Outside, t, i};
          t = tris_[t].nb[i];
          moved = true;
          break;
        }
      }
      if (!moved) {
        for (int i = 0; i < 3; ++i) {
          const Vec2 a = P(tris_[t].v[(i + 1) % 3]);
          const Vec2 b = P(tris_[t].v[(i + 2) % 3]);
          if (std::abs(orient(a, b, p)) <= eps_) return {Where::OnEdge, t, i};
        }
        return {Where::Inside, t, -1};
      }
    }
    // Walk did not terminate; fall back to a scan.
    for (int s = 0; s < static_cast<int>(tris_.size()); ++s) {
      bool in = true;
      for (int i = 0; i < 3 && in; ++i) {
        in = orient(P(tris_[s].v[(i + 1) % 3]), P(tris_[s].v[(i + 2) % 3]), p) >= -eps_;
      }
      if (in) return {Where::Inside, s, -1};
    }
    return {Where::Outside, 0, 0};
  }

  int insert_in_triangle(int t, const Vec2& p) {
    const int q = add_point(p);
    const Tri old = tris_[t];
    const int t1 = new_tri();
    const int t2 = new_tri();
    const auto [v0, v1, v2] = old.v;
    tris_[t].v = {q, v1, v2};
    tris_[t1].v = {q, v2, v0};
    tris_[t2].v = {q, v0, v1};
    link(t, 0, old.nb[0], old.facet[0]);
    link(t1, 0, old.nb[1], old.facet[1]);
    link(t2, 0, old.nb[2], old.facet[2]);
    link(t, 1, t1, -1);
    link(t, 2, t2, -1);
    link(t1, 1, t2, -1);
    touched_.insert(touched_.end(), {t, t1, t2});
    last_ = t;
    legalize({{t, 0}, {t1, 0}, {t2, 0}});
    return q;
  }

  // Splits edge i of t at p; handles both interior and boundary edges.
  int insert_on_edge(int t, int i, const Vec2& p, int corner = -1) {
    const int q = add_point(p, corner);
    const Tri tt = tris_[t];
    const int c = tt.v[i];
    const int a = tt.v[(i + 1) % 3];
    const int b = tt.v[(i + 2) % 3];
    const int u = tt.nb[i];
    const int t2 = new_tri();
    // t1 reuses slot t.
    tris_[t].v = {c, a, q};
    tris_[t2].v = {c, q, b};
    std::vector<std::pair<int, int>> stack;
    if (u < 0) {
      const int f = tt.facet[i];
      link(t, 2, tt.nb[(i + 2) % 3], tt.facet[(i + 2) % 3]);  // (c, a)
      link(t2, 1, tt.nb[(i + 1) % 3], tt.facet[(i + 1) % 3]);  // (b, c)
      link(t, 1, t2, -1);
      link(t, 0, -1, f);
      link(t2, 0, -1, f);
      touched_.insert(touched_.end(), {t, t2});
      stack = {{t, 2}, {t2, 1}};
    } else {
      const Tri uu = tris_[u];
      int j = 0;
      while (uu.nb[j] != t) ++j;
      const int d = uu.v[j];
      const int u2 = new_tri();
      tris_[u].v = {d, b, q};
      tris_[u2].v = {d, q, a};
      link(t, 2, tt.nb[(i + 2) % 3], tt.facet[(i + 2) % 3]);
      link(t2, 1, tt.nb[(i + 1) % 3], tt.facet[(i + 1) % 3]);
      link(u, 2, uu.nb[(j + 2) % 3], uu.facet[(j + 2) % 3]);  // (d, b)
      link(u2, 1, uu.nb[(j + 1) % 3], uu.facet[(j + 1) % 3]);  // (a, d)
      link(t, 1, t2, -1);
      link(t, 0, u2, -1);
      link(t2, 0, u, -1);
      link(u, 1, u2, -1);
      touched_.insert(touched_.end(), {t, t2, u, u2});
      stack = {{t, 2}, {t2, 1}, {u, 2}, {u2, 1}};
    }
    last_ = t;
    legalize(std::move(stack));
    return q;
  }

  // Triangle and local edge carrying the boundary segment (a, b).
  std::pair<int, int> find_boundary_edge(int a, int b) const {
    for (int t = static_cast<int>(tris_.size()) - 1; t >= 0; --t) {
      for (int i = 0; i < 3; ++i) {
        if (tris_[t].nb[i] < 0 && tris_[t].v[(i + 1) % 3] == a && tris_[t].v[(i + 2) % 3] == b) return {t, i};
      }
    }
    fail(ErrorKind::FacetAttributionMissing, "boundary segment not found in triangulation");
  }

  void sample_boundary() {
    const double spacing = opts_.graded ? opts_.boundary_ratio * h_ : h_;
    const std::size_t n = domain_.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2 a = domain_.vertex(k);
      const Vec2 b = domain_.vertex((k + 1) % n);
      const int m = std::max(1, static_cast<int>(std::ceil(distance(a, b) / spacing - 1e-9)));
      int prev = static_cast<int>(k);
      const int end = static_cast<int>((k + 1) % n);
      for (int s = 1; s < m; ++s) {
        const double w = static_cast<double>(s) / m;
        const Vec2 p = a * (1.0 - w) + b * w;
        auto [t, i] = find_boundary_edge(prev, end);
        prev = insert_on_edge(t, i, p);
      }
    }
  }

  // Signed distance to the boundary (positive inside).
  double depth(const Vec2& p) const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < domain_.size(); ++k) {
      d = std::min(d, domain_.facet_support(k) - dot(domain_.facet_normals()[k].vec(), p));
    }
    return d;
  }

  void fill_lattice() {
    Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 hi = -lo;
    for (const auto& v : domain_.vertices()) {
      lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
      hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
    }
    const double dy = 0.5 * std::sqrt(3.0) * h_;
    // Lattice anchored at the origin so nearby domains share interior nodes.
    const long j0 = static_cast<long>(std::floor(lo.y / dy));
    const long j1 = static_cast<long>(std::ceil(hi.y / dy));
    const double clearance = opts_.lattice_clearance * h_;
    for (long j = j0; j <= j1; ++j) {
      const double y = static_cast<double>(j) * dy;
      const double shift = (j & 1) ? 0.5 * h_ : 0.0;
      const long i0 = static_cast<long>(std::floor((lo.x - shift) / h_));
      const long i1 = static_cast<long>(std::ceil((hi.x - shift) / h_));
      for (long i = i0; i <= i1; ++i) {
        const Vec2 p{shift + static_cast<double>(i) * h_, y};
        if (depth(p) < clearance) continue;
        const Location loc = locate(p, last_);
        if (loc.where == Where::Inside) {
          insert_in_triangle(loc.tri, p);
        } else if (loc.where == Where::OnEdge && tris_[loc.tri].nb[loc.edge] >= 0) {
          insert_on_edge(loc.tri, loc.edge, p);
        }
      }
    }
  }

  bool is_bad(int t) const {
    const auto& v = tris_[t].v;
    const Vec2 a = P(v[0]), b = P(v[1]), c = P(v[2]);
    const double longest = std::max({distance(a, b), distance(b, c), distance(c, a)});
    if (longest > opts_.max_edge_factor * h_) return true;
    const double ang = min_angle(a, b, c);
    if (ang >= opts_.min_angle_deg * std::numbers::pi / 180.0) return false;
    // A triangle filling a polygon corner of at most 90 degrees cannot be
    // improved; obtuse corners get a bisector point instead.
    const int fc = filled_corner(t);
    return fc < 0 || corner_angle(v[fc]) > 0.5 * std::numbers::pi;
  }

  // Local index of a polygon corner whose two boundary edges both belong to t.
  int filled_corner(int t) const {
    for (int i = 0; i < 3; ++i) {
      if (corner_[tris_[t].v[i]] < 0) continue;
      if (tris_[t].nb[(i + 1) % 3] < 0 && tris_[t].nb[(i + 2) % 3] < 0) return i;
    }
    return -1;
  }

  double corner_angle(int v) const {
    const std::size_t n = domain_.size();
    const auto k = static_cast<std::size_t>(corner_[v]);
    const Vec2 a = domain_.vertex((k + n - 1) % n) - domain_.vertex(k);
    const Vec2 b = domain_.vertex((k + 1) % n) - domain_.vertex(k);
    return std::acos(std::clamp(dot(a, b) / (norm(a) * norm(b)), -1.0, 1.0));
  }

  // Point on the inner bisector of a filled obtuse corner, as far from the
  // corner as the shorter of its two boundary edges.
  Vec2 corner_bisector_point(int t, int i) const {
    const auto& v = tris_[t].v;
    const Vec2 c = P(v[i]);
    const Vec2 a = P(v[(i + 1) % 3]) - c;
    const Vec2 b = P(v[(i + 2) % 3]) - c;
    const Vec2 dir = a / norm(a) + b / norm(b);
    return c + dir * (std::min(norm(a), norm(b)) / norm(dir));
  }

  // Boundary segment whose diametral circle strictly contains p, if any.
  std::pair<int, int> encroached_segment(const Vec2& p) const {
    // A point inside a diametral circle is within half a segment length of
    // the boundary.
    if (depth(p) > 0.5 * max_segment_ * (1.0 + 1e-9)) return {-1, -1};
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      for (int i = 0; i < 3; ++i) {
        if (tris_[t].nb[i] >= 0) continue;
        const Vec2 a = P(tris_[t].v[(i + 1) % 3]);
        const Vec2 b = P(tris_[t].v[(i + 2) % 3]);
        if (dot(a - p, b - p) < -1e-12 * dot(b - a, b - a)) return {t, i};
      }
    }
    return {-1, -1};
  }

  // Split point of a boundary segment. Next to a polygon corner the split
  // lands on a power-of-two distance from the corner (concentric shells),
  // so both sides of a sharp corner are cut to matching lengths.
  Vec2 split_point(int a, int b) const {
    const Vec2 pa = P(a), pb = P(b);
    const double len = distance(pa, pb);
    const bool ca = corner_[a] >= 0;
    const bool cb = corner_[b] >= 0;
    if (ca == cb) return 0.5 * (pa + pb);
    const double d = std::exp2(std::round(std::log2(0.5 * len)));
    const double w = std::clamp(d / len, 0.3, 0.7);
    return ca ? pa + (pb - pa) * w : pb + (pa - pb) * w;
  }

  void split_segment(int t, int i) {
    const int a = tris_[t].v[(i + 1) % 3];
    const int b = tris_[t].v[(i + 2) % 3];
    insert_on_edge(t, i, split_point(a, b));
  }

  // Splits segments whose opposite vertex lies inside their diametral circle.
  bool split_encroached(const std::vector<int>& candidates) {
    bool any = false;
    for (int t : candidates) {
      for (int i = 0; i < 3; ++i) {
        if (tris_[t].nb[i] >= 0) continue;
        const Vec2 a = P(tris_[t].v[(i + 1) % 3]);
        const Vec2 b = P(tris_[t].v[(i + 2) % 3]);
        const Vec2 c = P(tris_[t].v[i]);
        if (dot(a - c, b - c) < -1e-12 * dot(b - a, b - a)) {
          split_segment(t, i);
          any = true;
          break;
        }
      }
    }
    return any;
  }

  void refine_quality() {
    max_segment_ = 0.0;
    for (const auto& t : tris_) {
      for (int i = 0; i < 3; ++i) {
        if (t.nb[i] < 0) max_segment_ = std::max(max_segment_, distance(P(t.v[(i + 1) % 3]), P(t.v[(i + 2) % 3])));
      }
    }
    std::vector<int> all(tris_.size());
    for (std::size_t t = 0; t < all.size(); ++t) all[t] = static_cast<int>(t);
    // Segments first, as in Ruppert's algorithm.
    for (int guard = 0; guard < 64; ++guard) {
      touched_.clear();
      if (!split_encroached(all)) break;
      all.resize(tris_.size());
      for (std::size_t t = 0; t < all.size(); ++t) all[t] = static_cast<int>(t);
    }
    std::vector<int> queue;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      if (is_bad(t)) queue.push_back(t);
    }
    const std::size_t cap = 50 * tris_.size() + 100000;
    std::size_t steps = 0;
    while (!queue.empty()) {
      if (++steps > cap) fail(ErrorKind::MeshTooFine, "quality refinement did not terminate");
      const int t = queue.back();
      queue.pop_back();
      if (!is_bad(t)) continue;
      const auto& v = tris_[t].v;
      const int fc = filled_corner(t);
      const Vec2 cc = fc >= 0 ? corner_bisector_point(t, fc) : circumcenter(P(v[0]), P(v[1]), P(v[2]));
      touched_.clear();
      auto [st, si] = encroached_segment(cc);
      if (st >= 0) {
        split_segment(st, si);
        queue.push_back(t);
      } else {
        const Location loc = locate(cc, t);
        if (loc.where == Where::Outside) {
          split_segment(loc.tri, loc.edge);
          queue.push_back(t);
        } else if (loc.where == Where::OnEdge) {
          if (tris_[loc.tri].nb[loc.edge] < 0) {
            split_segment(loc.tri, loc.edge);
          } else {
            insert_on_edge(loc.tri, loc.edge, cc);
          }
        } else {
          insert_in_triangle(loc.tri, cc);
        }
      }
      // New vertices can encroach segments; fix those before continuing.
      std::vector<int> changed = touched_;
      std::vector<int> cand = touched_;
      for (int guard = 0; guard < 64; ++guard) {
        touched_.clear();
        if (!split_encroached(cand)) break;
        cand = touched_;
        changed.insert(changed.end(), touched_.begin(), touched_.end());
      }
      std::sort(changed.begin(), changed.end());
      changed.erase(std::unique(changed.begin(), changed.end()), changed.end());
      for (int s : changed) {
        if (is_bad(s)) queue.push_back(s);
      }
    }
  }

  TriMesh finish() const {
    TriMesh m;
    m.domain = domain_;
    m.nodes = pts_;
    m.target_h = h_;
    m.triangles.reserve(tris_.size());
    for (const auto& t : tris_) {
      m.triangles.push_back(t.v);
      for (int i = 0; i < 3; ++i) {
        if (t.nb[i] >= 0) continue;
        const int a = t.v[(i + 1) % 3];
        const int b = t.v[(i + 2) % 3];
        m.boundary_edges.push_back({a, b, t.facet[i], distance(P(a), P(b))});
      }
    }
    return m;
  }
};

}  // namespace detail

/// Conforming triangulation of p with edges of length about target_h.
/// Requires 0 < target_h < inradius(p).
inline TriMesh triangulate(const Polygon& p, double target_h, const MeshOptions& opts = {}) {
  const double r = inscribed_disk(p).first;
  if (!(target_h > 0.0) || !(target_h < r)) {
    fail(ErrorKind::Precondition, "target_h must lie in (0, inradius)");
  }
  const double estimate = p.area() / (0.4330127 * target_h * target_h) + 4.0 * p.perimeter() / target_h;
  if (estimate > static_cast<double>(opts.max_nodes)) {
    fail(ErrorKind::MeshTooFine, "estimated node count exceeds cap");
  }
  detail::CdtBuilder builder(p, target_h, opts);
  return builder.build();
}

/// Uniform red refinement: each triangle is split into four similar ones.
inline TriMesh refine(const TriMesh& m, std::size_t max_nodes = 2'000'000) {
  const std::size_t estimate = m.nodes.size() + 3 * m.triangles.size() / 2 + m.boundary_edges.size();
  if (estimate > max_nodes) fail(ErrorKind::MeshTooFine, "refinement would exceed node cap");
  TriMesh out;
  out.domain = m.domain;
  out.nodes = m.nodes;
  out.target_h = 0.5 * m.target_h;
  std::unordered_map<std::uint64_t, int> mid;
  mid.reserve(3 * m.triangles.size());
  auto midpoint = [&](int a, int b) {
    const auto lo = static_cast<std::uint64_t>(std::min(a, b));
    const auto hi = static_cast<std::uint64_t>(std::max(a, b));
    const std::uint64_t key = (lo << 32) | hi;
    auto it = mid.find(key);
    if (it != mid.end()) return it->second;
    out.nodes.push_back(0.5 * (m.nodes[a] + m.nodes[b]));
    const int id = static_cast<int>(out.nodes.size()) - 1;
    mid.emplace(key, id);
    return id;
  };
  out.triangles.reserve(4 * m.triangles.size());
  for (const auto& t : m.triangles) {
    const int ab = midpoint(t[0], t[1]);
    const int bc = midpoint(t[1], t[2]);
    const int ca = midpoint(t[2], t[0]);
    out.triangles.push_back({t[0], ab, ca});
    out.triangles.push_back({ab, t[1], bc});
    out.triangles.push_back({ca, bc, t[2]});
    out.triangles.push_back({ab, bc, ca});
  }
  for (const auto& e : m.boundary_edges) {
    const int q = midpoint(e.a, e.b);
    out.boundary_edges.push_back({e.a, q, e.facet, distance(out.nodes[e.a], out.nodes[q])});
    out.boundary_edges.push_back({q, e.b, e.facet, distance(out.nodes[q], out.nodes[e.b])});
  }
  return out;
}

/// Moves the nodes of m onto `target`, which must have the same number of
/// vertices and the same facet ids as m.domain. Each node keeps its
/// barycentric coordinates in the fan triangle (center, v_k, v_k+1) of the
/// old domain; boundary nodes keep their arc parameter on their facet.
/// Throws InvalidInput if the structure differs or a triangle inverts.
inline TriMesh deform_mesh(const TriMesh& m, const Polygon& target) {
  const Polygon& src = m.domain;
  const std::size_t n = src.size();
  if (target.size() != n || target.facet_ids() != src.facet_ids()) {
    fail(ErrorKind::InvalidInput, "deformation needs matching facet structure");
  }
  auto vertex_mean = [](const Polygon& p) {
    Vec2 c;
    for (const auto& v : p.vertices()) c += v;
    return c / static_cast<double>(p.size());
  };
  const Vec2 c0 = vertex_mean(src);
  const Vec2 c1 = vertex_mean(target);
  TriMesh out;
  out.domain = target;
  out.triangles = m.triangles;
  out.boundary_edges = m.boundary_edges;
  out.target_h = m.target_h;
  out.nodes.resize(m.nodes.size());
  std::vector<char> placed(m.nodes.size(), 0);
  for (const auto& e : m.boundary_edges) {
    const auto k = static_cast<std::size_t>(e.facet);
    const Vec2& a0 = src.vertex(k);
    const Vec2& b0 = src.vertex((k + 1) % n);
    const Vec2& a1 = target.vertex(k);
    const Vec2& b1 = target.vertex((k + 1) % n);
    for (int v : {e.a, e.b}) {
      if (placed[v]) continue;
      const double w = std::clamp(dot(m.nodes[v] - a0, b0 - a0) / dot(b0 - a0, b0 - a0), 0.0, 1.0);
      out.nodes[v] = a1 * (1.0 - w) + b1 * w;
      placed[v] = 1;
    }
  }
  for (std::size_t v = 0; v < m.nodes.size(); ++v) {
    if (placed[v]) continue;
    const Vec2 p = m.nodes[v];
    std::size_t sector = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (detail::orient(c0, src.vertex(k), p) >= 0.0 && detail::orient(c0, src.vertex((k + 1) % n), p) < 0.0) {
        sector = k;
        break;
      }
    }
    const Vec2& a0 = src.vertex(sector);
    const Vec2& b0 = src.vertex((sector + 1) % n);
    const double area = detail::orient(c0, a0, b0);
    const double wa = detail::orient(c0, p, b0) / area;
    const double wb = detail::orient(c0, a0, p) / area;
    out.nodes[v] = c1 * (1.0 - wa - wb) + target.vertex(sector) * wa + target.vertex((sector + 1) % n) * wb;
  }
  for (auto& e : out.boundary_edges) e.length = distance(out.nodes[e.a], out.nodes[e.b]);
  for (std::size_t t = 0; t < out.triangles.size(); ++t) {
    if (!(out.triangle_area(t) > 0.0)) fail(ErrorKind::InvalidInput, "deformation inverts a triangle");
  }
  return out;
}

struct MeshCheck {
  bool conforming = true;
  bool oriented = true;
  bool facets_partition = true;
  double min_angle_deg = 180.0;
  double max_edge = 0.0;
  double max_boundary_edge = 0.0;
  double area_defect = 0.0;  // |sum of triangle areas - polygon area| / polygon area
  double min_corner_angle_deg = 180.0;  // sharpest interior angle of the polygon itself
  std::string message;

  /// The angle bound is capped by the sharpest polygon corner, which no
  /// triangulation can beat.
  bool ok(double angle_bound_deg = 20.0) const {
    const double bound = std::min(angle_bound_deg, min_corner_angle_deg - 1e-9);
    return conforming && oriented && facets_partition && min_angle_deg >= bound;
  }
};

/// Conformity, orientation, facet partition and angle statistics.
inline MeshCheck check_mesh(const TriMesh& m) {
  MeshCheck r;
  std::map<std::pair<int, int>, int> directed;
  double area = 0.0;
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    const double a = m.triangle_area(t);
    area += a;
    if (!(a > 0.0)) {
      r.oriented = false;
      r.message = "non-positive triangle area";
    }
    const Vec2 p0 = m.nodes[tri[0]], p1 = m.nodes[tri[1]], p2 = m.nodes[tri[2]];
    r.min_angle_deg = std::min(r.min_angle_deg, detail::min_angle(p0, p1, p2) * 180.0 / std::numbers::pi);
    r.max_edge = std::max({r.max_edge, distance(p0, p1), distance(p1, p2), distance(p2, p0)});
    for (int i = 0; i < 3; ++i) {
      if (++directed[{tri[i], tri[(i + 1) % 3]}] > 1) {
        r.conforming = false;
        r.message = "edge used twice with the same orientation";
      }
    }
  }
  const double parea = m.domain.area();
  r.area_defect = std::abs(area - parea) / parea;

  std::map<std::pair<int, int>, int> boundary;
  for (const auto& e : m.boundary_edges) boundary[{e.a, e.b}] = e.facet;
  for (const auto& [edge, count] : directed) {
    const bool has_twin = directed.count({edge.second, edge.first}) > 0;
    const bool is_boundary = boundary.count(edge) > 0;
    if (has_twin == is_boundary) {
      r.conforming = false;
      r.message = "edge multiplicity does not match boundary classification";
    }
  }
  if (boundary.size() != m.boundary_edges.size()) r.conforming = false;

  const std::size_t nf = m.domain.size();
  for (std::size_t k = 0; k < nf; ++k) {
    const Vec2& prev = m.domain.vertex((k + nf - 1) % nf);
    const Vec2& cur = m.domain.vertex(k);
    const Vec2& next = m.domain.vertex((k + 1) % nf);
    const double c = dot(prev - cur, next - cur) / (distance(prev, cur) * distance(next, cur));
    r.min_corner_angle_deg = std::min(r.min_corner_angle_deg, std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / std::numbers::pi);
  }
  std::vector<double> per_facet(nf, 0.0);
  for (const auto& e : m.boundary_edges) {
    if (e.facet < 0 || static_cast<std::size_t>(e.facet) >= nf) {
      r.facets_partition = false;
      r.message = "boundary edge without facet";
      continue;
    }
    per_facet[e.facet] += e.length;
    r.max_boundary_edge = std::max(r.max_boundary_edge, e.length);
    const Vec2& n = m.domain.facet_normals()[e.facet].vec();
    const double h = m.domain.facet_support(e.facet);
    const double scale = std::max(1.0, std::abs(h));
    if (std::abs(dot(n, m.nodes[e.a]) - h) > 1e-9 * scale || std::abs(dot(n, m.nodes[e.b]) - h) > 1e-9 * scale) {
      r.facets_partition = false;
      r.message = "boundary edge off its facet";
    }
  }
  for (std::size_t k = 0; k < nf; ++k) {
    if (std::abs(per_facet[k] - m.domain.facet_lengths()[k]) > 1e-9 * std::max(1.0, m.domain.facet_lengths()[k])) {
      r.facets_partition = false;
      r.message = "facet lengths not partitioned by boundary edges";
    }
  }
  return r;
}

/// Bucket grid over triangle bounding boxes for point queries.
class TriangleLocator {
 public:
  explicit TriangleLocator(const TriMesh& m) : mesh_(&m) {
    lo_ = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 hi = -lo_;
    for (const auto& p : m.nodes) {
      lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    const double cells = std::max(1.0, std::sqrt(static_cast<double>(m.triangles.size()) / 2.0));
    nx_ = ny_ = static_cast<int>(cells);
    cell_ = {std::max((hi.x - lo_.x) / nx_, 1e-300), std::max((hi.y - lo_.y) / ny_, 1e-300)};
    buckets_.assign(static_cast<std::size_t>(nx_ * ny_), {});
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
      Vec2 a{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
      Vec2 b = -a;
      for (int v : m.triangles[t]) {
        a = {std::min(a.x, m.nodes[v].x), std::min(a.y, m.nodes[v].y)};
        b = {std::max(b.x, m.nodes[v].x), std::max(b.y, m.nodes[v].y)};
      }
      const auto [i0, j0] = cell_of(a);
      const auto [i1, j1] = cell_of(b);
      for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) buckets_[static_cast<std::size_t>(j * nx_ + i)].push_back(static_cast<int>(t));
      }
    }
  }

  /// Index of a triangle containing p (closed), or -1.
  int find(const Vec2& p) const {
    const auto [i, j] = cell_of(p);
    const double tol = -1e-12 * (cell_.x * cell_.x + cell_.y * cell_.y);
    for (int t : buckets_[static_cast<std::size_t>(j * nx_ + i)]) {
      const auto& tri = mesh_->triangles[t];
      const Vec2& a = mesh_->nodes[tri[0]];
      const Vec2& b = mesh_->nodes[tri[1]];
      const Vec2& c = mesh_->nodes[tri[2]];
      if (detail::orient(a, b, p) >= tol && detail::orient(b, c, p) >= tol && detail::orient(c, a, p) >= tol) return t;
    }
    return -1;
  }

  /// Barycentric coordinates of p in triangle t.
  std::array<double, 3> barycentric(int t, const Vec2& p) const {
    const auto& tri = mesh_->triangles[t];
    const Vec2& a = mesh_->nodes[tri[0]];
    const Vec2& b = mesh_->nodes[tri[1]];
    const Vec2& c = mesh_->nodes[tri[2]];
    const double area = detail::orient(a, b, c);
    return {detail::orient(b, c, p) / area, detail::orient(c, a, p) / area, detail::orient(a, b, p) / area};
  }

 private:
  std::pair<int, int> cell_of(const Vec2& p) const {
    const int i = std::clamp(static_cast<int>((p.x - lo_.x) / cell_.x), 0, nx_ - 1);
    const int j = std::clamp(static_cast<int>((p.y - lo_.y) / cell_.y), 0, ny_ - 1);
    return {i, j};
  }

  const TriMesh* mesh_;
  Vec2 lo_;
  Vec2 cell_;
  int nx_ = 1;
  int ny_ = 1;
  std::vector<std::vector<int>> buckets_;
};

}  // namespace tmink

#endif  // TMINK_MESH_HPP
