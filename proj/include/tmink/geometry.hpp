#ifndef TMINK_GEOMETRY_HPP
#define TMINK_GEOMETRY_HPP

// Convex-polygon calculus driven by support numbers: halfplane intersection,
// Minkowski sums, dilations and the metric quantities used as diagnostics.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tmink/error.hpp"

namespace tmink {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

/// Unit vector on the circle. Construction normalizes; the stored vector
/// has x^2 + y^2 = 1 to rounding.
class Direction {
 public:
  Direction() = default;
  Direction(double x, double y) {
    const double r = std::hypot(x, y);
    if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorKind::InvalidInput, "direction must be a nonzero finite vector");
    v_ = {x / r, y / r};
  }
  explicit Direction(const Vec2& v) : Direction(v.x, v.y) {}

  static Direction from_angle(double radians) { return Direction(std::cos(radians), std::sin(radians)); }
  static Direction from_degrees(double degrees) { return from_angle(degrees * std::numbers::pi / 180.0); }

  double x() const { return v_.x; }
  double y() const { return v_.y; }
  const Vec2& vec() const { return v_; }
  operator const Vec2&() const { return v_; }  // NOLINT(google-explicit-constructor)

  /// Angle in [0, 2pi).
  double angle() const {
    double a = std::atan2(v_.y, v_.x);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    if (a >= 2.0 * std::numbers::pi) a = 0.0;
    return a;
  }

 private:
  Vec2 v_{1.0, 0.0};
};

namespace detail {

inline constexpr double kMinAngularGap = 1e-9;
inline constexpr double kCrossTol = 1e-10;

// Cyclic gap from angle a to angle b going counterclockwise, in [0, 2pi).
inline double ccw_gap(double a, double b) {
  double g = b - a;
  while (g < 0.0) g += 2.0 * std::numbers::pi;
  return g;
}

inline bool positively_spans(std::span<const Direction> normals) {
  if (normals.size() < 3) return false;
  std::vector<double> angles;
  angles.reserve(normals.size());
  for (const auto& d : normals) angles.push_back(d.angle());
  std::sort(angles.begin(), angles.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    worst = std::max(worst, ccw_gap(angles[i], angles[(i + 1) % angles.size()]));
  }
  return worst < std::numbers::pi - 1e-12;
}

}  // namespace detail

/// Fixed normals plus one support number per normal; the body it describes
/// is B[h] = { x : <x, X_i> <= h_i for all i }. Normals are kept sorted by
/// angle and the values are permuted along with them.
class SupportSpec {
 public:
  SupportSpec() = default;

  SupportSpec(std::vector<Direction> normals, std::vector<double> values) {
    if (normals.size() != values.size()) {
      fail(ErrorKind::InvalidInput, "support spec needs one value per normal");
    }
    std::vector<std::size_t> order(normals.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return normals[a].angle() < normals[b].angle();
    });
    normals_.reserve(order.size());
    values_.reserve(order.size());
    for (std::size_t i : order) {
      if (!std::isfinite(values[i])) fail(ErrorKind::InvalidInput, "support values must be finite");
      normals_.push_back(normals[i]);
      values_.push_back(values[i]);
    }
    for (std::size_t i = 0; i < normals_.size(); ++i) {
      const double gap = detail::ccw_gap(normals_[i].angle(), normals_[(i + 1) % normals_.size()].angle());
      if (normals_.size() > 1 && (gap < detail::kMinAngularGap || 2.0 * std::numbers::pi - gap < detail::kMinAngularGap)) {
        fail(ErrorKind::InvalidInput, "normals closer than 1e-9 rad are rejected");
      }
    }
    if (!detail::positively_spans(normals_)) {
      fail(ErrorKind::UnboundedBody, "normals do not positively span the plane");
    }
  }

  std::size_t size() const { return normals_.size(); }
  const std::vector<Direction>& normals() const { return normals_; }
  const std::vector<double>& values() const { return values_; }
  const Direction& normal(std::size_t i) const { return normals_[i]; }
  double value(std::size_t i) const { return values_[i]; }

  /// Same normals, new support numbers (must already be in sorted order).
  SupportSpec with_values(std::vector<double> values) const {
    if (values.size() != normals_.size()) fail(ErrorKind::InvalidInput, "value count mismatch");
    SupportSpec out = *this;
    out.values_ = std::move(values);
    return out;
  }

 private:
  std::vector<Direction> normals_;
  std::vector<double> values_;
};

/// Strictly convex counterclockwise polygon. Edge k runs from vertex k to
/// vertex k+1; facet_ids[k] is the index of the generating support normal
/// when the polygon came from build_polytope, otherwise k.
class Polygon {
 public:
  Polygon() = default;

  /// Validates strict convexity and counterclockwise order.
  static Polygon from_vertices(std::vector<Vec2> vertices) {
    std::vector<int> ids(vertices.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    return Polygon(std::move(vertices), std::move(ids));
  }

  Polygon(std::vector<Vec2> vertices, std::vector<int> facet_ids)
      : vertices_(std::move(vertices)), facet_ids_(std::move(facet_ids)) {
    const std::size_t n = vertices_.size();
    if (n < 3) fail(ErrorKind::EmptyInterior, "polygon needs at least 3 vertices");
    if (facet_ids_.size() != n) fail(ErrorKind::InvalidInput, "facet id count mismatch");
    double scale = 0.0;
    for (const auto& v : vertices_) {
      if (!std::isfinite(v.x) || !std::isfinite(v.y)) fail(ErrorKind::InvalidInput, "non-finite vertex");
      scale = std::max({scale, std::abs(v.x), std::abs(v.y)});
    }
    const double tol = detail::kCrossTol * std::max(1.0, scale * scale);
    normals_.reserve(n);
    lengths_.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2 e = vertices_[(k + 1) % n] - vertices_[k];
      const Vec2 f = vertices_[(k + 2) % n] - vertices_[(k + 1) % n];
      if (!(cross(e, f) > tol)) {
        fail(ErrorKind::InvalidInput, "vertex cycle is not strictly convex and counterclockwise");
      }
      const double len = norm(e);
      lengths_.push_back(len);
      normals_.emplace_back(e.y, -e.x);
    }
    if (!(area() > 0.0)) fail(ErrorKind::EmptyInterior, "polygon has zero area");
  }

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  const Vec2& vertex(std::size_t k) const { return vertices_[k]; }
  const std::vector<Direction>& facet_normals() const { return normals_; }
  const std::vector<double>& facet_lengths() const { return lengths_; }
  const std::vector<int>& facet_ids() const { return facet_ids_; }

  double area() const {
    double a = 0.0;
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
      a += cross(vertices_[k], vertices_[(k + 1) % vertices_.size()]);
    }
    return 0.5 * a;
  }

  double perimeter() const {
    double p = 0.0;
    for (double l : lengths_) p += l;
    return p;
  }

  Vec2 centroid() const {
    // Shift by the first vertex to keep the cross products well scaled.
    const Vec2 o = vertices_.front();
    double a = 0.0;
    Vec2 c;
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
      const Vec2 p = vertices_[k] - o;
      const Vec2 q = vertices_[(k + 1) % vertices_.size()] - o;
      const double w = cross(p, q);
      a += w;
      c += (p + q) * w;
    }
    return o + c / (3.0 * a);
  }

  /// Support number of each facet on its own normal.
  double facet_support(std::size_t k) const { return dot(normals_[k].vec(), vertices_[k]); }

  bool contains(const Vec2& p, double tol = 0.0) const {
    for (std::size_t k = 0; k < size(); ++k) {
      if (dot(normals_[k].vec(), p - vertices_[k]) > tol) return false;
    }
    return true;
  }

 private:
  std::vector<Vec2> vertices_;
  std::vector<Direction> normals_;
  std::vector<double> lengths_;
  std::vector<int> facet_ids_;
};

namespace detail {

struct HalfPlane {
  Vec2 normal;
  double offset;
  int id;
};

inline Vec2 intersect(const HalfPlane& a, const HalfPlane& b) {
  const double det = cross(a.normal, b.normal);
  return {(a.offset * b.normal.y - b.offset * a.normal.y) / det,
          (a.normal.x * b.offset - b.normal.x * a.offset) / det};
}

inline bool outside(const HalfPlane& hp, const Vec2& p, double eps) {
  return dot(hp.normal, p) - hp.offset > eps;
}

// Intersection of halfplanes given in increasing normal-angle order whose
// normals positively span the plane. A bounding box that provably contains
// the body is added so every intermediate chain is bounded; box sides never
// survive unless the intersection is empty. Returns the surviving constraints
// in counterclockwise order (vertex k is the intersection of entries k-1 and
// k); an empty result means the feasible set is empty.
inline std::vector<HalfPlane> clip_halfplanes(const std::vector<HalfPlane>& input, double eps) {
  double worst_gap = 0.0;
  double hmax = 0.0;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const Vec2& a = input[i].normal;
    const Vec2& b = input[(i + 1) % input.size()].normal;
    worst_gap = std::max(worst_gap, ccw_gap(std::atan2(a.y, a.x), std::atan2(b.y, b.x)));
    hmax = std::max(hmax, std::abs(input[i].offset));
  }
  const double box = 2.0 * (hmax + 1.0) / std::max(std::cos(0.5 * worst_gap), 1e-12);

  auto angle_of = [](const HalfPlane& hp) {
    double a = std::atan2(hp.normal.y, hp.normal.x);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return a;
  };
  std::vector<HalfPlane> hps = input;
  const Vec2 axes[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  for (const auto& ax : axes) {
    bool clash = false;
    for (const auto& hp : input) {
      if (std::abs(cross(hp.normal, ax)) < 1e-6 && dot(hp.normal, ax) > 0.0) clash = true;
    }
    if (!clash) hps.push_back({ax, box, -1});
  }
  std::stable_sort(hps.begin(), hps.end(), [&](const HalfPlane& a, const HalfPlane& b) { return angle_of(a) < angle_of(b); });

  std::deque<HalfPlane> dq;
  for (const auto& hp : hps) {
    while (dq.size() >= 2 && outside(hp, intersect(dq[dq.size() - 2], dq.back()), eps)) dq.pop_back();
    while (dq.size() >= 2 && outside(hp, intersect(dq[0], dq[1]), eps)) dq.pop_front();
    dq.push_back(hp);
  }
  while (dq.size() >= 3 && outside(dq.front(), intersect(dq[dq.size() - 2], dq.back()), eps)) dq.pop_back();
  while (dq.size() >= 3 && outside(dq.back(), intersect(dq[0], dq[1]), eps)) dq.pop_front();
  if (dq.size() < 3) return {};
  std::vector<HalfPlane> out(dq.begin(), dq.end());
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (out[k].id < 0) return {};
    if (!(cross(out[k].normal, out[(k + 1) % out.size()].normal) > 0.0)) return {};
  }
  // Every vertex must satisfy every constraint; this rejects the orientation
  // flip that an empty intersection produces.
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Vec2 v = intersect(out[(k + out.size() - 1) % out.size()], out[k]);
    for (const auto& hp : input) {
      if (outside(hp, v, 10.0 * eps)) return {};
    }
  }
  return out;
}

inline std::vector<HalfPlane> halfplanes_of(const SupportSpec& spec, double shrink = 0.0) {
  std::vector<HalfPlane> hps;
  hps.reserve(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    hps.push_back({spec.normal(i).vec(), spec.value(i) - shrink, static_cast<int>(i)});
  }
  return hps;
}

inline double value_scale(const SupportSpec& spec) {
  double s = 0.0;
  for (double v : spec.values()) s = std::max(s, std::abs(v));
  return std::max(1.0, s);
}

}  // namespace detail

/// B[h] restricted to the normals of `spec`. Facets whose halfplane does not
/// touch the body (or touches it in a single point) are absent from the
/// result; Polygon::facet_ids() maps each edge back to its normal.
inline Polygon build_polytope(const SupportSpec& spec) {
  if (spec.size() < 3 || !detail::positively_spans(spec.normals())) {
    fail(ErrorKind::UnboundedBody, "normals do not positively span the plane");
  }
  const double scale = detail::value_scale(spec);
  const double eps = detail::kCrossTol * scale;
  const auto kept = detail::clip_halfplanes(detail::halfplanes_of(spec), eps);
  if (kept.empty()) fail(ErrorKind::EmptyInterior, "halfplane intersection is empty");

  std::vector<Vec2> verts;
  std::vector<int> ids;
  const std::size_t m = kept.size();
  for (std::size_t k = 0; k < m; ++k) {
    verts.push_back(detail::intersect(kept[(k + m - 1) % m], kept[k]));
  }
  // Vertex k starts the edge lying on kept[k]. Drop edges that collapsed
  // to a point (a constraint passing exactly through a vertex).
  std::vector<Vec2> clean_v;
  std::vector<int> clean_ids;
  for (std::size_t k = 0; k < m; ++k) {
    const Vec2& a = verts[k];
    const Vec2& b = verts[(k + 1) % m];
    if (distance(a, b) > 1e-12 * scale) {
      clean_v.push_back(a);
      clean_ids.push_back(kept[k].id);
    }
  }
  if (clean_v.size() < 3) fail(ErrorKind::EmptyInterior, "halfplane intersection has no interior");
  double area = 0.0;
  for (std::size_t k = 0; k < clean_v.size(); ++k) area += cross(clean_v[k], clean_v[(k + 1) % clean_v.size()]);
  if (!(0.5 * area > 1e-14 * scale * scale)) fail(ErrorKind::EmptyInterior, "halfplane intersection has zero area");
  try {
    return Polygon(std::move(clean_v), std::move(clean_ids));
  } catch (const Error&) {
    fail(ErrorKind::EmptyInterior, "halfplane intersection is degenerate");
  }
}

/// Support numbers of a polygon on its own facet normals.
inline SupportSpec support_spec_of(const Polygon& p) {
  std::vector<Direction> normals = p.facet_normals();
  std::vector<double> values;
  values.reserve(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) values.push_back(p.facet_support(k));
  return SupportSpec(std::move(normals), std::move(values));
}

inline double support_function(const Polygon& p, const Vec2& d) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices()) best = std::max(best, dot(d, v));
  return best;
}

/// Support numbers of p on an arbitrary normal set.
inline SupportSpec support_on(const Polygon& p, const std::vector<Direction>& normals) {
  std::vector<double> values;
  values.reserve(normals.size());
  for (const auto& d : normals) values.push_back(support_function(p, d.vec()));
  return SupportSpec(normals, std::move(values));
}

inline Polygon translate(const Polygon& p, const Vec2& t) {
  std::vector<Vec2> v = p.vertices();
  for (auto& q : v) q += t;
  return Polygon(std::move(v), p.facet_ids());
}

inline Polygon scale(const Polygon& p, double s) {
  if (s < 0.0 || !std::isfinite(s)) fail(ErrorKind::NegativeScale, "scale factor must be finite and >= 0");
  if (s == 0.0) fail(ErrorKind::EmptyInterior, "scaling by zero collapses the polygon");
  std::vector<Vec2> v = p.vertices();
  for (auto& q : v) q *= s;
  return Polygon(std::move(v), p.facet_ids());
}

/// Minkowski sum by angular merge of the two edge sequences. Parallel edges
/// are fused; a point summand (see minkowski_sum(Polygon, Vec2)) is a
/// translation.
inline Polygon minkowski_sum(const Polygon& p, const Polygon& q) {
  auto lowest = [](const Polygon& poly) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < poly.size(); ++k) {
      const Vec2& a = poly.vertex(k);
      const Vec2& b = poly.vertex(best);
      if (a.y < b.y || (a.y == b.y && a.x < b.x)) best = k;
    }
    return best;
  };
  struct Edge {
    Vec2 vec;
    double angle;
  };
  auto edges_from = [](const Polygon& poly, std::size_t start) {
    std::vector<Edge> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = (start + i) % n;
      const Vec2 e = poly.vertex((k + 1) % n) - poly.vertex(k);
      double a = std::atan2(e.y, e.x);
      if (a < 0.0) a += 2.0 * std::numbers::pi;
      out.push_back({e, a});
    }
    return out;
  };
  const std::size_t ip = lowest(p);
  const std::size_t iq = lowest(q);
  // Starting at the lowest-leftmost vertex, edge angles increase from 0.
  const auto ep = edges_from(p, ip);
  const auto eq = edges_from(q, iq);
  std::vector<Edge> merged;
  merged.reserve(ep.size() + eq.size());
  std::merge(ep.begin(), ep.end(), eq.begin(), eq.end(), std::back_inserter(merged),
             [](const Edge& a, const Edge& b) { return a.angle < b.angle; });

  std::vector<Vec2> verts;
  Vec2 cur = p.vertex(ip) + q.vertex(iq);
  std::vector<Vec2> fused;
  for (const auto& e : merged) {
    if (!fused.empty() && std::abs(cross(fused.back(), e.vec)) <= 1e-12 * norm(fused.back()) * norm(e.vec) &&
        dot(fused.back(), e.vec) > 0.0) {
      fused.back() += e.vec;
    } else {
      fused.push_back(e.vec);
    }
  }
  if (fused.size() > 1 && std::abs(cross(fused.back(), fused.front())) <= 1e-12 * norm(fused.back()) * norm(fused.front()) &&
      dot(fused.back(), fused.front()) > 0.0) {
    const Vec2 last = fused.back();
    fused.pop_back();
    fused.front() += last;
    cur -= last;
  }
  for (const auto& e : fused) {
    verts.push_back(cur);
    cur += e;
  }
  return Polygon::from_vertices(std::move(verts));
}

inline Polygon minkowski_sum(const Polygon& p, const Vec2& point) { return translate(p, point); }

/// Support numbers of p + s q on the union of both normal fans.
inline SupportSpec minkowski_support(const Polygon& p, const Polygon& q, double s) {
  std::vector<Direction> normals = p.facet_normals();
  for (const auto& d : q.facet_normals()) {
    bool dup = false;
    for (const auto& e : normals) {
      if (std::abs(detail::ccw_gap(d.angle(), e.angle())) < 1e-9 ||
          2.0 * std::numbers::pi - detail::ccw_gap(d.angle(), e.angle()) < 1e-9) {
        dup = true;
        break;
      }
    }
    if (!dup) normals.push_back(d);
  }
  std::vector<double> values;
  for (const auto& d : normals) values.push_back(support_function(p, d.vec()) + s * support_function(q, d.vec()));
  return SupportSpec(std::move(normals), std::move(values));
}

struct PolygonMetrics {
  double diameter = 0.0;
  double inradius = 0.0;
  double circumradius = 0.0;
  Vec2 centroid;
  Vec2 incenter;
  double area = 0.0;
};

/// Largest inscribed disk: bisection on the offset t for which the inner
/// parallel body B[h - t] is still nonempty.
inline std::pair<double, Vec2> inscribed_disk(const Polygon& p) {
  const SupportSpec spec = support_spec_of(p);
  const double scale = detail::value_scale(spec);
  double lo = 0.0;
  double hi = 0.0;
  for (double l : p.facet_lengths()) hi = std::max(hi, l);
  Vec2 center = p.centroid();
  for (int it = 0; it < 200 && hi - lo > 1e-13 * scale; ++it) {
    const double mid = 0.5 * (lo + hi);
    const auto kept = detail::clip_halfplanes(detail::halfplanes_of(spec, mid), 1e-13 * scale);
    if (kept.empty()) {
      hi = mid;
    } else {
      lo = mid;
      Vec2 c;
      for (std::size_t k = 0; k < kept.size(); ++k) {
        c += detail::intersect(kept[(k + kept.size() - 1) % kept.size()], kept[k]);
      }
      center = c / static_cast<double>(kept.size());
    }
  }
  return {lo, center};
}

inline PolygonMetrics metrics(const Polygon& p) {
  PolygonMetrics m;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      m.diameter = std::max(m.diameter, distance(p.vertex(i), p.vertex(j)));
    }
  }
  m.area = p.area();
  m.centroid = p.centroid();
  for (const auto& v : p.vertices()) m.circumradius = std::max(m.circumradius, distance(v, m.centroid));
  std::tie(m.inradius, m.incenter) = inscribed_disk(p);
  return m;
}

/// Exact Hausdorff distance of two convex polygons as the sup-norm of the
/// support-function difference. The supremum is attained either on a facet
/// normal of one of the bodies or along a vertex difference v - w, so that
/// finite candidate set suffices.
inline double hausdorff_distance(const Polygon& p, const Polygon& q) {
  double best = 0.0;
  auto probe = [&](const Vec2& d) {
    const double n = norm(d);
    if (!(n > 0.0)) return;
    const Vec2 u = d / n;
    best = std::max(best, std::abs(support_function(p, u) - support_function(q, u)));
  };
  for (const auto& d : p.facet_normals()) probe(d.vec());
  for (const auto& d : q.facet_normals()) probe(d.vec());
  for (const auto& v : p.vertices()) {
    for (const auto& w : q.vertices()) {
      probe(v - w);
      probe(w - v);
    }
  }
  return best;
}

/// Steiner point: vertices weighted by their exterior angle / 2pi.
inline Vec2 steiner_point(const Polygon& p) {
  Vec2 s;
  const std::size_t n = p.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Direction& before = p.facet_normals()[(k + n - 1) % n];
    const Direction& after = p.facet_normals()[k];
    const double ext = detail::ccw_gap(before.angle(), after.angle());
    s += p.vertex(k) * (ext / (2.0 * std::numbers::pi));
  }
  return s;
}

inline Polygon regular_polygon(std::size_t n, double circumradius, double phase = 0.0, Vec2 center = {}) {
  std::vector<Vec2> v;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = phase + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    v.push_back(center + Vec2{circumradius * std::cos(a), circumradius * std::sin(a)});
  }
  return Polygon::from_vertices(std::move(v));
}

inline Polygon axis_box(double x0, double y0, double x1, double y1) {
  return Polygon::from_vertices({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

}  // namespace tmink

#endif  // TMINK_GEOMETRY_HPP
