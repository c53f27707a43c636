#ifndef TMINK_VERIFY_HPP
#define TMINK_VERIFY_HPP

// Batch property checks on random polygon families: Brunn-Minkowski
// concavity of tau^(1/4), continuity of tau_1 and the scaling laws.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tmink/boundary_measure.hpp"
#include "tmink/error.hpp"
#include "tmink/geometry.hpp"
#include "tmink/torsion_fem.hpp"

namespace tmink {

struct TrialRecord {
  std::string label;
  double value = 0.0;
  double margin = 0.0;  // negative means the trial failed
};

/// failures <= trials; pass iff failures == 0. worst_margin is the smallest
/// per-trial margin (negative on failure).
struct CheckReport {
  std::string name;
  int trials = 0;
  int failures = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::vector<TrialRecord> details;

  bool pass() const { return failures == 0; }

  void add(std::string label, double value, double margin) {
    ++trials;
    if (margin < 0.0) ++failures;
    worst_margin = std::min(worst_margin, margin);
    details.push_back({std::move(label), value, margin});
  }

  void merge(const CheckReport& other) {
    for (const auto& d : other.details) add(d.label, d.value, d.margin);
  }
};

/// Smallest interior angle, radians.
inline double min_interior_angle(const Polygon& p) {
  double best = std::numbers::pi;
  const std::size_t n = p.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 a = p.vertex((k + n - 1) % n) - p.vertex(k);
    const Vec2 b = p.vertex((k + 1) % n) - p.vertex(k);
    best = std::min(best, std::acos(std::clamp(dot(a, b) / (norm(a) * norm(b)), -1.0, 1.0)));
  }
  return best;
}

struct RandomPolygonOptions {
  int min_facets = 3;
  int max_facets = 10;
  double support_jitter = 0.3;   // h_i uniform in [1 - j, 1 + j]
  double max_aspect = 4.0;       // circumradius / inradius
  double min_corner_deg = 25.0;
};

/// Random convex polygon from sampled normals and support numbers around 1.
/// Bodies that lose a facet, are too elongated or have too sharp a corner
/// are rejected and redrawn.
inline Polygon random_polygon(std::mt19937_64& rng, const RandomPolygonOptions& opts = {}) {
  std::uniform_int_distribution<int> count(opts.min_facets, opts.max_facets);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const int n = count(rng);
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (auto& a : angles) a = 2.0 * std::numbers::pi * unit(rng);
    std::sort(angles.begin(), angles.end());
    std::vector<Direction> normals;
    std::vector<double> h;
    for (double a : angles) {
      normals.push_back(Direction::from_angle(a));
      h.push_back(1.0 + opts.support_jitter * (2.0 * unit(rng) - 1.0));
    }
    if (!detail::positively_spans(normals)) continue;
    try {
      const Polygon p = build_polytope(SupportSpec(normals, h));
      if (static_cast<int>(p.size()) != n) continue;
      const PolygonMetrics m = metrics(p);
      if (m.circumradius > opts.max_aspect * m.inradius) continue;
      if (min_interior_angle(p) < opts.min_corner_deg * std::numbers::pi / 180.0) continue;
      return p;
    } catch (const Error&) {
      continue;
    }
  }
  fail(ErrorKind::InvalidInput, "random polygon constraints could not be met");
}

/// Seeded family of `count` polygons.
inline std::vector<Polygon> polygon_corpus(std::size_t count, std::uint64_t seed,
                                           const RandomPolygonOptions& opts = {}) {
  std::mt19937_64 rng(seed);
  std::vector<Polygon> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_polygon(rng, opts));
  return out;
}

/// (1 - t) p0 + t p1.
inline Polygon minkowski_combination(const Polygon& p0, const Polygon& p1, double t) {
  return minkowski_sum(scale(p0, 1.0 - t), scale(p1, t));
}

struct BrunnMinkowskiOptions {
  double slack = 0.005;           // allowed relative violation of the inequality
  bool expect_equality = false;   // p1 is a translate/dilate of p0
  double equality_tol = 0.01;
};

/// Concavity of tau^(1/4) along the Minkowski segment between p0 and p1,
/// every body meshed at the same absolute size. The margin of a trial is
/// relative: (lhs - rhs) / rhs + slack, or for homothetic pairs
/// equality_tol - |lhs - rhs| / rhs.
inline CheckReport brunn_minkowski_check(const Polygon& p0, const Polygon& p1, std::span<const double> t_grid,
                                         double mesh_h, const BrunnMinkowskiOptions& opts = {}) {
  CheckReport r;
  r.name = opts.expect_equality ? "brunn_minkowski_equality" : "brunn_minkowski";
  SolverOptions so;
  so.target_h = mesh_h;
  const double f0 = std::pow(solve_torsion(p0, so).tau_energy, 0.25);
  const double f1 = std::pow(solve_torsion(p1, so).tau_energy, 0.25);
  for (double t : t_grid) {
    if (!(t > 0.0 && t < 1.0)) fail(ErrorKind::InvalidInput, "t must lie in (0, 1)");
    const double lhs = std::pow(solve_torsion(minkowski_combination(p0, p1, t), so).tau_energy, 0.25);
    const double rhs = (1.0 - t) * f0 + t * f1;
    const double defect = (lhs - rhs) / rhs;
    const double margin = opts.expect_equality ? opts.equality_tol - std::abs(defect) : defect + opts.slack;
    r.add("t=" + std::to_string(t), defect, margin);
  }
  return r;
}

struct ContinuityOptions {
  double lipschitz_factor = 10.0;  // L = factor * tau_1(p) / inradius(p)
  std::size_t probe_facets = 64;   // the reference body is a regular polygon this fine
};

/// Random support-number perturbations of p; each trial checks
///   |tau_1(p', D) - tau_1(p, D)| <= L * d_H(p, p')
/// with D the polygonal unit disk. The margin is 1 - ratio. The budget L is
/// an empirical modulus, not a proven constant.
inline CheckReport continuity_check(const Polygon& p, double perturbation_scale, int trials, double mesh_h,
                                    std::uint64_t seed, const ContinuityOptions& opts = {}) {
  const PolygonMetrics m = metrics(p);
  if (!(perturbation_scale >= 0.0 && perturbation_scale < 0.1 * m.inradius)) {
    fail(ErrorKind::InvalidInput, "perturbation scale must lie in [0, 0.1 inradius)");
  }
  CheckReport r;
  r.name = "continuity";
  const Polygon disk = regular_polygon(opts.probe_facets, 1.0);
  const double tau1 = mixed_torsion(measure_body(p, mesh_h).measure, disk);
  const double lipschitz = opts.lipschitz_factor * tau1 / m.inradius;
  const SupportSpec base = support_spec_of(p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-perturbation_scale, perturbation_scale);
  for (int k = 0; k < trials; ++k) {
    std::vector<double> h = base.values();
    for (double& v : h) v += noise(rng);
    const Polygon q = build_polytope(base.with_values(h));
    const double d = hausdorff_distance(p, q);
    const double change = std::abs(mixed_torsion(measure_body(q, mesh_h).measure, disk) - tau1);
    const double ratio = d > 0.0 ? change / (lipschitz * d) : (change > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    r.add("trial " + std::to_string(k), change, 1.0 - ratio);
  }
  return r;
}

/// tau(s p) / tau(p) = s^4 and tau_1(s p, q) / tau_1(p, q) = s^3, all bodies
/// meshed at the same absolute size. Margin: tol - relative error.
inline CheckReport homogeneity_check(const Polygon& p, std::span<const double> scales, double mesh_h,
                                     const Polygon& q, double tol = 0.01) {
  CheckReport r;
  r.name = "homogeneity";
  const MeasuredBody base = measure_body(p, mesh_h);
  const double tau = base.field.tau_energy;
  const double tau1 = mixed_torsion(base.measure, q);
  for (double s : scales) {
    if (!(s > 0.0)) fail(ErrorKind::NegativeScale, "scale factors must be positive");
    const MeasuredBody b = measure_body(scale(p, s), mesh_h);
    const double e4 = std::abs(b.field.tau_energy / tau / std::pow(s, 4) - 1.0);
    const double e3 = std::abs(mixed_torsion(b.measure, q) / tau1 / std::pow(s, 3) - 1.0);
    r.add("tau s=" + std::to_string(s), e4, tol - e4);
    r.add("tau1 s=" + std::to_string(s), e3, tol - e3);
  }
  return r;
}

inline CheckReport homogeneity_check(const Polygon& p, std::span<const double> scales, double mesh_h) {
  return homogeneity_check(p, scales, mesh_h, regular_polygon(64, 1.0));
}

struct CorpusOptions {
  std::size_t corpus_size = 50;
  std::size_t bm_pairs = 100;
  double relative_mesh_h = 0.02;  // times circumradius
  std::uint64_t seed = 42;
};

/// The three checks over a seeded corpus. Meshes are 0.02 times the
/// circumradius of the body (or the smaller body of a pair).
inline std::vector<CheckReport> run_corpus_checks(const CorpusOptions& opts = {}) {
  const auto corpus = polygon_corpus(opts.corpus_size, opts.seed);
  std::mt19937_64 rng(opts.seed + 1);
  CheckReport bm;
  bm.name = "brunn_minkowski";
  const double t_grid[] = {0.25, 0.5, 0.75};
  for (std::size_t k = 0; k < opts.bm_pairs; ++k) {
    const Polygon p0 = random_polygon(rng);
    const Polygon p1 = random_polygon(rng);
    const double h = opts.relative_mesh_h * std::min(metrics(p0).circumradius, metrics(p1).circumradius);
    bm.merge(brunn_minkowski_check(p0, p1, t_grid, h));
  }
  CheckReport cont;
  cont.name = "continuity";
  CheckReport hom;
  hom.name = "homogeneity";
  const double scales[] = {0.5, 2.0};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const PolygonMetrics m = metrics(corpus[i]);
    const double h = opts.relative_mesh_h * m.circumradius;
    cont.merge(continuity_check(corpus[i], 0.01 * m.inradius, 2, h, opts.seed + i));
    hom.merge(homogeneity_check(corpus[i], scales, h));
  }
  return {bm, cont, hom};
}

}  // namespace tmink

#endif  // TMINK_VERIFY_HPP
