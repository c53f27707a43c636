#ifndef TMINK_BOUNDARY_MEASURE_HPP
#define TMINK_BOUNDARY_MEASURE_HPP

// Boundary flux recovery and the torsion measure: the weight of normal X_i
// is the integral of |grad u|^2 over the facet with outer normal X_i.

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "tmink/error.hpp"
#include "tmink/geometry.hpp"
#include "tmink/mesh.hpp"
#include "tmink/torsion_fem.hpp"

namespace tmink {

/// |du/dnu| at boundary nodes; index = mesh node id (zero at interior nodes).
struct BoundaryFlux {
  std::vector<double> magnitude;
  std::vector<char> on_boundary;
};

struct SurfaceMeasure {
  std::vector<Direction> normals;
  std::vector<double> weights;

  double total() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }

  /// |sum mu_i X_i|, the discrete first moment.
  double first_moment() const {
    Vec2 m;
    for (std::size_t i = 0; i < weights.size(); ++i) m += normals[i].vec() * weights[i];
    return norm(m);
  }

  double closure_defect() const { return first_moment() / total(); }
};

/// Variationally consistent flux: with boundary hat functions phi_j,
///   int_{dOmega} g phi_j = (K u)_j - (F)_j,
/// the boundary mass matrix being assembled on the closed boundary curve
/// (a corner hat straddles both adjacent facets).
inline BoundaryFlux boundary_flux(const TorsionField& f) {
  const TriMesh& m = f.mesh;
  const std::size_t n = m.nodes.size();
  BoundaryFlux out;
  out.on_boundary = m.boundary_mask();
  out.magnitude.assign(n, 0.0);

  std::vector<int> bidx(n, -1);
  int nb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.on_boundary[i]) bidx[i] = nb++;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nb);
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto e = detail::p1_element(m, t);
    const Vec2 g = detail::element_gradient(e, f.u);
    for (int i = 0; i < 3; ++i) {
      const int b = bidx[e.v[i]];
      if (b < 0) continue;
      rhs[b] += e.area * dot(e.grad[i], g) - 2.0 * e.area / 3.0;
    }
  }
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(4 * m.boundary_edges.size());
  for (const auto& edge : m.boundary_edges) {
    const int a = bidx[edge.a];
    const int b = bidx[edge.b];
    trip.emplace_back(a, a, edge.length / 3.0);
    trip.emplace_back(b, b, edge.length / 3.0);
    trip.emplace_back(a, b, edge.length / 6.0);
    trip.emplace_back(b, a, edge.length / 6.0);
  }
  Eigen::SparseMatrix<double> mass(nb, nb);
  mass.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(mass);
  if (ldlt.info() != Eigen::Success) fail(ErrorKind::FluxSolveFailure, "boundary mass factorization failed");
  const Eigen::VectorXd g = ldlt.solve(rhs);
  if (ldlt.info() != Eigen::Success || !g.allFinite()) fail(ErrorKind::FluxSolveFailure, "boundary flux solve failed");
  for (std::size_t i = 0; i < n; ++i) {
    if (bidx[i] >= 0) out.magnitude[i] = std::abs(g[bidx[i]]);
  }
  return out;
}

namespace detail {

// mu per polygon edge: trapezoidal rule for g^2 on each boundary edge.
inline std::vector<double> facet_weights(const TorsionField& f, const BoundaryFlux& flux) {
  std::vector<double> w(f.mesh.domain.size(), 0.0);
  for (const auto& e : f.mesh.boundary_edges) {
    if (e.facet < 0 || static_cast<std::size_t>(e.facet) >= w.size()) {
      fail(ErrorKind::FacetAttributionMissing, "boundary edge without a polygon facet");
    }
    const double ga = flux.magnitude[e.a];
    const double gb = flux.magnitude[e.b];
    w[e.facet] += 0.5 * (ga * ga + gb * gb) * e.length;
  }
  return w;
}

}  // namespace detail

/// Measure on the polygon's own facet normals, in edge order.
inline SurfaceMeasure torsion_measure(const TorsionField& f) {
  const BoundaryFlux flux = boundary_flux(f);
  return {f.mesh.domain.facet_normals(), detail::facet_weights(f, flux)};
}

/// Measure index-aligned with spec; facets absent from the polygon get 0.
inline SurfaceMeasure torsion_measure(const TorsionField& f, const SupportSpec& spec) {
  const Polygon& dom = f.mesh.domain;
  for (std::size_t k = 0; k < dom.size(); ++k) {
    const int id = dom.facet_ids()[k];
    if (id < 0 || static_cast<std::size_t>(id) >= spec.size() ||
        norm(dom.facet_normals()[k].vec() - spec.normal(static_cast<std::size_t>(id)).vec()) > 1e-9) {
      fail(ErrorKind::FacetAttributionMissing, "mesh domain was not built from this support spec");
    }
  }
  const BoundaryFlux flux = boundary_flux(f);
  const auto per_edge = detail::facet_weights(f, flux);
  SurfaceMeasure mu{spec.normals(), std::vector<double>(spec.size(), 0.0)};
  for (std::size_t k = 0; k < dom.size(); ++k) mu.weights[static_cast<std::size_t>(dom.facet_ids()[k])] += per_edge[k];
  return mu;
}

/// tau_1(Omega, Omega') = sum_i h'(X_i) mu_i for any support evaluator h'.
template <typename SupportFn>
  requires std::invocable<SupportFn, const Direction&>
double mixed_torsion(const SurfaceMeasure& mu, SupportFn&& h_prime) {
  double s = 0.0;
  for (std::size_t i = 0; i < mu.weights.size(); ++i) s += h_prime(mu.normals[i]) * mu.weights[i];
  return s;
}

inline double mixed_torsion(const SurfaceMeasure& mu, const Polygon& other) {
  return mixed_torsion(mu, [&](const Direction& d) { return support_function(other, d.vec()); });
}

/// |tau - (1/4) sum h_i mu_i| / tau with h the support numbers of spec.
inline double representation_residual(const TorsionField& f, const SupportSpec& spec, const SurfaceMeasure& mu) {
  double s = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) s += spec.value(i) * mu.weights[i];
  const double tau = f.tau_energy;
  return std::abs(tau - 0.25 * s) / tau;
}

/// Same, with the support function of the meshed polygon itself.
inline double representation_residual(const TorsionField& f, const SurfaceMeasure& mu) {
  const double s = mixed_torsion(mu, f.mesh.domain);
  return std::abs(f.tau_energy - 0.25 * s) / f.tau_energy;
}

/// Solve + measure on the polygon's own facets at absolute mesh size h.
struct MeasuredBody {
  TorsionField field;
  SurfaceMeasure measure;
};

inline MeasuredBody measure_body(const Polygon& p, double mesh_h, const MeshOptions& mesh_opts = {}) {
  SolverOptions so;
  so.target_h = mesh_h;
  MeasuredBody b{solve_torsion(p, so, mesh_opts), {}};
  b.measure = torsion_measure(b.field);
  return b;
}

struct HadamardSample {
  double s = 0.0;
  double tau = 0.0;
  double quotient = 0.0;  // (tau(Omega + s Omega') - tau(Omega)) / s
  double mismatch = 0.0;  // |quotient - predicted| / |predicted|
};

struct HadamardReport {
  double tau0 = 0.0;
  double predicted = 0.0;  // tau_1(Omega, Omega')
  std::vector<HadamardSample> samples;
  double extrapolated = 0.0;  // linear extrapolation of the two smallest s to s = 0
  double extrapolated_mismatch = 0.0;
};

/// Finite-difference check of the first variation of tau along Minkowski
/// perturbations. All bodies are meshed at the same absolute size.
inline HadamardReport hadamard_fd_check(const Polygon& body, const Polygon& perturbation, std::span<const double> s_values,
                                        double mesh_h) {
  if (s_values.empty()) fail(ErrorKind::InvalidInput, "need at least one s value");
  for (std::size_t k = 0; k < s_values.size(); ++k) {
    if (!(s_values[k] > 0.0) || (k > 0 && !(s_values[k] < s_values[k - 1]))) {
      fail(ErrorKind::InvalidInput, "s values must be positive and decreasing");
    }
  }
  HadamardReport r;
  const MeasuredBody base = measure_body(body, mesh_h);
  r.tau0 = base.field.tau_energy;
  r.predicted = mixed_torsion(base.measure, perturbation);
  SolverOptions so;
  so.target_h = mesh_h;
  for (double s : s_values) {
    const Polygon moved = minkowski_sum(body, scale(perturbation, s));
    HadamardSample smp;
    smp.s = s;
    smp.tau = solve_torsion(moved, so).tau_energy;
    smp.quotient = (smp.tau - r.tau0) / s;
    smp.mismatch = std::abs(smp.quotient - r.predicted) / std::abs(r.predicted);
    r.samples.push_back(smp);
  }
  if (r.samples.size() >= 2) {
    const auto& a = r.samples[r.samples.size() - 2];
    const auto& b = r.samples.back();
    r.extrapolated = (a.s * b.quotient - b.s * a.quotient) / (a.s - b.s);
  } else {
    r.extrapolated = r.samples.back().quotient;
  }
  r.extrapolated_mismatch = std::abs(r.extrapolated - r.predicted) / std::abs(r.predicted);
  return r;
}

inline HadamardReport hadamard_fd_check(const SupportSpec& spec, const SupportSpec& spec_prime,
                                        std::span<const double> s_values, double mesh_h) {
  return hadamard_fd_check(build_polytope(spec), build_polytope(spec_prime), s_values, mesh_h);
}

}  // namespace tmink

#endif  // TMINK_BOUNDARY_MEASURE_HPP
