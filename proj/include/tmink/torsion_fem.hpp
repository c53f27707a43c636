#ifndef TMINK_TORSION_FEM_HPP
#define TMINK_TORSION_FEM_HPP

// P1 finite elements for the torsion problem  -Lap u = 2 in the polygon,
// u = 0 on its boundary, and the torsional rigidity tau = int |grad u|^2.

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "tmink/error.hpp"
#include "tmink/geometry.hpp"
#include "tmink/mesh.hpp"

namespace tmink {

struct SolverOptions {
  double target_h = 0.0;
  double linear_tol = 1e-10;
  int max_cg_iters = 20000;
};

struct TorsionField {
  TriMesh mesh;
  std::vector<double> u;
  double tau_energy = 0.0;
  double tau_mass = 0.0;
  double linear_residual = 0.0;
  int cg_iterations = 0;

  /// |tau_energy - tau_mass| / tau_energy.
  double relative_gap() const { return std::abs(tau_energy - tau_mass) / tau_energy; }
};

namespace detail {

struct P1Element {
  std::array<int, 3> v;
  double area;
  std::array<Vec2, 3> grad;  // gradients of the three hat functions
};

inline P1Element p1_element(const TriMesh& m, std::size_t t) {
  const auto& tri = m.triangles[t];
  const Vec2& a = m.nodes[tri[0]];
  const Vec2& b = m.nodes[tri[1]];
  const Vec2& c = m.nodes[tri[2]];
  const double two_area = cross(b - a, c - a);
  P1Element e{tri, 0.5 * two_area, {}};
  e.grad[0] = Vec2{b.y - c.y, c.x - b.x} / two_area;
  e.grad[1] = Vec2{c.y - a.y, a.x - c.x} / two_area;
  e.grad[2] = Vec2{a.y - b.y, b.x - a.x} / two_area;
  return e;
}

inline Vec2 element_gradient(const P1Element& e, const std::vector<double>& u) {
  return e.grad[0] * u[e.v[0]] + e.grad[1] * u[e.v[1]] + e.grad[2] * u[e.v[2]];
}

}  // namespace detail

/// Solves the Dirichlet problem on m. Boundary rows are eliminated and the
/// interior system is solved by diagonally preconditioned CG, started from
/// `guess` (nodal values on m) when one of matching size is given.
inline TorsionField solve_torsion(const TriMesh& m, const SolverOptions& opts = {},
                                  const std::vector<double>* guess = nullptr) {
  if (!(opts.linear_tol > 0.0 && opts.linear_tol <= 1e-4)) {
    fail(ErrorKind::InvalidInput, "linear_tol must lie in (0, 1e-4]");
  }
  const std::size_t n = m.nodes.size();
  const auto on_boundary = m.boundary_mask();
  std::vector<int> dof(n, -1);
  int ndof = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!on_boundary[i]) dof[i] = ndof++;
  }

  TorsionField field;
  field.mesh = m;
  field.u.assign(n, 0.0);
  if (ndof == 0) fail(ErrorKind::MaximumPrincipleViolation, "mesh has no interior nodes");

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(9 * m.triangles.size());
  Eigen::VectorXd load = Eigen::VectorXd::Zero(ndof);
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto e = detail::p1_element(m, t);
    for (int i = 0; i < 3; ++i) {
      const int di = dof[e.v[i]];
      if (di < 0) continue;
      load[di] += 2.0 * e.area / 3.0;
      for (int j = 0; j < 3; ++j) {
        const int dj = dof[e.v[j]];
        if (dj < 0) continue;
        triplets.emplace_back(di, dj, e.area * dot(e.grad[i], e.grad[j]));
      }
    }
  }
  Eigen::SparseMatrix<double> stiffness(ndof, ndof);
  stiffness.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<double>>
      cg;
  cg.setTolerance(opts.linear_tol);
  cg.setMaxIterations(opts.max_cg_iters);
  cg.compute(stiffness);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(ndof);
  if (guess != nullptr && guess->size() == n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (dof[i] >= 0) x0[dof[i]] = (*guess)[i];
    }
  }
  const Eigen::VectorXd x = cg.solveWithGuess(load, x0);
  field.cg_iterations = static_cast<int>(cg.iterations());
  field.linear_residual = (stiffness * x - load).norm() / load.norm();
  // The recursively updated CG residual can drift slightly below the true one.
  if (!(field.linear_residual <= opts.linear_tol * 10.0) ||
      (cg.info() != Eigen::Success && !(field.linear_residual <= opts.linear_tol))) {
    fail(ErrorKind::LinearSolveFailure,
         "CG stopped after " + std::to_string(cg.iterations()) + " iterations, residual " +
             std::to_string(field.linear_residual));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dof[i] < 0) continue;
    field.u[i] = x[dof[i]];
    if (!(field.u[i] > 0.0)) {
      fail(ErrorKind::MaximumPrincipleViolation, "non-positive interior value at node " + std::to_string(i));
    }
  }

  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto e = detail::p1_element(m, t);
    const Vec2 g = detail::element_gradient(e, field.u);
    field.tau_energy += dot(g, g) * e.area;
    field.tau_mass += 2.0 * e.area * (field.u[e.v[0]] + field.u[e.v[1]] + field.u[e.v[2]]) / 3.0;
  }
  return field;
}

/// Meshes p at opts.target_h and solves.
inline TorsionField solve_torsion(const Polygon& p, const SolverOptions& opts, const MeshOptions& mesh_opts = {}) {
  return solve_torsion(triangulate(p, opts.target_h, mesh_opts), opts);
}

inline double torsional_rigidity(const TorsionField& f) { return f.tau_energy; }

/// Point queries on a solved field. Keeps a reference to the field.
class FieldProbe {
 public:
  explicit FieldProbe(const TorsionField& f) : field_(&f), locator_(f.mesh) {}

  double value(const Vec2& x) const {
    const int t = locate(x);
    const auto w = locator_.barycentric(t, x);
    const auto& tri = field_->mesh.triangles[t];
    return w[0] * field_->u[tri[0]] + w[1] * field_->u[tri[1]] + w[2] * field_->u[tri[2]];
  }

  Vec2 gradient(const Vec2& x) const {
    const int t = locate(x);
    return detail::element_gradient(detail::p1_element(field_->mesh, static_cast<std::size_t>(t)), field_->u);
  }

 private:
  int locate(const Vec2& x) const {
    const int t = locator_.find(x);
    if (t < 0) fail(ErrorKind::PointOutside, "query point outside the mesh");
    return t;
  }

  const TorsionField* field_;
  TriangleLocator locator_;
};

/// Piecewise-constant gradient of the triangle containing x.
inline Vec2 gradient_at(const TorsionField& f, const Vec2& x) { return FieldProbe(f).gradient(x); }

/// Largest |grad u| over all triangles.
inline double max_gradient_norm(const TorsionField& f) {
  double best = 0.0;
  for (std::size_t t = 0; t < f.mesh.triangles.size(); ++t) {
    best = std::max(best, norm(detail::element_gradient(detail::p1_element(f.mesh, t), f.u)));
  }
  return best;
}

struct ConcavityReport {
  int trials = 0;
  int violations = 0;
  /// min over segments of sqrt(u(mid)) - (sqrt(u(a)) + sqrt(u(b))) / 2
  double worst_margin = 0.0;
  double tolerance = 0.0;
};

inline Vec2 sample_in_polygon(const Polygon& p, std::mt19937_64& rng) {
  Vec2 lo = p.vertex(0);
  Vec2 hi = lo;
  for (const auto& v : p.vertices()) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
  }
  std::uniform_real_distribution<double> ux(lo.x, hi.x);
  std::uniform_real_distribution<double> uy(lo.y, hi.y);
  while (true) {
    const Vec2 q{ux(rng), uy(rng)};
    if (p.contains(q)) return q;
  }
}

/// Midpoint concavity of sqrt(u) on random chords; a violation is a margin
/// below -0.02 * max sqrt(u).
inline ConcavityReport check_sqrt_concavity(const TorsionField& f, int trials, std::uint64_t seed) {
  FieldProbe probe(f);
  std::mt19937_64 rng(seed);
  double umax = 0.0;
  for (double v : f.u) umax = std::max(umax, v);
  ConcavityReport r;
  r.tolerance = 0.02 * std::sqrt(umax);
  r.worst_margin = std::numeric_limits<double>::infinity();
  auto root = [&](const Vec2& x) { return std::sqrt(std::max(0.0, probe.value(x))); };
  for (int k = 0; k < trials; ++k) {
    const Vec2 a = sample_in_polygon(f.mesh.domain, rng);
    const Vec2 b = sample_in_polygon(f.mesh.domain, rng);
    const double margin = root(0.5 * (a + b)) - 0.5 * (root(a) + root(b));
    r.worst_margin = std::min(r.worst_margin, margin);
    if (margin < -r.tolerance) ++r.violations;
    ++r.trials;
  }
  if (trials <= 0) r.worst_margin = 0.0;
  return r;
}

}  // namespace tmink

#endif  // TMINK_TORSION_FEM_HPP
