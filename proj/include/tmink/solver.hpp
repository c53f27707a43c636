#ifndef TMINK_SOLVER_HPP
#define TMINK_SOLVER_HPP

// Discrete Minkowski problem for the torsion measure. For a balanced target
// c on fixed normals X_i we minimise the scale-invariant functional
//
//   J(h) = (sum_i c_i h_i) / tau(B[h])^(1/4),
//
// whose gradient uses d tau / d h_i = mu_i. At a stationary point
// mu = (4 tau / Phi) c, and the dilation by (Phi / (4 tau))^(1/3) turns the
// optimal body into one whose measure is exactly c.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tmink/boundary_measure.hpp"
#include "tmink/error.hpp"
#include "tmink/geometry.hpp"
#include "tmink/mesh.hpp"
#include "tmink/torsion_fem.hpp"

namespace tmink {

/// Minkowski-problem datum: angularly sorted normals and positive weights
/// with vanishing first moment.
class TargetMeasure {
 public:
  TargetMeasure() = default;

  /// Validates positivity, spanning and balance (|sum c X| <= 1e-9 sum c).
  static TargetMeasure checked(std::vector<Direction> normals, std::vector<double> weights) {
    TargetMeasure t = unchecked(std::move(normals), std::move(weights));
    if (t.imbalance() > 1e-9 * t.total()) {
      fail(ErrorKind::UnbalanceableMeasure, "first moment of the target does not vanish");
    }
    return t;
  }

  const std::vector<Direction>& normals() const { return normals_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }

  double total() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

  Vec2 first_moment() const {
    Vec2 m;
    for (std::size_t i = 0; i < size(); ++i) m += normals_[i].vec() * weights_[i];
    return m;
  }

  double imbalance() const { return norm(first_moment()); }

  /// Same normals, weights multiplied by s > 0.
  TargetMeasure scaled(double s) const {
    TargetMeasure t = *this;
    for (double& w : t.weights_) w *= s;
    return t;
  }

 private:
  friend TargetMeasure project_balance(std::vector<double> c_raw, std::vector<Direction> normals);

  static TargetMeasure unchecked(std::vector<Direction> normals, std::vector<double> weights) {
    if (normals.size() != weights.size()) fail(ErrorKind::InvalidInput, "one weight per normal required");
    if (normals.size() < 3 || !detail::positively_spans(normals)) {
      fail(ErrorKind::UnbalanceableMeasure, "normals do not positively span the plane");
    }
    for (double w : weights) {
      if (!(w > 0.0) || !std::isfinite(w)) fail(ErrorKind::InvalidInput, "weights must be positive");
    }
    // Reuse SupportSpec for sorting and the near-duplicate check.
    const SupportSpec sorted(std::move(normals), std::move(weights));
    TargetMeasure t;
    t.normals_ = sorted.normals();
    t.weights_ = sorted.values();
    return t;
  }

  std::vector<Direction> normals_;
  std::vector<double> weights_;
};

/// Least-squares correction of the weights so that sum c_i X_i = 0 exactly.
/// Rejected when any weight would move by more than 5%.
inline TargetMeasure project_balance(std::vector<double> c_raw, std::vector<Direction> normals) {
  TargetMeasure t = TargetMeasure::unchecked(std::move(normals), std::move(c_raw));
  // delta = -A^T (A A^T)^{-1} m with A the 2 x N matrix of normals.
  double axx = 0.0, axy = 0.0, ayy = 0.0;
  for (const auto& d : t.normals_) {
    axx += d.x() * d.x();
    axy += d.x() * d.y();
    ayy += d.y() * d.y();
  }
  const Vec2 m = t.first_moment();
  const double det = axx * ayy - axy * axy;
  if (!(det > 1e-14)) fail(ErrorKind::UnbalanceableMeasure, "normals are degenerate");
  const Vec2 lam{(ayy * m.x - axy * m.y) / det, (axx * m.y - axy * m.x) / det};
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double delta = -dot(t.normals_[i].vec(), lam);
    if (std::abs(delta) > 0.05 * t.weights_[i]) {
      fail(ErrorKind::UnbalanceableMeasure,
           "balancing would change weight " + std::to_string(i) + " by more than 5%");
    }
    t.weights_[i] += delta;
  }
  if (t.imbalance() > 1e-9 * t.total()) fail(ErrorKind::UnbalanceableMeasure, "projection failed to balance");
  return t;
}

struct ObjectiveValue {
  double J = 0.0;
  double phi = 0.0;
  double tau = 0.0;
  double euler_factor = 1.0;  // 4 tau / sum h_i mu_i
  std::vector<double> grad;
  SurfaceMeasure mu;
  Polygon polygon;
  PolygonMetrics metrics;
  TriMesh mesh;
  std::vector<double> u;

  /// Measure scaled to the total mass of the target. At a stationary point
  /// this equals the measure of the dilated body.
  std::vector<double> rescaled_measure(double target_total) const {
    std::vector<double> out(mu.weights.size());
    const double f = target_total / mu.total();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f * mu.weights[i];
    return out;
  }
};

inline double relative_l1(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::abs(a[i] - b[i]);
    den += std::abs(b[i]);
  }
  return num / den;
}

/// J, its gradient and the quantities behind them, meshing B[h] at the
/// absolute size mesh_h. With a reference whose domain has the same facet
/// structure as B[h], its mesh is deformed onto B[h] instead of remeshing,
/// which makes J a smooth function of h, and its solution starts CG.
inline ObjectiveValue objective(const std::vector<double>& h, const TargetMeasure& target, double mesh_h,
                                const ObjectiveValue* reference = nullptr, const MeshOptions& mesh_opts = {}) {
  if (h.size() != target.size()) fail(ErrorKind::InvalidInput, "support vector length mismatch");
  const SupportSpec spec(target.normals(), h);
  ObjectiveValue v;
  v.polygon = build_polytope(spec);
  v.metrics = metrics(v.polygon);
  SolverOptions so;
  so.target_h = mesh_h;
  std::optional<TriMesh> mesh;
  const std::vector<double>* guess = nullptr;
  if (reference != nullptr && reference->mesh.domain.size() == v.polygon.size() &&
      reference->mesh.domain.facet_ids() == v.polygon.facet_ids()) {
    try {
      mesh = deform_mesh(reference->mesh, v.polygon);
      guess = &reference->u;
    } catch (const Error&) {
      mesh.reset();
    }
  }
  if (!mesh) mesh = triangulate(v.polygon, mesh_h, mesh_opts);
  TorsionField field = solve_torsion(*mesh, so, guess);
  v.tau = field.tau_energy;
  v.mu = torsion_measure(field, spec);
  v.mesh = std::move(field.mesh);
  v.u = std::move(field.u);
  for (std::size_t i = 0; i < h.size(); ++i) v.phi += target.weights()[i] * h[i];
  const double q = std::pow(v.tau, -0.25);
  v.J = v.phi * q;
  // The flux measure satisfies sum h_i mu_i = 4 tau only up to the
  // discretization error, while the discrete derivative of tau satisfies it
  // exactly (Euler's identity for the degree-4 homogeneous tau_h). The
  // gradient uses the measure normalised to the identity.
  double hmu = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) hmu += h[i] * v.mu.weights[i];
  v.euler_factor = 4.0 * v.tau / hmu;
  v.grad.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    v.grad[i] = target.weights()[i] * q - 0.25 * v.phi * q / v.tau * v.euler_factor * v.mu.weights[i];
  }
  return v;
}

struct IterateDiagnostics {
  int iter = 0;
  double J = 0.0;
  double residual = 0.0;
  double tau = 0.0;
  double inradius = 0.0;
  double circumradius = 0.0;
  double diameter = 0.0;
  double step = 0.0;
};

struct SolveOptions {
  /// Mesh size relative to the circumradius of the initial body.
  double mesh_h = 0.02;
  double tol = 1e-2;
  int max_iters = 200;
  std::uint64_t seed = 42;
  /// Run on a 2x coarser mesh until the residual is within 2 tol.
  bool continuation = true;
  /// Relative amplitude of the random initial support perturbation; 0 gives h_i = 1.
  double initial_jitter = 0.0;
};

struct SolveReport {
  SupportSpec h_final;
  Polygon polygon;
  SurfaceMeasure mu_final;
  std::vector<double> objective_history;
  std::vector<double> residual_history;
  std::vector<IterateDiagnostics> diagnostics;
  double multiplier_m = 0.0;
  double dilation = 0.0;           // applied: (sum c / sum mu)^(1/3)
  double dilation_from_tau = 0.0;  // (Phi / (4 tau))^(1/3), equal in the continuum
  double final_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string status;
  double bound_inradius = 0.0;      // r0 of the a-priori bounds
  double bound_circumradius = 0.0;  // R0
};

/// NoConvergence carrying the partial state.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, SolveReport partial)
      : Error(ErrorKind::NoConvergence, what), report_(std::move(partial)) {}
  const SolveReport& report() const { return report_; }

 private:
  SolveReport report_;
};

namespace detail {

inline std::vector<double> recentred(const std::vector<double>& h, const TargetMeasure& target, const Polygon& body) {
  const Vec2 s = steiner_point(body);
  std::vector<double> out(h);
  for (std::size_t i = 0; i < h.size(); ++i) out[i] -= dot(s, target.normals()[i].vec());
  return out;
}

}  // namespace detail

/// Descent on J with Armijo backtracking, Steiner recentring and the final
/// homogeneity rescale. Throws NoConvergenceError (with the partial report)
/// when max_iters is exhausted or the line search stalls above tolerance.
inline SolveReport solve_minkowski(const TargetMeasure& target, const SolveOptions& opts = {}) {
  if (target.imbalance() > 1e-9 * target.total()) fail(ErrorKind::UnbalanceableMeasure, "target is not balanced");
  if (!(opts.mesh_h > 0.0 && opts.mesh_h < 0.5) || !(opts.tol > 0.0) || opts.max_iters <= 0) {
    fail(ErrorKind::InvalidInput, "solver options out of range");
  }
  const std::size_t n = target.size();
  std::vector<double> h(n, 1.0);
  if (opts.initial_jitter > 0.0) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> jitter(-opts.initial_jitter, opts.initial_jitter);
    for (double& v : h) v += jitter(rng);
  }

  SolveReport report;
  const Polygon first = build_polytope(SupportSpec(target.normals(), h));
  const PolygonMetrics m0 = metrics(first);
  h = detail::recentred(h, target, first);
  // The scale is pinned by tau = tau0; the a-priori box is generous around
  // the first iterate.
  report.bound_inradius = 0.02 * m0.inradius;
  report.bound_circumradius = 50.0 * m0.circumradius;
  const double fine_h = opts.mesh_h * m0.circumradius;
  double mesh_h = opts.continuation ? 2.0 * fine_h : fine_h;

  std::vector<double> cvec = target.weights();
  ObjectiveValue cur = objective(h, target, mesh_h);
  const double tau0 = cur.tau;
  auto residual_of = [&](const ObjectiveValue& v) { return relative_l1(v.rescaled_measure(target.total()), cvec); };
  double residual = residual_of(cur);

  auto record = [&](int iter, const ObjectiveValue& v, double res, double step) {
    report.objective_history.push_back(v.J);
    report.residual_history.push_back(res);
    report.diagnostics.push_back(
        {iter, v.J, res, v.tau, v.metrics.inradius, v.metrics.circumradius, v.metrics.diameter, step});
  };
  record(0, cur, residual, 0.0);

  double step_guess = 1.0;
  int iter = 0;
  bool converged = false;
  std::string status = "running";
  auto c_mean = std::accumulate(cvec.begin(), cvec.end(), 0.0) / static_cast<double>(n);

  while (true) {
    if (residual <= opts.tol) {
      if (mesh_h > fine_h) {
        mesh_h = fine_h;
        cur = objective(h, target, mesh_h);
        residual = residual_of(cur);
        continue;
      }
      converged = true;
      status = "converged";
      break;
    }
    if (mesh_h > fine_h && residual <= 2.0 * opts.tol) {
      mesh_h = fine_h;
      cur = objective(h, target, mesh_h);
      residual = residual_of(cur);
      continue;
    }
    if (iter >= opts.max_iters) {
      status = "iteration limit reached";
      break;
    }
    ++iter;

    // Direction: -grad J rescaled to length units, i.e. the measure defect
    // relative to the mean weight times the body size.
    const double q = std::pow(cur.tau, -0.25);
    std::vector<double> dir(n);
    double dmax = 0.0;
    double slope = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dir[i] = -cur.grad[i] / (q * c_mean) * cur.metrics.circumradius;
      dmax = std::max(dmax, std::abs(dir[i]));
      slope += cur.grad[i] * dir[i];
    }
    // Keep every support number within half the inradius of its old value.
    const double t_cap = cur.metrics.inradius / (2.0 * dmax);
    double t = std::min(step_guess, t_cap);
    bool accepted = false;
    ObjectiveValue trial;
    std::vector<double> h_trial(n);
    for (int bt = 0; bt < 30; ++bt) {
      for (std::size_t i = 0; i < n; ++i) h_trial[i] = h[i] + t * dir[i];
      try {
        trial = objective(h_trial, target, mesh_h, &cur);
        if (trial.J <= cur.J + 1e-4 * t * slope && trial.J < cur.J) {
          accepted = true;
          break;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::EmptyInterior && e.kind() != ErrorKind::Precondition) throw;
      }
      t *= 0.5;
    }
    if (!accepted) {
      status = "line search stalled";
      break;
    }
    // Pin the scale (tau = tau0) and the translation gauge.
    const double s = std::pow(tau0 / trial.tau, 0.25);
    for (double& v : h_trial) v *= s;
    h = detail::recentred(h_trial, target, scale(trial.polygon, s));
    // J is invariant under the similarity, so carrying the deformed mesh
    // along keeps the recorded J consistent. Remesh once quality degrades.
    const MeshCheck quality = check_mesh(trial.mesh);
    const bool keep = quality.min_angle_deg >= 15.0;
    cur = objective(h, target, mesh_h, keep ? &trial : nullptr);
    residual = residual_of(cur);
    record(iter, cur, residual, t);
    step_guess = std::min(2.0 * t, 4.0);

    if (cur.metrics.inradius < report.bound_inradius || cur.metrics.circumradius > report.bound_circumradius) {
      status = "a-priori bounds violated";
      break;
    }
  }

  // Final dilation so that the measure matches c rather than a multiple.
  // The measure scales with the cube of the dilation; matching total mass
  // removes the quadrature bias that (Phi / 4 tau)^(1/3) would carry.
  const double dil = std::cbrt(target.total() / cur.mu.total());
  std::vector<double> hf(h);
  for (double& v : hf) v *= dil;
  report.h_final = SupportSpec(target.normals(), hf);
  report.polygon = build_polytope(report.h_final);
  report.dilation = dil;
  report.dilation_from_tau = std::cbrt(cur.phi / (4.0 * cur.tau));
  {
    SolverOptions so;
    so.target_h = mesh_h * dil;
    std::optional<TriMesh> mesh;
    try {
      mesh = deform_mesh(cur.mesh, report.polygon);
    } catch (const Error&) {
      mesh = triangulate(report.polygon, so.target_h);
    }
    const TorsionField field = solve_torsion(*mesh, so);
    report.mu_final = torsion_measure(field, report.h_final);
  }
  report.final_residual = relative_l1(report.mu_final.weights, cvec);
  report.multiplier_m = cur.J;
  report.iterations = iter;
  report.converged = converged && report.final_residual <= std::max(opts.tol, residual) * 1.5;
  report.status = status;
  if (!converged) throw NoConvergenceError(status, std::move(report));
  return report;
}

struct GradientCheck {
  std::vector<int> coords;
  std::vector<double> analytic;
  std::vector<double> finite_difference;
  std::vector<double> relative_error;
  double worst = 0.0;
};

/// Central differences of J against the analytic gradient in the given
/// coordinates, with a fixed absolute mesh size for all evaluations.
inline GradientCheck gradient_fd_check(const TargetMeasure& target, const std::vector<double>& h,
                                       const std::vector<int>& coords, double delta, double mesh_h) {
  GradientCheck g;
  const ObjectiveValue base = objective(h, target, mesh_h);
  for (int i : coords) {
    std::vector<double> hp(h), hm(h);
    hp[static_cast<std::size_t>(i)] += delta;
    hm[static_cast<std::size_t>(i)] -= delta;
    const double fd =
        (objective(hp, target, mesh_h, &base).J - objective(hm, target, mesh_h, &base).J) / (2.0 * delta);
    const double an = base.grad[static_cast<std::size_t>(i)];
    g.coords.push_back(i);
    g.analytic.push_back(an);
    g.finite_difference.push_back(fd);
    g.relative_error.push_back(std::abs(an - fd) / std::abs(fd));
    g.worst = std::max(g.worst, g.relative_error.back());
  }
  return g;
}

struct UniquenessReport {
  std::vector<SolveReport> solutions;
  std::vector<double> pairwise_relative;  // Hausdorff / mean circumradius
  double worst = 0.0;
  bool pass = true;
};

/// Solves from randomly perturbed initial support numbers (one run per
/// seed) and compares the Steiner-centred solutions pairwise.
inline UniquenessReport uniqueness_probe(const TargetMeasure& target, const std::vector<std::uint64_t>& seeds,
                                         SolveOptions opts = {}, double jitter = 0.25) {
  UniquenessReport r;
  std::vector<Polygon> centred;
  double mean_r = 0.0;
  for (std::uint64_t seed : seeds) {
    opts.seed = seed;
    opts.initial_jitter = jitter;
    SolveReport s = solve_minkowski(target, opts);
    const Polygon c = translate(s.polygon, -steiner_point(s.polygon));
    mean_r += metrics(c).circumradius;
    centred.push_back(c);
    r.solutions.push_back(std::move(s));
  }
  if (!centred.empty()) mean_r /= static_cast<double>(centred.size());
  for (std::size_t i = 0; i < centred.size(); ++i) {
    for (std::size_t j = i + 1; j < centred.size(); ++j) {
      const double d = hausdorff_distance(centred[i], centred[j]) / mean_r;
      r.pairwise_relative.push_back(d);
      r.worst = std::max(r.worst, d);
    }
  }
  r.pass = r.worst <= 0.03;
  return r;
}

}  // namespace tmink

#endif  // TMINK_SOLVER_HPP
