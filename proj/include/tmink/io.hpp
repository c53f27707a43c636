#ifndef TMINK_IO_HPP
#define TMINK_IO_HPP

// JSON and CSV formats for polygons, meshes, measures, problem specs and
// reports. Parsing enforces the library invariants: malformed documents
// raise ParseError, well-formed documents describing invalid objects raise
// InvariantViolation.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmink/boundary_measure.hpp"
#include "tmink/error.hpp"
#include "tmink/geometry.hpp"
#include "tmink/mesh.hpp"
#include "tmink/solver.hpp"
#include "tmink/torsion_fem.hpp"
#include "tmink/verify.hpp"

namespace tmink::io {

using json = nlohmann::json;

namespace detail {

inline json point(const Vec2& p) { return json::array({p.x, p.y}); }

inline const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::ParseError, where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(ErrorKind::ParseError, where + ": missing field '" + key + "'");
  return *it;
}

inline double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(ErrorKind::ParseError, where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(ErrorKind::ParseError, where + ": not finite");
  return v;
}

inline std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorKind::ParseError, where + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<Vec2> points(const json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorKind::ParseError, where + ": expected an array of [x, y]");
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) fail(ErrorKind::ParseError, w + ": expected [x, y]");
    out.push_back({number(j[i][0], w + "[0]"), number(j[i][1], w + "[1]")});
  }
  return out;
}

// Library errors raised while building an object from a valid document.
template <typename F>
auto as_invariant(const std::string& what, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnbalanceableMeasure || e.kind() == ErrorKind::ParseError) throw;
    fail(ErrorKind::InvariantViolation, what + ": " + e.what());
  }
}

}  // namespace detail

/// Parses text, reporting line and column of syntax errors.
inline json parse_text(const std::string& text, const std::string& source = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorKind::ParseError,
         source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" + e.what() + ")");
  }
}

inline json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidInput, path + ": cannot write file");
  out << text;
}

// ---- polygons -------------------------------------------------------------

inline json to_json(const Polygon& p) {
  json v = json::array();
  for (const auto& x : p.vertices()) v.push_back(detail::point(x));
  return {{"vertices", v}};
}

/// {"vertices":[[x,y],...]}, counterclockwise and strictly convex.
inline Polygon polygon_from_json(const json& j) {
  const auto verts = detail::points(detail::field(j, "vertices", "polygon"), "vertices");
  return detail::as_invariant("polygon", [&] { return Polygon::from_vertices(verts); });
}

// ---- meshes and measures ----------------------------------------------------

inline json to_json(const TriMesh& m) {
  json nodes = json::array(), tris = json::array(), bnd = json::array();
  for (const auto& p : m.nodes) nodes.push_back(detail::point(p));
  for (const auto& t : m.triangles) tris.push_back({t[0], t[1], t[2]});
  for (const auto& e : m.boundary_edges) bnd.push_back({e.a, e.b, e.facet});
  return {{"nodes", nodes}, {"triangles", tris}, {"boundary", bnd}};
}

inline json to_json(const SurfaceMeasure& mu) {
  json n = json::array();
  for (const auto& d : mu.normals) n.push_back(detail::point(d.vec()));
  return {{"normals", n}, {"weights", mu.weights}};
}

inline SurfaceMeasure measure_from_json(const json& j) {
  const auto normals = detail::points(detail::field(j, "normals", "measure"), "normals");
  const auto weights = detail::numbers(detail::field(j, "weights", "measure"), "weights");
  if (normals.size() != weights.size()) fail(ErrorKind::InvariantViolation, "measure: one weight per normal required");
  SurfaceMeasure mu;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (!(norm(normals[i]) > 0.0)) fail(ErrorKind::InvariantViolation, "measure: zero normal");
    if (weights[i] < 0.0) fail(ErrorKind::InvariantViolation, "measure: negative weight");
    mu.normals.emplace_back(normals[i].x, normals[i].y);
  }
  mu.weights = weights;
  return mu;
}

// ---- problem specs ----------------------------------------------------------

struct ProblemSpec {
  TargetMeasure target;
  SolveOptions options;
};

/// {"normals":[[x,y],...] | "angles_deg":[...], "weights":[...],
///  "options":{"mesh_h", "tol", "max_iters", "seed"}}. Weights are balanced
/// by the least-squares projection when off by at most 5% per weight.
inline ProblemSpec problem_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorKind::ParseError, "problem: expected an object");
  std::vector<Direction> normals;
  if (j.contains("normals")) {
    for (const auto& p : detail::points(j["normals"], "normals")) {
      if (!(norm(p) > 0.0)) fail(ErrorKind::InvariantViolation, "normals: zero vector");
      normals.emplace_back(p.x, p.y);
    }
  } else if (j.contains("angles_deg")) {
    for (double a : detail::numbers(j["angles_deg"], "angles_deg")) normals.push_back(Direction::from_degrees(a));
  } else {
    fail(ErrorKind::ParseError, "problem: need 'normals' or 'angles_deg'");
  }
  const auto weights = detail::numbers(detail::field(j, "weights", "problem"), "weights");
  if (weights.size() != normals.size()) fail(ErrorKind::InvariantViolation, "weights: one weight per normal required");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) {
      fail(ErrorKind::InvariantViolation, "weights[" + std::to_string(i) + "] must be > 0");
    }
  }
  if (normals.size() < 3 || !tmink::detail::positively_spans(normals)) {
    fail(ErrorKind::InvariantViolation, "normals do not positively span the plane");
  }
  ProblemSpec spec;
  spec.target = detail::as_invariant("problem", [&] { return project_balance(weights, normals); });
  if (j.contains("options")) {
    const json& o = j["options"];
    if (!o.is_object()) fail(ErrorKind::ParseError, "options: expected an object");
    if (o.contains("mesh_h")) spec.options.mesh_h = detail::number(o["mesh_h"], "options.mesh_h");
    if (o.contains("tol")) spec.options.tol = detail::number(o["tol"], "options.tol");
    if (o.contains("max_iters")) {
      if (!o["max_iters"].is_number_integer()) fail(ErrorKind::ParseError, "options.max_iters: expected an integer");
      spec.options.max_iters = o["max_iters"].get<int>();
    }
    if (o.contains("seed")) {
      if (!o["seed"].is_number_unsigned()) fail(ErrorKind::ParseError, "options.seed: expected a non-negative integer");
      spec.options.seed = o["seed"].get<std::uint64_t>();
    }
  }
  if (!(spec.options.mesh_h > 0.0 && spec.options.mesh_h < 0.5)) {
    fail(ErrorKind::InvariantViolation, "options.mesh_h must lie in (0, 0.5)");
  }
  if (!(spec.options.tol > 0.0)) fail(ErrorKind::InvariantViolation, "options.tol must be > 0");
  if (spec.options.max_iters <= 0) fail(ErrorKind::InvariantViolation, "options.max_iters must be > 0");
  return spec;
}

inline json to_json(const ProblemSpec& spec) {
  json n = json::array();
  for (const auto& d : spec.target.normals()) n.push_back(detail::point(d.vec()));
  return {{"normals", n},
          {"weights", spec.target.weights()},
          {"options",
           {{"mesh_h", spec.options.mesh_h},
            {"tol", spec.options.tol},
            {"max_iters", spec.options.max_iters},
            {"seed", spec.options.seed}}}};
}

// ---- reports ----------------------------------------------------------------

inline json to_json(const SupportSpec& s) {
  json n = json::array();
  for (const auto& d : s.normals()) n.push_back(detail::point(d.vec()));
  return {{"normals", n}, {"values", s.values()}};
}

inline json to_json(const SolveReport& r) {
  json diag = json::array();
  for (const auto& d : r.diagnostics) {
    diag.push_back({{"iter", d.iter},
                    {"J", d.J},
                    {"residual", d.residual},
                    {"tau", d.tau},
                    {"inradius", d.inradius},
                    {"circumradius", d.circumradius},
                    {"diameter", d.diameter},
                    {"step", d.step}});
  }
  json j = {{"converged", r.converged},
            {"status", r.status},
            {"iterations", r.iterations},
            {"multiplier_m", r.multiplier_m},
            {"final_residual", r.final_residual},
            {"dilation", r.dilation},
            {"dilation_from_tau", r.dilation_from_tau},
            {"objective_history", r.objective_history},
            {"residual_history", r.residual_history},
            {"bounds", {{"inradius_min", r.bound_inradius}, {"circumradius_max", r.bound_circumradius}}},
            {"diagnostics", diag}};
  if (r.h_final.size() > 0) {
    j["h_final"] = to_json(r.h_final);
    j["polygon"] = to_json(r.polygon);
    j["mu_final"] = to_json(r.mu_final);
  }
  return j;
}

/// Convergence log: iter,J,residual,tau,inradius,circumradius,step.
inline void write_log_csv(std::ostream& out, const SolveReport& r) {
  out << "iter,J,residual,tau,inradius,circumradius,step\n";
  out << std::setprecision(17);
  for (const auto& d : r.diagnostics) {
    out << d.iter << ',' << d.J << ',' << d.residual << ',' << d.tau << ',' << d.inradius << ',' << d.circumradius
        << ',' << d.step << '\n';
  }
}

inline json to_json(const TorsionField& f) {
  return {{"tau_energy", f.tau_energy},
          {"tau_mass", f.tau_mass},
          {"relative_gap", f.relative_gap()},
          {"nodes", f.mesh.nodes.size()},
          {"triangles", f.mesh.triangles.size()},
          {"target_h", f.mesh.target_h},
          {"cg_iterations", f.cg_iterations},
          {"linear_residual", f.linear_residual},
          {"max_gradient", max_gradient_norm(f)}};
}

inline json to_json(const HadamardReport& r) {
  json s = json::array();
  for (const auto& x : r.samples) {
    s.push_back({{"s", x.s}, {"tau", x.tau}, {"quotient", x.quotient}, {"mismatch", x.mismatch}});
  }
  return {{"tau0", r.tau0},
          {"predicted", r.predicted},
          {"samples", s},
          {"extrapolated", r.extrapolated},
          {"extrapolated_mismatch", r.extrapolated_mismatch}};
}

inline json to_json(const CheckReport& r) {
  json d = json::array();
  for (const auto& t : r.details) d.push_back({{"label", t.label}, {"value", t.value}, {"margin", t.margin}});
  return {{"name", r.name},
          {"trials", r.trials},
          {"failures", r.failures},
          {"worst_margin", r.trials > 0 ? r.worst_margin : 0.0},
          {"pass", r.pass()},
          {"details", d}};
}

/// name,trials,failures,worst_margin
inline void write_summary_csv(std::ostream& out, const std::vector<CheckReport>& reports) {
  out << "name,trials,failures,worst_margin\n" << std::setprecision(17);
  for (const auto& r : reports) {
    out << r.name << ',' << r.trials << ',' << r.failures << ',' << (r.trials > 0 ? r.worst_margin : 0.0) << '\n';
  }
}

}  // namespace tmink::io

#endif  // TMINK_IO_HPP
