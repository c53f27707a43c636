// tmink: torsion, torsion measure and the Minkowski problem for convex polygons.
//
// Exit status: 0 ok, 1 invalid input, 2 numerical failure, 3 no convergence.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tmink/io.hpp"
#include "tmink/tmink.hpp"

namespace {

using tmink::ErrorKind;
using tmink::io::json;

struct RunConfig {
  std::string input;
  std::string output;
  std::string log;
  std::optional<double> mesh_h;
  std::optional<double> tol;
  std::optional<int> max_iters;
  std::uint64_t seed = 42;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::MeshTooFine:
    case ErrorKind::LinearSolveFailure:
    case ErrorKind::MaximumPrincipleViolation:
    case ErrorKind::PointOutside:
    case ErrorKind::FluxSolveFailure:
      return 2;
    case ErrorKind::NoConvergence:
      return 3;
    default:
      return 1;
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    tmink::io::write_text(path, text);
  }
}

void emit_json(const std::string& path, const json& j) { emit(path, j.dump(2) + "\n"); }

// Absolute mesh size: the flag if given, else 0.02 times the circumradius.
double mesh_size(const RunConfig& c, const tmink::Polygon& p) {
  const double h = c.mesh_h.value_or(0.02 * tmink::metrics(p).circumradius);
  if (!(h > 0.0)) tmink::fail(ErrorKind::InvariantViolation, "--mesh-h must be > 0");
  return h;
}

int run_torsion(const RunConfig& c) {
  const tmink::Polygon p = tmink::io::polygon_from_json(tmink::io::read_json(c.input));
  tmink::SolverOptions so;
  so.target_h = mesh_size(c, p);
  const tmink::TorsionField f = tmink::solve_torsion(p, so);
  json j = tmink::io::to_json(f);
  j["polygon"] = tmink::io::to_json(p);
  emit_json(c.output, j);
  return 0;
}

int run_measure(const RunConfig& c) {
  const tmink::Polygon p = tmink::io::polygon_from_json(tmink::io::read_json(c.input));
  const tmink::MeasuredBody b = tmink::measure_body(p, mesh_size(c, p));
  json j = tmink::io::to_json(b.measure);
  j["tau"] = b.field.tau_energy;
  j["total"] = b.measure.total();
  j["closure_defect"] = b.measure.closure_defect();
  j["representation_residual"] = tmink::representation_residual(b.field, b.measure);
  emit_json(c.output, j);
  return 0;
}

void write_solve_outputs(const RunConfig& c, const tmink::SolveReport& r) {
  emit_json(c.output, tmink::io::to_json(r));
  if (!c.log.empty()) {
    std::ostringstream csv;
    tmink::io::write_log_csv(csv, r);
    tmink::io::write_text(c.log, csv.str());
  }
}

int run_solve(const RunConfig& c) {
  tmink::io::ProblemSpec spec = tmink::io::problem_from_json(tmink::io::read_json(c.input));
  if (c.mesh_h) spec.options.mesh_h = *c.mesh_h;
  if (c.tol) spec.options.tol = *c.tol;
  if (c.max_iters) spec.options.max_iters = *c.max_iters;
  spec.options.seed = c.seed;
  try {
    const tmink::SolveReport r = tmink::solve_minkowski(spec.target, spec.options);
    write_solve_outputs(c, r);
    std::cerr << "converged in " << r.iterations << " iterations, residual " << r.final_residual << "\n";
    return 0;
  } catch (const tmink::NoConvergenceError& e) {
    write_solve_outputs(c, e.report());
    throw;
  }
}

int run_verify(const RunConfig& c) {
  tmink::CorpusOptions opts;
  opts.seed = c.seed;
  if (c.mesh_h) opts.relative_mesh_h = *c.mesh_h;
  const auto reports = tmink::run_corpus_checks(opts);
  json j = json::array();
  bool pass = true;
  for (const auto& r : reports) {
    j.push_back(tmink::io::to_json(r));
    pass = pass && r.pass();
  }
  emit_json(c.output, j);
  std::ostringstream csv;
  tmink::io::write_summary_csv(csv, reports);
  if (c.log.empty()) {
    std::cerr << csv.str();
  } else {
    tmink::io::write_text(c.log, csv.str());
  }
  return pass ? 0 : 2;
}

int run_hadamard(const RunConfig& c) {
  const json doc = tmink::io::read_json(c.input);
  const tmink::Polygon body = tmink::io::polygon_from_json(tmink::io::detail::field(doc, "body", "input"));
  const tmink::Polygon pert = tmink::io::polygon_from_json(tmink::io::detail::field(doc, "perturbation", "input"));
  std::vector<double> s = {0.02, 0.01, 0.005};
  if (doc.contains("s")) s = tmink::io::detail::numbers(doc["s"], "s");
  const tmink::HadamardReport r = tmink::hadamard_fd_check(body, pert, s, mesh_size(c, body));
  emit_json(c.output, tmink::io::to_json(r));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torsional rigidity, torsion measure and its Minkowski problem for convex polygons"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool needs_input,
                    const char* mesh_help = "absolute mesh size (default 0.02 x circumradius)") {
    auto* in = sub->add_option("--input", cfg.input, "input JSON file");
    if (needs_input) in->required();
    sub->add_option("--output", cfg.output, "output file (default: stdout)");
    sub->add_option("--mesh-h", cfg.mesh_h, mesh_help);
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  };
  auto* torsion = app.add_subcommand("torsion", "torsional rigidity of a polygon");
  common(torsion, true);
  auto* measure = app.add_subcommand("measure", "torsion measure of a polygon");
  common(measure, true);
  auto* solve = app.add_subcommand("solve", "solve the Minkowski problem for a target measure");
  common(solve, true, "mesh size relative to the initial circumradius (default 0.02)");
  solve->add_option("--tol", cfg.tol, "relative residual tolerance");
  solve->add_option("--max-iters", cfg.max_iters, "iteration limit");
  solve->add_option("--log", cfg.log, "convergence log (CSV)");
  auto* verify = app.add_subcommand("verify", "property checks on the seeded polygon corpus");
  common(verify, false, "mesh size relative to each circumradius (default 0.02)");
  verify->add_option("--log", cfg.log, "summary table (CSV)");
  auto* hadamard = app.add_subcommand("hadamard", "finite-difference check of the first variation");
  common(hadamard, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*torsion) return run_torsion(cfg);
    if (*measure) return run_measure(cfg);
    if (*solve) return run_solve(cfg);
    if (*verify) return run_verify(cfg);
    if (*hadamard) return run_hadamard(cfg);
  } catch (const tmink::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
