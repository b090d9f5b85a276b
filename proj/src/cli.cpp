#include "spheretik/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spheretik/certify.hpp"
#include "spheretik/error.hpp"
#include "spheretik/experiment.hpp"
#include "spheretik/io.hpp"
#include "spheretik/kernels.hpp"
#include "spheretik/solvers.hpp"

namespace spheretik {

namespace {

struct CommonOpts {
  std::string input;
  std::string output;
  std::string metrics;
  std::string truth;
  std::string kernel = "auto";
  std::string solver = "sdp";
  SolverParams params;
  bool require_tight = false;
  int restarts = 8;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void apply_kernel_mode(const std::string& name) {
  if (name == "auto") {
    kernels::set_mode(kernels::Mode::Auto);
  } else if (name == "scalar") {
    kernels::set_mode(kernels::Mode::Scalar);
  } else {
    kernels::set_mode(kernels::Mode::Avx2);
  }
}

void write_metrics(const CommonOpts& opts, const SolutionOutput& result) {
  if (opts.metrics.empty()) return;
  if (opts.truth.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "--metrics needs --truth pointing at the reference signal");
  }
  const auto ref = load_signal(opts.truth);
  nlohmann::ordered_json j;
  j["mean_angular_error_deg"] = mean_angular_error(result.x, ref);
  j["objective_original"] = result.objective_original;
  std::ofstream out(opts.metrics);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open '" + opts.metrics + "' for writing");
  }
  out << j.dump(2) << '\n';
}

int run_solve(const CommonOpts& opts, bool interpolation, bool force_sdp, std::ostream& out) {
  apply_kernel_mode(opts.kernel);
  const Problem problem = load_problem(opts.input);
  if (interpolation) {
    bool any_fixed = false;
    for (std::size_t i = 0; i < problem.nodes().size(); ++i) {
      any_fixed = any_fixed || problem.is_fixed(i);
    }
    if (!any_fixed) {
      throw Error(ErrorCode::InvalidArgument,
                  "interpolation requires at least one pinned node (w = \"inf\")");
    }
  }
  const std::string solver = force_sdp ? "sdp" : opts.solver;
  if (opts.require_tight && solver != "sdp") {
    throw Error(ErrorCode::InvalidArgument, "--require-tight needs the sdp solver");
  }

  SolutionOutput result;
  result.diagnostics = problem.diagnostics();
  int code = 0;

  if (solver == "sdp") {
    const RelaxedSolution sol = solve_relaxation(problem, opts.params);
    const TightnessReport report = certify_tightness(problem, sol);
    result.x = report.rounded_x;
    result.objective_original = objective_original(problem, result.x);
    result.objective_relaxed = sol.objective_relaxed;
    result.tight = report.tight;
    result.gap = report.gap;
    result.converged = sol.converged;
    result.iterations = sol.iterations;
    result.per_edge = report.per_edge;
    result.diagnostics.insert(result.diagnostics.end(), sol.diagnostics.begin(),
                              sol.diagnostics.end());
    result.diagnostics.insert(result.diagnostics.end(), report.diagnostics.begin(),
                              report.diagnostics.end());
    out << "objective: " << fmt(result.objective_original) << "\n";
    out << "relaxed bound: " << fmt(sol.objective_relaxed) << "\n";
    out << "tight: " << (report.tight ? "true" : "false") << "\n";
    out << "gap: " << fmt(report.gap) << "\n";
    if (!sol.converged) code = 2;
    if (opts.require_tight && !report.tight) code = 3;
  } else if (solver == "baseline") {
    const BaselineSolution sol = solve_baseline(problem, opts.params);
    result.x = sol.rounded;
    result.objective_original = objective_original(problem, result.x);
    result.converged = sol.converged;
    result.iterations = sol.sweeps;
    result.diagnostics.insert(result.diagnostics.end(), sol.diagnostics.begin(),
                              sol.diagnostics.end());
    out << "objective: " << fmt(result.objective_original) << "\n";
    if (!sol.converged) code = 2;
  } else {
    const LocalSolution sol = solve_local_multistart(problem, opts.restarts, opts.params);
    result.x = sol.x;
    result.objective_original = objective_original(problem, result.x);
    result.converged = sol.converged;
    result.iterations = sol.sweeps;
    result.diagnostics.insert(result.diagnostics.end(), sol.diagnostics.begin(),
                              sol.diagnostics.end());
    out << "objective: " << fmt(result.objective_original) << "\n";
    if (!sol.converged) code = 2;
  }

  if (!result.converged) {
    out << "warning: solver stopped at the iteration cap\n";
  }
  if (!opts.output.empty()) {
    save_solution(opts.output, result);
  }
  write_metrics(opts, result);
  return code;
}

struct SimulateOpts {
  std::string topology = "chain";
  ExperimentSpec spec;
  std::string output;
  std::string truth;
};

int run_simulate(const SimulateOpts& opts, std::ostream& out) {
  ExperimentSpec spec = opts.spec;
  if (opts.topology == "chain") {
    spec.topology = Topology::Chain;
  } else if (opts.topology == "grid" || opts.topology == "grid2d") {
    spec.topology = Topology::Grid2d;
  } else {
    throw Error(ErrorCode::InvalidArgument,
                "unknown topology '" + opts.topology + "' (expected chain or grid)");
  }
  const Experiment exp = generate_experiment(spec);
  save_problem(opts.output, exp.problem);
  if (!opts.truth.empty()) {
    save_signal(opts.truth, exp.truth);
  }
  out << "nodes: " << exp.problem.nodes().size() << " edges: " << exp.problem.edges().size()
      << "\n";
  return 0;
}

int run_bench(const CommonOpts& opts, std::ostream& out) {
  apply_kernel_mode(opts.kernel);
  const Problem problem = load_problem(opts.input);
  nlohmann::ordered_json results = nlohmann::ordered_json::array();

  const auto record = [&](const char* name, const std::map<NodeId, UnitVec3>& x, int iterations,
                          bool converged, double ms) {
    const double obj = objective_original(problem, x);
    char line[160];
    std::snprintf(line, sizeof line, "%-8s  objective %-14.8g  iterations %-7d  %s  %.2f ms",
                  name, obj, iterations, converged ? "converged" : "CAPPED", ms);
    out << line << "\n";
    results.push_back({{"solver", name},
                       {"objective_original", obj},
                       {"iterations", iterations},
                       {"converged", converged},
                       {"ms", ms}});
  };
  const auto now = [] { return std::chrono::steady_clock::now(); };
  const auto ms_since = [&](std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(now() - t0).count();
  };

  {
    const auto t0 = now();
    const RelaxedSolution sol = solve_relaxation(problem, opts.params);
    const double ms = ms_since(t0);
    const TightnessReport report = certify_tightness(problem, sol);
    record("sdp", report.rounded_x, sol.iterations, sol.converged, ms);
    results.back()["tight"] = report.tight;
    results.back()["gap"] = report.gap;
  }
  {
    const auto t0 = now();
    const BaselineSolution sol = solve_baseline(problem, opts.params);
    record("baseline", sol.rounded, sol.sweeps, sol.converged, ms_since(t0));
  }
  {
    const auto t0 = now();
    const LocalSolution sol = solve_local_multistart(problem, opts.restarts, opts.params);
    record("local", sol.x, sol.sweeps, sol.converged, ms_since(t0));
  }

  if (!opts.output.empty()) {
    nlohmann::ordered_json j;
    j["results"] = results;
    std::ofstream f(opts.output);
    if (!f) {
      throw Error(ErrorCode::IoError, "cannot open '" + opts.output + "' for writing");
    }
    f << j.dump(2) << '\n';
  }
  return 0;
}

void add_solver_options(CLI::App* cmd, CommonOpts& opts, bool output_required,
                        bool solver_choice) {
  cmd->add_option("-i,--input", opts.input, "problem file (JSON)")->required();
  auto* o = cmd->add_option("-o,--output", opts.output, "solution file to write");
  if (output_required) o->required();
  if (solver_choice) {
    cmd->add_option("--solver", opts.solver, "solution method")
        ->check(CLI::IsMember({"sdp", "baseline", "local"}));
  }
  cmd->add_option("--max-iters", opts.params.max_iters, "iteration/sweep cap");
  cmd->add_option("--tol-feas", opts.params.tol_feasibility, "feasibility residual target");
  cmd->add_option("--tol-change", opts.params.tol_change, "iterate-change residual target");
  cmd->add_option("--step-scale", opts.params.step_scale, "step size as a fraction of 1/L");
  cmd->add_option("--seed", opts.params.seed, "seed for randomized pieces");
  cmd->add_option("--restarts", opts.restarts, "random restarts for the local solver");
  cmd->add_flag("--require-tight", opts.require_tight,
                "exit 3 unless the solution is certified exact");
  cmd->add_option("--metrics", opts.metrics, "write accuracy metrics JSON here");
  cmd->add_option("--truth", opts.truth, "reference signal for --metrics");
  cmd->add_option("--kernel", opts.kernel, "arithmetic kernel selection")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smoothing, denoising, and interpolation of unit-vector signals on graphs"};
  app.require_subcommand(1);
  app.failure_message(
      [](const CLI::App*, const CLI::Error& e) { return "error: " + std::string(e.what()) + "\n"; });

  CommonOpts opts;
  SimulateOpts sim;
  std::function<int()> action;

  CLI::App* smooth = app.add_subcommand("smooth", "denoise a problem's data");
  add_solver_options(smooth, opts, /*output_required=*/true, /*solver_choice=*/true);
  smooth->callback([&] { action = [&] { return run_solve(opts, false, false, out); }; });

  CLI::App* interp = app.add_subcommand("interpolate", "fill unobserved nodes from pinned ones");
  add_solver_options(interp, opts, /*output_required=*/true, /*solver_choice=*/true);
  interp->callback([&] { action = [&] { return run_solve(opts, true, false, out); }; });

  CLI::App* certify = app.add_subcommand("certify", "solve the relaxation and test exactness");
  add_solver_options(certify, opts, /*output_required=*/false, /*solver_choice=*/false);
  certify->callback([&] { action = [&] { return run_solve(opts, false, true, out); }; });

  CLI::App* simulate = app.add_subcommand("simulate", "generate a synthetic instance");
  simulate->add_option("--topology", sim.topology, "chain or grid");
  simulate->add_option("--length", sim.spec.length, "chain length");
  simulate->add_option("--rows", sim.spec.rows, "grid rows");
  simulate->add_option("--cols", sim.spec.cols, "grid columns");
  simulate->add_option("--kappa", sim.spec.kappa, "noise concentration");
  simulate->add_option("--w", sim.spec.w, "data weight");
  simulate->add_option("--lambda", sim.spec.lambda, "edge weight");
  simulate->add_option("--fixed-fraction", sim.spec.fixed_fraction,
                       "fraction of nodes pinned to the truth (interpolation mode)");
  simulate->add_option("--seed", sim.spec.seed, "generator seed");
  simulate->add_option("-o,--output", sim.output, "problem file to write")->required();
  simulate->add_option("--truth", sim.truth, "also write the ground-truth signal here");
  simulate->callback([&] { action = [&] { return run_simulate(sim, out); }; });

  CLI::App* bench = app.add_subcommand("bench", "run all three solvers and report timings");
  add_solver_options(bench, opts, /*output_required=*/false, /*solver_choice=*/false);
  bench->callback([&] { action = [&] { return run_bench(opts, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    return action ? action() : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace spheretik
