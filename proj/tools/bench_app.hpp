#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "radial/radial.hpp"

// Benchmark front end for the radial solvers. All of the work lives in this
// header so the test suite can invoke subcommands in-process; the installed
// binary is a two-line main around run().
namespace radial_bench {

struct Options {
  std::string problem_path;
  std::string algorithm = "radial";  // radial | renegar-a | renegar-b
  std::string policy = "sqsum";      // sqsum | eps-target | known-opt
  std::optional<double> epsilon;
  double beta0 = 1.0;
  std::optional<long> max_iters;
  double gamma_tol = 1e-10;
  double gamma_min = 1e-12;
  std::string trace_path;
  std::string report_path;
};

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline radial::LineSearchConfig line_search_from(const Options& opt) {
  radial::LineSearchConfig ls;
  ls.gamma_tol = opt.gamma_tol;
  ls.gamma_min = opt.gamma_min;
  ls.validate();
  return ls;
}

inline double require_epsilon(const Options& opt, const char* why) {
  if (!opt.epsilon)
    throw UsageError(std::string("--epsilon is required ") + why);
  if (!(*opt.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
  return *opt.epsilon;
}

inline double require_f_star(const radial::ProblemInstance& problem, const char* why) {
  if (!problem.metadata.f_star)
    throw UsageError(std::string("metadata.f_star is required ") + why);
  return *problem.metadata.f_star;
}

// Default iteration budget when --max-iters is not given: the matching
// worst-case bound whenever the metadata allows computing it, else 1000.
inline std::size_t default_max_iters(const radial::ProblemInstance& problem,
                                     const Options& opt) {
  const radial::ProblemMetadata& md = problem.metadata;
  if (opt.epsilon && md.radius_R) {
    const double eps = *opt.epsilon;
    if (opt.algorithm == "radial" && md.dist_to_opt && *md.dist_to_opt > 0.0) {
      if (opt.policy == "eps-target")
        return radial::eps_target_bound(*md.dist_to_opt, *md.radius_R, eps);
      if (opt.policy == "known-opt")
        return radial::known_optimum_bound(*md.dist_to_opt, *md.radius_R, eps);
    }
    if (opt.algorithm == "renegar-a" && md.diameter_D)
      return radial::renegar_a_bound(*md.diameter_D, *md.radius_R, eps);
    if (opt.algorithm == "renegar-b" && md.diameter_D && eps < 1.0)
      return radial::renegar_b_bound(*md.diameter_D, *md.radius_R, eps);
  }
  return 1000;
}

inline radial::RunTrace dispatch_run(const radial::ProblemInstance& problem,
                                     const Options& opt,
                                     const radial::SolverConfig& cfg) {
  if (opt.algorithm == "radial") {
    radial::StepPolicy policy;
    if (opt.policy == "sqsum") {
      policy = radial::SquareSummable::harmonic(opt.beta0);
    } else if (opt.policy == "eps-target") {
      policy = radial::EpsilonTarget{require_epsilon(opt, "for the eps-target policy")};
    } else if (opt.policy == "known-opt") {
      policy = radial::KnownOptimum{require_f_star(problem, "for the known-opt policy")};
    } else {
      throw UsageError("unknown policy: " + opt.policy);
    }
    return radial::radial_subgradient_run(problem, policy, cfg);
  }
  if (opt.algorithm == "renegar-a")
    return radial::renegar_a_run(problem, require_epsilon(opt, "for renegar-a"), cfg);
  if (opt.algorithm == "renegar-b")
    return radial::renegar_b_run(problem, require_f_star(problem, "for renegar-b"), cfg);
  throw UsageError("unknown algorithm: " + opt.algorithm);
}

inline nlohmann::json config_json(const Options& opt, const radial::SolverConfig& cfg) {
  nlohmann::json j;
  j["max_iters"] = cfg.max_iters;
  j["gamma_tol"] = opt.gamma_tol;
  j["gamma_min"] = opt.gamma_min;
  if (opt.epsilon) j["epsilon"] = *opt.epsilon;
  if (opt.algorithm == "radial" && opt.policy == "sqsum") j["beta0"] = opt.beta0;
  return j;
}

inline void write_json_report(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open report file: " + path);
  out << doc.dump(2) << "\n";
}

inline int cmd_solve(const Options& opt) {
  radial::ProblemInstance problem = radial::load_problem_file(opt.problem_path);

  radial::SolverConfig cfg;
  cfg.line_search = line_search_from(opt);
  cfg.max_iters = opt.max_iters ? static_cast<std::size_t>(*opt.max_iters)
                                : default_max_iters(problem, opt);
  if (opt.epsilon) cfg.target_epsilon = opt.epsilon;

  const auto t0 = std::chrono::steady_clock::now();
  radial::RunTrace trace = dispatch_run(problem, opt, cfg);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const bool is_radial = opt.algorithm == "radial";
  radial::TraceAudit audit = radial::audit_trace(trace, problem.metadata.f_star,
                                                 opt.gamma_tol, is_radial);

  if (!opt.trace_path.empty()) radial::write_trace_csv(trace, opt.trace_path);

  const std::size_t last_iter = trace.records.empty() ? 0 : trace.records.back().iter;
  std::cout << "status: " << radial::to_string(trace.status) << "\n";
  std::cout << "iterations: " << last_iter << "\n";
  std::cout << "best value: " << radial::format_double(trace.best_value) << "\n";
  if (problem.metadata.f_star)
    std::cout << "best relative accuracy: "
              << radial::format_double(radial::relative_accuracy(
                     trace.best_value, *problem.metadata.f_star))
              << "\n";
  std::cout << "invariant violations: " << audit.total() << "\n";
  if (trace.unbounded_ray) {
    std::cout << "unbounded ray:";
    for (double v : *trace.unbounded_ray) std::cout << ' ' << radial::format_double(v);
    std::cout << "\n";
  }

  if (!opt.report_path.empty()) {
    nlohmann::json doc;
    doc["problem"] = opt.problem_path;
    doc["algorithm"] = opt.algorithm;
    if (is_radial) doc["policy"] = opt.policy;
    doc["config"] = config_json(opt, cfg);
    doc["status"] = radial::to_string(trace.status);
    doc["iterations"] = last_iter;
    doc["best_value"] = trace.best_value;
    if (problem.metadata.f_star)
      doc["best_relative_accuracy"] =
          radial::relative_accuracy(trace.best_value, *problem.metadata.f_star);
    doc["wall_time_seconds"] = seconds;
    doc["invariant_violations"] = {
        {"gamma_residual", audit.gamma_residual_violations},
        {"ordering", audit.ordering_violations},
        {"descent_slack", audit.descent_slack_violations},
    };
    if (trace.unbounded_ray) doc["unbounded_ray"] = *trace.unbounded_ray;
    write_json_report(opt.report_path, doc);
  }

  return trace.status == radial::RunStatus::UnboundedDetected ? 2
         : trace.status == radial::RunStatus::NumericalStall  ? 1
                                                              : 0;
}

inline radial::TheoremKind theorem_from(const Options& opt) {
  if (opt.algorithm == "radial") {
    if (opt.policy == "eps-target") return radial::TheoremKind::EpsTarget;
    if (opt.policy == "known-opt") return radial::TheoremKind::KnownOptimum;
    throw UsageError("verify-bounds: no worst-case bound exists for policy " + opt.policy);
  }
  if (opt.algorithm == "renegar-a") return radial::TheoremKind::RenegarA;
  if (opt.algorithm == "renegar-b") return radial::TheoremKind::RenegarB;
  throw UsageError("unknown algorithm: " + opt.algorithm);
}

inline int cmd_verify_bounds(const Options& opt) {
  radial::ProblemInstance problem = radial::load_problem_file(opt.problem_path);
  const double eps = require_epsilon(opt, "to check an iteration bound");
  radial::SolverConfig base;
  base.line_search = line_search_from(opt);

  radial::BoundCheckReport report =
      radial::verify_bound(problem, theorem_from(opt), eps, base);

  std::cout << "verify-bounds " << radial::to_string(report.theorem)
            << " eps=" << radial::format_double(eps)
            << ": bound=" << report.bound_iterations << " achieved=";
  if (report.achieved_iteration) std::cout << *report.achieved_iteration;
  else std::cout << "never";
  std::cout << " -> " << (report.passed ? "PASS" : "FAIL") << "\n";

  if (!opt.report_path.empty()) {
    nlohmann::json doc;
    doc["problem"] = opt.problem_path;
    doc["theorem"] = radial::to_string(report.theorem);
    doc["epsilon"] = report.epsilon;
    doc["bound_iterations"] = report.bound_iterations;
    if (report.achieved_iteration) doc["achieved_iteration"] = *report.achieved_iteration;
    doc["passed"] = report.passed;
    write_json_report(opt.report_path, doc);
  }
  return report.passed ? 0 : 1;
}

inline int cmd_compare(const Options& opt) {
  radial::ProblemInstance problem = radial::load_problem_file(opt.problem_path);
  const double eps = require_epsilon(opt, "to compare the algorithms");
  const double f_star = require_f_star(problem, "to compare against the optimum");
  const radial::ProblemMetadata& md = problem.metadata;

  radial::SolverConfig cfg;
  cfg.line_search = line_search_from(opt);
  cfg.target_epsilon = eps;

  auto budget = [&](std::size_t theorem_bound) {
    return opt.max_iters ? static_cast<std::size_t>(*opt.max_iters) : theorem_bound;
  };
  const bool have_ratio = md.radius_R && md.diameter_D;

  cfg.max_iters = budget(md.radius_R && md.dist_to_opt && *md.dist_to_opt > 0.0
                             ? radial::known_optimum_bound(*md.dist_to_opt, *md.radius_R, eps)
                             : 100000);
  radial::RunTrace radial_trace =
      radial::radial_subgradient_run(problem, radial::KnownOptimum{f_star}, cfg);

  cfg.max_iters = budget(have_ratio
                             ? radial::renegar_a_bound(*md.diameter_D, *md.radius_R, eps)
                             : 100000);
  radial::RunTrace a_trace = radial::renegar_a_run(problem, eps, cfg);

  cfg.max_iters = budget(have_ratio && eps < 1.0
                             ? radial::renegar_b_bound(*md.diameter_D, *md.radius_R, eps)
                             : 100000);
  radial::RunTrace b_trace = radial::renegar_b_run(problem, f_star, cfg);

  // Per-iteration relative accuracy, one column per algorithm; rows run to
  // the longest trace with empty cells past each trace's end.
  std::ostringstream csv;
  csv << "iter,radial,renegar_a,renegar_b\n";
  const std::size_t rows = std::max(
      {radial_trace.records.size(), a_trace.records.size(), b_trace.records.size()});
  for (std::size_t i = 0; i < rows; ++i) {
    csv << i;
    for (const radial::RunTrace* trace : {&radial_trace, &a_trace, &b_trace}) {
      csv << ',';
      if (i < trace->records.size())
        csv << radial::format_double(
            radial::relative_accuracy(trace->records[i].f_x, f_star));
    }
    csv << "\n";
  }
  if (!opt.trace_path.empty()) {
    std::ofstream out(opt.trace_path);
    if (!out) throw std::runtime_error("cannot open trace file: " + opt.trace_path);
    out << csv.str();
  } else {
    std::cout << csv.str();
  }

  auto summarize = [&](const char* name, const radial::RunTrace& trace) {
    std::cout << name << ": status=" << radial::to_string(trace.status)
              << " iterations=" << (trace.records.empty() ? 0 : trace.records.back().iter)
              << " best_rel_accuracy="
              << radial::format_double(radial::relative_accuracy(trace.best_value, f_star))
              << "\n";
  };
  summarize("radial", radial_trace);
  summarize("renegar-a", a_trace);
  summarize("renegar-b", b_trace);

  if (!opt.report_path.empty()) {
    nlohmann::json doc;
    doc["problem"] = opt.problem_path;
    doc["epsilon"] = eps;
    auto entry = [&](const radial::RunTrace& trace) {
      nlohmann::json e;
      e["status"] = radial::to_string(trace.status);
      e["iterations"] = trace.records.empty() ? 0 : trace.records.back().iter;
      e["best_relative_accuracy"] = radial::relative_accuracy(trace.best_value, f_star);
      if (auto hit = radial::first_iteration_within(trace, f_star, eps))
        e["first_iteration_within_epsilon"] = *hit;
      return e;
    };
    doc["radial"] = entry(radial_trace);
    doc["renegar_a"] = entry(a_trace);
    doc["renegar_b"] = entry(b_trace);
    write_json_report(opt.report_path, doc);
  }
  return 0;
}

inline void add_common_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--problem", opt.problem_path, "Problem JSON file")->required();
  cmd->add_option("--algorithm", opt.algorithm, "radial | renegar-a | renegar-b")
      ->check(CLI::IsMember({"radial", "renegar-a", "renegar-b"}));
  cmd->add_option("--policy", opt.policy, "sqsum | eps-target | known-opt")
      ->check(CLI::IsMember({"sqsum", "eps-target", "known-opt"}));
  cmd->add_option("--epsilon", opt.epsilon, "Relative accuracy target");
  cmd->add_option("--beta0", opt.beta0, "Scale of the square-summable schedule");
  cmd->add_option("--max-iters", opt.max_iters, "Iteration budget");
  cmd->add_option("--gamma-tol", opt.gamma_tol, "Line-search relative tolerance");
  cmd->add_option("--gamma-min", opt.gamma_min, "Scale below which gamma counts as zero");
  cmd->add_option("--trace", opt.trace_path, "Write per-iteration CSV here");
  cmd->add_option("--report", opt.report_path, "Write JSON run report here");
}

}  // namespace detail

// Entry point shared by the binary and the in-process tests. Returns the
// process exit code: 0 on success, 2 when an unbounded ray was certified,
// 1 on any error.
inline int run(std::vector<std::string> args) {
  CLI::App app{"Benchmark driver for radial projection-free solvers"};
  app.require_subcommand(1);

  Options solve_opt, verify_opt, compare_opt;
  CLI::App* solve = app.add_subcommand("solve", "Run one algorithm on one problem");
  detail::add_common_options(solve, solve_opt);
  CLI::App* verify =
      app.add_subcommand("verify-bounds", "Check a worst-case iteration bound empirically");
  detail::add_common_options(verify, verify_opt);
  CLI::App* compare =
      app.add_subcommand("compare", "Run all three algorithms and emit an accuracy CSV");
  detail::add_common_options(compare, compare_opt);

  // CLI11 wants argv order reversed when parsing from a vector.
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (solve->parsed()) return detail::cmd_solve(solve_opt);
    if (verify->parsed()) return detail::cmd_verify_bounds(verify_opt);
    if (compare->parsed()) return detail::cmd_compare(compare_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args));
}

}  // namespace radial_bench
