#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <variant>
#include <vector>

#include "radial/geometry.hpp"
#include "radial/problem.hpp"

namespace radial {

// ---------------------------------------------------------------------------
// Step-size policies

// What a step rule gets to look at when choosing alpha_i.
struct StepState {
  std::size_t iter = 0;
  double z = 0.0;            // current level, always negative
  double subgrad_norm = 0.0; // norm of the gamma_z subgradient, positive
};

// alpha_i = -z_i * beta(i) for a positive, square-summable-but-not-summable
// schedule beta. The level factor keeps the step scale-invariant, which is
// what lets the restarted method keep its guarantee after each rescaling.
struct SquareSummable {
  std::function<double(std::size_t)> beta;

  static SquareSummable harmonic(double beta0 = 1.0) {
    if (!(beta0 > 0.0))
      throw std::invalid_argument("SquareSummable::harmonic: beta0 must be positive");
    return SquareSummable{[beta0](std::size_t i) {
      return beta0 / static_cast<double>(i + 1);
    }};
  }
};

// alpha_i = epsilon / (2 ||zeta_i||^2); tuned to reach relative accuracy
// epsilon without knowing the optimal value.
struct EpsilonTarget {
  double epsilon = 0.0;
};

// alpha_i = ((z_i - f_star) / (0 - f_star)) / ||zeta_i||^2, the Polyak-type
// rule available when the optimal value is known.
struct KnownOptimum {
  double f_star = 0.0;
};

// Caller-supplied rule; must return a positive step.
struct CustomStep {
  std::function<double(const StepState&)> rule;
};

using StepPolicy = std::variant<SquareSummable, EpsilonTarget, KnownOptimum, CustomStep>;

// Evaluates the policy. KnownOptimum may legitimately return a nonpositive
// step once the level has reached f_star; the solver treats that as
// convergence. Every other policy must produce alpha > 0.
inline double step_size(const StepPolicy& policy, const StepState& state) {
  if (!(state.subgrad_norm > 0.0))
    throw std::invalid_argument(
        "step_size: subgradient norm must be positive (a zero subgradient "
        "means the iterate already minimizes gamma_z)");
  if (!(state.z < 0.0))
    throw std::invalid_argument("step_size: level z must be negative");
  return std::visit(
      [&](const auto& rule) -> double {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, SquareSummable>) {
          if (!rule.beta)
            throw std::invalid_argument("step_size: beta schedule is empty");
          const double beta = rule.beta(state.iter);
          if (!(beta > 0.0))
            throw std::invalid_argument("step_size: beta schedule must be positive");
          return -state.z * beta;
        } else if constexpr (std::is_same_v<T, EpsilonTarget>) {
          if (!(rule.epsilon > 0.0))
            throw std::invalid_argument("step_size: epsilon must be positive");
          return rule.epsilon / (2.0 * state.subgrad_norm * state.subgrad_norm);
        } else if constexpr (std::is_same_v<T, KnownOptimum>) {
          if (!(rule.f_star < 0.0))
            throw std::invalid_argument("step_size: f_star must be negative");
          return (state.z - rule.f_star) / (0.0 - rule.f_star) /
                 (state.subgrad_norm * state.subgrad_norm);
        } else {
          if (!rule.rule)
            throw std::invalid_argument("step_size: custom rule is empty");
          const double alpha = rule.rule(state);
          if (!(alpha > 0.0))
            throw std::invalid_argument("step_size: custom rule must return a positive step");
          return alpha;
        }
      },
      policy);
}

// Relative accuracy of a value against a negative reference:
// (f_x - f_ref) / (0 - f_ref). 0 at the reference, 1 at zero.
inline double relative_accuracy(double f_x, double f_ref) {
  if (!(f_ref < 0.0))
    throw std::invalid_argument("relative_accuracy: reference value must be negative");
  return (f_x - f_ref) / (0.0 - f_ref);
}

// ---------------------------------------------------------------------------
// Run traces

// One row of a run trace. Terminal records (produced when a run stops at an
// iterate without stepping away from it) carry no alpha/subgrad_norm.
// rel_accuracy needs metadata.f_star; lemma34_slack needs metadata.optimum
// and measures the per-step descent inequality for the step that *produced*
// this iterate (so it is absent on record 0).
struct IterateRecord {
  std::size_t iter = 0;
  Point x;
  double z = 0.0;
  double f_x = 0.0;  // objective at the point the algorithm reports for this row
  std::optional<double> alpha;
  std::optional<double> subgrad_norm;
  double gamma_residual = 0.0;  // |gamma_z(x) - 1| as measured by the line search
  std::optional<double> rel_accuracy;
  std::optional<double> lemma34_slack;
};

enum class RunStatus { MaxIters, TargetReached, UnboundedDetected, NumericalStall };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::MaxIters: return "MaxIters";
    case RunStatus::TargetReached: return "TargetReached";
    case RunStatus::UnboundedDetected: return "UnboundedDetected";
    case RunStatus::NumericalStall: return "NumericalStall";
  }
  return "Unknown";
}

struct RunTrace {
  std::vector<IterateRecord> records;
  RunStatus status = RunStatus::MaxIters;
  std::optional<Point> unbounded_ray;  // set when status is UnboundedDetected
  double best_value = std::numeric_limits<double>::infinity();
  Point best_point;
};

struct SolverConfig {
  std::size_t max_iters = 1000;
  // Stop once relative accuracy against metadata.f_star reaches this;
  // ignored when the instance carries no f_star.
  std::optional<double> target_epsilon;
  LineSearchConfig line_search{};
};

namespace detail {

// Shared preamble: the algorithms all start at the origin and require the
// canonical f(0) < 0.
inline double initial_level(const ProblemInstance& problem, const char* who) {
  Point origin(problem.dimension, 0.0);
  ExtendedValue f0 = evaluate(problem, origin);
  if (!f0.is_finite() || !(f0.finite() < 0.0))
    throw std::invalid_argument(std::string(who) +
                                ": instance must satisfy f(0) < 0 (canonicalize first)");
  return f0.finite();
}

inline void note_best(RunTrace& trace, const Point& p, double value) {
  if (value < trace.best_value) {
    trace.best_value = value;
    trace.best_point = p;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Radial subgradient method
//
// Maintains the pair (x_i, z_i) with gamma_{z_i}(x_i) = 1: each iteration
// takes a subgradient step on gamma_{z_i}, then radially rescales the result
// back to the epigraph boundary, which simultaneously lowers the level.
// A zero-detected line search at the shifted point certifies an unbounded
// ray and stops the run.
inline RunTrace radial_subgradient_run(const ProblemInstance& problem,
                                       const StepPolicy& policy,
                                       const SolverConfig& cfg) {
  cfg.line_search.validate();
  double z = detail::initial_level(problem, "radial_subgradient_run");
  Point x(problem.dimension, 0.0);

  const std::optional<double>& f_star = problem.metadata.f_star;
  // A known optimum enables the online check of the per-step inequality.
  std::optional<Point> y;
  double f_y = 0.0;
  if (problem.metadata.optimum) {
    ExtendedValue v = evaluate(problem, *problem.metadata.optimum);
    if (v.is_finite() && v.finite() < 0.0) {
      y = problem.metadata.optimum;
      f_y = v.finite();
    }
  }

  LineSearchConfig ls = cfg.line_search;
  ls.initial_guess = 1.0;  // iterates sit on the boundary, so gamma_z(x_i) ~ 1

  RunTrace trace;
  std::optional<double> step_slack;  // inequality slack for the step into the current x

  auto push = [&](std::size_t i, double f_x, double g_res,
                  std::optional<double> alpha, std::optional<double> g_norm) {
    IterateRecord rec;
    rec.iter = i;
    rec.x = x;
    rec.z = z;
    rec.f_x = f_x;
    rec.alpha = alpha;
    rec.subgrad_norm = g_norm;
    rec.gamma_residual = g_res;
    if (f_star) rec.rel_accuracy = relative_accuracy(f_x, *f_star);
    rec.lemma34_slack = step_slack;
    detail::note_best(trace, x, f_x);
    trace.records.push_back(std::move(rec));
  };

  for (std::size_t i = 0;; ++i) {
    GammaResult here = eval_gamma(problem, z, x, ls);
    if (is_zero(here)) {
      // gamma_z(x) = 0 certifies unboundedness along the current iterate
      // itself. Unreachable from a boundary pair, but handled for safety.
      trace.status = RunStatus::UnboundedDetected;
      trace.unbounded_ray = x;
      ExtendedValue v = evaluate(problem, x);
      push(i, v.is_finite() ? v.finite() : z, 1.0, std::nullopt, std::nullopt);
      break;
    }
    const double gamma_here = gamma_value(here);
    const double g_res = std::abs(gamma_here - 1.0);
    const double f_x = evaluate(problem, x).finite();

    if (cfg.target_epsilon && f_star &&
        relative_accuracy(f_x, *f_star) <= *cfg.target_epsilon) {
      push(i, f_x, g_res, std::nullopt, std::nullopt);
      trace.status = RunStatus::TargetReached;
      break;
    }
    if (i == cfg.max_iters) {
      push(i, f_x, g_res, std::nullopt, std::nullopt);
      trace.status = RunStatus::MaxIters;
      break;
    }
    if (const auto* ko = std::get_if<KnownOptimum>(&policy)) {
      // The level z inherits a relative error of order gamma_tol from each
      // rescale, so once z - f_star falls below gamma_tol * |f_star| the gap
      // driving this step rule is indistinguishable from bracket noise and
      // further steps random-walk instead of converging. Stop at the
      // resolution floor (one order of margin above it).
      if (z - ko->f_star <= 10.0 * ls.gamma_tol * (0.0 - ko->f_star)) {
        push(i, f_x, g_res, std::nullopt, std::nullopt);
        trace.status = RunStatus::TargetReached;
        break;
      }
    }

    Point zeta = gamma_subgradient(problem, z, x, gamma_here);
    const double g_norm = norm(zeta);
    if (g_norm == 0.0) {
      // x minimizes gamma_z: no descent direction exists, the level cannot
      // be improved further.
      push(i, f_x, g_res, std::nullopt, std::nullopt);
      trace.status = RunStatus::TargetReached;
      break;
    }
    const double alpha = step_size(policy, StepState{i, z, g_norm});
    if (!(alpha > 0.0)) {
      // Only the known-optimum rule emits this, when z has reached f_star.
      push(i, f_x, g_res, std::nullopt, std::nullopt);
      trace.status = RunStatus::TargetReached;
      break;
    }
    push(i, f_x, g_res, alpha, g_norm);

    Point x_shifted = step_from(x, alpha, zeta);
    if (x_shifted == x) {
      // alpha * zeta underflowed against x: no progress is possible.
      trace.status = RunStatus::NumericalStall;
      break;
    }
    GammaResult next = eval_gamma(problem, z, x_shifted, ls);
    if (is_zero(next)) {
      trace.status = RunStatus::UnboundedDetected;
      trace.unbounded_ray = std::move(x_shifted);
      break;
    }
    const double g = gamma_value(next);
    Point x_next = scaled(x_shifted, 1.0 / g);
    const double z_next = z / g;
    if (y) {
      // Slack of the rescaled per-step inequality for this transition:
      // || (f(y)/z') x' - y ||^2 <= || (f(y)/z) x - y ||^2
      //     - 2 alpha (f(y)/z) (z - f(y)) / (0 - z)
      //     + alpha^2 (f(y)/z)^2 ||zeta||^2.
      const double r = f_y / z;
      const double lhs = distance_squared(scaled(x_next, f_y / z_next), *y);
      const double rhs = distance_squared(scaled(x, r), *y) -
                         2.0 * alpha * r * (z - f_y) / (0.0 - z) +
                         alpha * alpha * r * r * g_norm * g_norm;
      step_slack = rhs - lhs;
    }
    x = std::move(x_next);
    z = z_next;
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Level-method baselines
//
// Both baselines keep a fixed level z and report the objective at the
// radially scaled point x_i / gamma_z(x_i), which is what their guarantees
// speak about; records therefore store the unscaled iterate in x but the
// scaled point's objective in f_x (and track best over scaled points).

// Fixed-level variant A: subgradient steps on gamma_z with
// alpha_i = epsilon / (2 ||zeta_i||^2), restarting (rescaling the pair back
// to the boundary) only when gamma_z has dropped to 3/4 or below.
inline RunTrace renegar_a_run(const ProblemInstance& problem, double epsilon,
                              const SolverConfig& cfg) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("renegar_a_run: epsilon must be positive");
  cfg.line_search.validate();
  double z = detail::initial_level(problem, "renegar_a_run");
  Point x(problem.dimension, 0.0);
  const std::optional<double>& f_star = problem.metadata.f_star;

  LineSearchConfig ls = cfg.line_search;
  RunTrace trace;
  double warm = 1.0;  // previous gamma seeds the next bracket

  auto eval_here = [&](const Point& p) {
    ls.initial_guess = warm;
    GammaResult r = eval_gamma(problem, z, p, ls);
    if (!is_zero(r)) warm = gamma_value(r);
    return r;
  };

  for (std::size_t i = 0;; ++i) {
    GammaResult here = eval_here(x);
    if (is_zero(here)) {
      trace.status = RunStatus::UnboundedDetected;
      trace.unbounded_ray = x;
      break;
    }
    const double gamma_here = gamma_value(here);
    Point scaled_pt = scaled(x, 1.0 / gamma_here);
    const double f_sc = evaluate(problem, scaled_pt).finite();
    detail::note_best(trace, scaled_pt, f_sc);

    IterateRecord rec;
    rec.iter = i;
    rec.x = x;
    rec.z = z;
    rec.f_x = f_sc;
    rec.gamma_residual = std::abs(gamma_here - 1.0);
    if (f_star) rec.rel_accuracy = relative_accuracy(f_sc, *f_star);

    if (cfg.target_epsilon && f_star &&
        relative_accuracy(f_sc, *f_star) <= *cfg.target_epsilon) {
      trace.records.push_back(std::move(rec));
      trace.status = RunStatus::TargetReached;
      break;
    }
    if (i == cfg.max_iters) {
      trace.records.push_back(std::move(rec));
      trace.status = RunStatus::MaxIters;
      break;
    }

    Point zeta = gamma_subgradient(problem, z, x, gamma_here);
    const double g_norm = norm(zeta);
    if (g_norm == 0.0) {
      trace.records.push_back(std::move(rec));
      trace.status = RunStatus::TargetReached;
      break;
    }
    const double alpha = epsilon / (2.0 * g_norm * g_norm);
    rec.alpha = alpha;
    rec.subgrad_norm = g_norm;
    trace.records.push_back(std::move(rec));

    x = step_from(x, alpha, zeta);
    GammaResult after = eval_here(x);
    if (is_zero(after)) {
      trace.status = RunStatus::UnboundedDetected;
      trace.unbounded_ray = x;
      break;
    }
    const double g = gamma_value(after);
    if (g <= 0.75) {
      x = scaled(x, 1.0 / g);
      z = z / g;
      warm = 1.0;
    }
  }
  return trace;
}

// Fixed-level variant B: the level is pinned at the known optimal value, the
// step is alpha_i = (gamma_z(x_i) - 1) / ||zeta_i||^2, and no rescaling ever
// happens. gamma_z(x_i) <= 1 (up to the line-search tolerance) certifies
// that the scaled point is optimal.
inline RunTrace renegar_b_run(const ProblemInstance& problem, double f_star_level,
                              const SolverConfig& cfg) {
  if (!(f_star_level < 0.0))
    throw std::invalid_argument("renegar_b_run: the optimal value must be negative");
  cfg.line_search.validate();
  detail::initial_level(problem, "renegar_b_run");  // canonicality check
  const double z = f_star_level;
  Point x(problem.dimension, 0.0);
  const std::optional<double>& f_star = problem.metadata.f_star;

  LineSearchConfig ls = cfg.line_search;
  RunTrace trace;
  double warm = 1.0;

  for (std::size_t i = 0;; ++i) {
    ls.initial_guess = warm;
    GammaResult here = eval_gamma(problem, z, x, ls);
    if (is_zero(here)) {
      trace.status = RunStatus::UnboundedDetected;
      trace.unbounded_ray = x;
      break;
    }
    const double gamma_here = gamma_value(here);
    warm = gamma_here;
    Point scaled_pt = scaled(x, 1.0 / gamma_here);
    const double f_sc = evaluate(problem, scaled_pt).finite();
    detail::note_best(trace, scaled_pt, f_sc);

    IterateRecord rec;
    rec.iter = i;
    rec.x = x;
    rec.z = z;
    rec.f_x = f_sc;
    rec.gamma_residual = std::abs(gamma_here - 1.0);
    if (f_star) rec.rel_accuracy = relative_accuracy(f_sc, *f_star);

    if (cfg.target_epsilon && f_star &&
        relative_accuracy(f_sc, *f_star) <= *cfg.target_epsilon) {
      trace.records.push_back(std::move(rec));
      trace.status = RunStatus::TargetReached;
      break;
    }
    if (gamma_here <= 1.0 + ls.gamma_tol) {
      // The scaled point already attains the optimal level.
      trace.records.push_back(std::move(rec));
      trace.status = RunStatus::TargetReached;
      break;
    }
    if (i == cfg.max_iters) {
      trace.records.push_back(std::move(rec));
      trace.status = RunStatus::MaxIters;
      break;
    }

    Point zeta = gamma_subgradient(problem, z, x, gamma_here);
    const double g_norm = norm(zeta);
    if (g_norm == 0.0) {
      trace.records.push_back(std::move(rec));
      trace.status = RunStatus::TargetReached;
      break;
    }
    const double alpha = (gamma_here - 1.0) / (g_norm * g_norm);
    rec.alpha = alpha;
    rec.subgrad_norm = g_norm;
    trace.records.push_back(std::move(rec));

    x = step_from(x, alpha, zeta);
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Online invariant audit

// Violation counters for the invariants a clean radial run must satisfy.
// Thresholds: measured |gamma_z(x_i) - 1| stays within 10x the line-search
// tolerance; the ordering f_star <= f(x_i) <= z_i < 0 holds with slack
// >= -1e-9; the per-step inequality slack stays >= -1e-7.
struct TraceAudit {
  std::size_t gamma_residual_violations = 0;
  std::size_t ordering_violations = 0;
  std::size_t descent_slack_violations = 0;
  double max_gamma_residual = 0.0;
  double min_ordering_slack = std::numeric_limits<double>::infinity();
  double min_descent_slack = std::numeric_limits<double>::infinity();

  std::size_t total() const {
    return gamma_residual_violations + ordering_violations + descent_slack_violations;
  }
};

inline constexpr double kOrderingSlackTol = 1e-9;
inline constexpr double kDescentSlackTol = 1e-7;

// Audits a radial_subgradient_run trace. Baseline traces keep gamma away
// from 1 by design, so only the level/ordering part applies to them; pass
// check_gamma = false in that case.
inline TraceAudit audit_trace(const RunTrace& trace,
                              const std::optional<double>& f_star,
                              double gamma_tol, bool check_gamma = true) {
  TraceAudit audit;
  for (const IterateRecord& rec : trace.records) {
    if (check_gamma) {
      audit.max_gamma_residual = std::max(audit.max_gamma_residual, rec.gamma_residual);
      if (rec.gamma_residual > 10.0 * gamma_tol) ++audit.gamma_residual_violations;
      double slack = std::min(rec.z - rec.f_x, 0.0 - rec.z);
      if (f_star) slack = std::min(slack, rec.f_x - *f_star);
      audit.min_ordering_slack = std::min(audit.min_ordering_slack, slack);
      if (slack < -kOrderingSlackTol) ++audit.ordering_violations;
    } else {
      // Fixed-level runs only promise z < 0 and f_star <= f(reported point).
      double slack = 0.0 - rec.z;
      if (f_star) slack = std::min(slack, rec.f_x - *f_star);
      audit.min_ordering_slack = std::min(audit.min_ordering_slack, slack);
      if (slack < -kOrderingSlackTol) ++audit.ordering_violations;
    }
    if (rec.lemma34_slack) {
      audit.min_descent_slack = std::min(audit.min_descent_slack, *rec.lemma34_slack);
      if (*rec.lemma34_slack < -kDescentSlackTol) ++audit.descent_slack_violations;
    }
  }
  return audit;
}

}  // namespace radial
