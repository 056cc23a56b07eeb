#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "radial/solvers.hpp"

namespace radial {

// The four worst-case iteration guarantees that can be checked empirically.
enum class TheoremKind { EpsTarget, KnownOptimum, RenegarA, RenegarB };

inline const char* to_string(TheoremKind k) {
  switch (k) {
    case TheoremKind::EpsTarget: return "eps_target";
    case TheoremKind::KnownOptimum: return "known_optimum";
    case TheoremKind::RenegarA: return "renegar_a";
    case TheoremKind::RenegarB: return "renegar_b";
  }
  return "unknown";
}

namespace detail {

inline std::size_t ceil_to_iterations(double v, const char* who) {
  if (!std::isfinite(v) || v < 0.0)
    throw std::invalid_argument(std::string(who) + ": bound is not a finite count");
  return static_cast<std::size_t>(std::ceil(v));
}

inline void require_positive(double v, const char* who, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(who) + ": " + name + " must be positive and finite");
}

}  // namespace detail

// Iterations after which the epsilon-target rule guarantees some iterate has
// relative accuracy epsilon: ceil((4/3) * dist^2 / (R^2 * epsilon^2)).
inline std::size_t eps_target_bound(double dist, double R, double epsilon) {
  detail::require_positive(dist, "eps_target_bound", "dist");
  detail::require_positive(R, "eps_target_bound", "R");
  detail::require_positive(epsilon, "eps_target_bound", "epsilon");
  return detail::ceil_to_iterations(
      (4.0 / 3.0) * (dist * dist) / (R * R) / (epsilon * epsilon), "eps_target_bound");
}

// Same guarantee for the known-optimum rule: ceil(dist^2 / (R^2 * epsilon^2)).
inline std::size_t known_optimum_bound(double dist, double R, double epsilon) {
  detail::require_positive(dist, "known_optimum_bound", "dist");
  detail::require_positive(R, "known_optimum_bound", "R");
  detail::require_positive(epsilon, "known_optimum_bound", "epsilon");
  return detail::ceil_to_iterations(
      (dist * dist) / (R * R) / (epsilon * epsilon), "known_optimum_bound");
}

// Fixed-level baseline A:
// ceil(8 (D/R)^2 (1/eps^2 + (1/eps) * log_{4/3}(1 + D/R))).
inline std::size_t renegar_a_bound(double D, double R, double epsilon) {
  detail::require_positive(D, "renegar_a_bound", "D");
  detail::require_positive(R, "renegar_a_bound", "R");
  detail::require_positive(epsilon, "renegar_a_bound", "epsilon");
  const double ratio = D / R;
  const double log43 = std::log(1.0 + ratio) / std::log(4.0 / 3.0);
  return detail::ceil_to_iterations(
      8.0 * ratio * ratio * (1.0 / (epsilon * epsilon) + log43 / epsilon),
      "renegar_a_bound");
}

// Fixed-level baseline B, valid for 0 < eps < 1 with q = (1 - eps)/eps:
// ceil(4 (D/R)^2 ((4/3) q^2 + 4 q + log2(q) + log2(D/R) + 1)).
inline std::size_t renegar_b_bound(double D, double R, double epsilon) {
  detail::require_positive(D, "renegar_b_bound", "D");
  detail::require_positive(R, "renegar_b_bound", "R");
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("renegar_b_bound: epsilon must lie in (0, 1)");
  const double ratio = D / R;
  const double q = (1.0 - epsilon) / epsilon;
  return detail::ceil_to_iterations(
      4.0 * ratio * ratio *
          ((4.0 / 3.0) * q * q + 4.0 * q + std::log2(q) + std::log2(ratio) + 1.0),
      "renegar_b_bound");
}

// First trace row whose objective is within relative accuracy epsilon of
// f_ref, recomputed from the stored objective values.
inline std::optional<std::size_t> first_iteration_within(const RunTrace& trace,
                                                         double f_ref,
                                                         double epsilon) {
  for (const IterateRecord& rec : trace.records)
    if (relative_accuracy(rec.f_x, f_ref) <= epsilon) return rec.iter;
  return std::nullopt;
}

struct BoundCheckReport {
  TheoremKind theorem = TheoremKind::EpsTarget;
  double epsilon = 0.0;
  std::size_t bound_iterations = 0;
  std::optional<std::size_t> achieved_iteration;
  bool passed = false;
};

// Runs the algorithm the theorem speaks about for its guaranteed iteration
// count and records whether the guarantee held. Throws std::invalid_argument
// naming any metadata field the bound formula needs but the instance lacks.
inline BoundCheckReport verify_bound(const ProblemInstance& problem,
                                     TheoremKind kind, double epsilon,
                                     const SolverConfig& base = {}) {
  auto need = [](const std::optional<double>& v, const char* name) {
    if (!v)
      throw std::invalid_argument(std::string("verify_bound: metadata.") + name +
                                  " is required for this theorem");
    return *v;
  };
  const double f_star = need(problem.metadata.f_star, "f_star");
  const double R = need(problem.metadata.radius_R, "radius_R");

  BoundCheckReport report;
  report.theorem = kind;
  report.epsilon = epsilon;

  SolverConfig cfg = base;
  cfg.target_epsilon = epsilon;  // stop as soon as the guarantee is met

  RunTrace trace;
  switch (kind) {
    case TheoremKind::EpsTarget: {
      const double dist = need(problem.metadata.dist_to_opt, "dist_to_opt");
      report.bound_iterations = eps_target_bound(dist, R, epsilon);
      cfg.max_iters = report.bound_iterations;
      trace = radial_subgradient_run(problem, EpsilonTarget{epsilon}, cfg);
      break;
    }
    case TheoremKind::KnownOptimum: {
      const double dist = need(problem.metadata.dist_to_opt, "dist_to_opt");
      report.bound_iterations = known_optimum_bound(dist, R, epsilon);
      cfg.max_iters = report.bound_iterations;
      trace = radial_subgradient_run(problem, KnownOptimum{f_star}, cfg);
      break;
    }
    case TheoremKind::RenegarA: {
      const double D = need(problem.metadata.diameter_D, "diameter_D");
      report.bound_iterations = renegar_a_bound(D, R, epsilon);
      cfg.max_iters = report.bound_iterations;
      trace = renegar_a_run(problem, epsilon, cfg);
      break;
    }
    case TheoremKind::RenegarB: {
      const double D = need(problem.metadata.diameter_D, "diameter_D");
      report.bound_iterations = renegar_b_bound(D, R, epsilon);
      cfg.max_iters = report.bound_iterations;
      trace = renegar_b_run(problem, f_star, cfg);
      break;
    }
  }
  report.achieved_iteration = first_iteration_within(trace, f_star, epsilon);
  report.passed = report.achieved_iteration.has_value() &&
                  *report.achieved_iteration <= report.bound_iterations;
  return report;
}

}  // namespace radial
