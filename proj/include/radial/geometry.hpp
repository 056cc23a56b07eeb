#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "radial/problem.hpp"

namespace radial {

// Perspective transform gamma * f(x / gamma), defined for gamma > 0; +inf
// when x/gamma leaves dom f. Strictly decreasing in gamma whenever
// f(0) < 0, which is what makes the level crossing below bisectable.
inline ExtendedValue perspective_value(const ProblemInstance& problem,
                                       const Point& x, double gamma) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("perspective_value: gamma must be positive");
  return evaluate(problem, scaled(x, 1.0 / gamma)).scaled_by(gamma);
}

// Evaluates the radial reformulation
//
//     gamma_z(x) = inf{ gamma > 0 : gamma * f(x / gamma) <= z }
//
// for z < 0 by bracketing the crossing scale and bisecting. Monotonicity
// makes the feasible scales an upper interval, so the search keeps the
// invariant "constraint fails at lo, holds at hi" and the returned upper
// endpoint always satisfies the level constraint. Scales that sink to
// cfg.gamma_min with the constraint still holding are reported as zero:
// the point generates a ray along which f is unbounded below, a condition
// the search can certify only numerically.
inline GammaResult eval_gamma(const ProblemInstance& problem, double z,
                              const Point& x, const LineSearchConfig& cfg = {}) {
  cfg.validate();
  if (!(z < 0.0))
    throw std::invalid_argument("eval_gamma: level z must be negative");
  if (x.size() != problem.dimension)
    throw std::invalid_argument("eval_gamma: point dimension mismatch");

  Point probe(x.size());
  auto level_holds = [&](double gamma) {
    const double inv = 1.0 / gamma;
    for (std::size_t i = 0; i < x.size(); ++i) probe[i] = x[i] * inv;
    return problem.value_oracle(probe).scaled_by(gamma) <= z;
  };

  double lo = 0.0, hi = 0.0;
  if (level_holds(cfg.initial_guess)) {
    // Walk down until the constraint fails or the scale becomes negligible.
    double g = cfg.initial_guess;
    bool bracketed = false;
    for (int k = 0; k < cfg.max_expansions && !bracketed; ++k) {
      if (g <= cfg.gamma_min) return GammaZero{g};
      const double next = 0.5 * g;
      if (!level_holds(next)) {
        lo = next;
        hi = g;
        bracketed = true;
      } else {
        g = next;
      }
    }
    if (!bracketed) {
      if (g <= cfg.gamma_min) return GammaZero{g};
      throw std::runtime_error(
          "eval_gamma: halving exhausted max_expansions without bracketing");
    }
  } else {
    // Walk up; gamma * f(x/gamma) -> gamma * f(0) -> -inf, so a canonical
    // instance always yields a bracket.
    double g = cfg.initial_guess;
    bool bracketed = false;
    for (int k = 0; k < cfg.max_expansions && !bracketed; ++k) {
      const double next = 2.0 * g;
      if (level_holds(next)) {
        lo = g;
        hi = next;
        bracketed = true;
      } else {
        g = next;
      }
    }
    if (!bracketed)
      throw std::runtime_error(
          "eval_gamma: doubling exhausted max_expansions; objective does not "
          "look like a canonicalized convex instance");
  }

  while (hi - lo > cfg.gamma_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // floating-point resolution reached
    if (level_holds(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  if (hi <= cfg.gamma_min) return GammaZero{hi};
  return GammaPositive{hi, hi - lo};
}

// One subgradient of gamma_z at x, assembled from an epigraph normal
// (zeta, delta) at the scaled boundary point (x/gamma, z/gamma):
//
//     (gamma / (<zeta, x> + delta * z)) * zeta.
//
// The denominator is positive for every valid normal at a boundary point of
// a canonical instance; a nonpositive one indicates a broken oracle.
// `gamma` must be the value of gamma_z at x (from eval_gamma or a closed
// form), which puts the scaled point on the epigraph boundary.
inline Point gamma_subgradient(const ProblemInstance& problem, double z,
                               const Point& x, double gamma) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("gamma_subgradient: gamma must be positive");
  if (!(z < 0.0))
    throw std::invalid_argument("gamma_subgradient: level z must be negative");
  const EpigraphNormal n =
      boundary_normal(problem, scaled(x, 1.0 / gamma), z / gamma);
  const double denom = dot(n.zeta, x) + n.delta * z;
  if (!(denom > 1e-12))
    throw DegenerateNormalError(
        "gamma_subgradient: denominator <zeta, x> + delta * z is not positive; "
        "the oracle normal is invalid for this boundary point");
  return scaled(n.zeta, gamma / denom);
}

// Brute-force reference for gamma_z: the smallest scale on a uniform grid
// over [lo, hi] that satisfies the level constraint, or nullopt when none
// does. Exists to cross-check eval_gamma in tests; the solvers never call
// it.
inline std::optional<double> gamma_grid_oracle(const ProblemInstance& problem,
                                               double z, const Point& x,
                                               double lo, double hi,
                                               long steps) {
  if (!(z < 0.0))
    throw std::invalid_argument("gamma_grid_oracle: level z must be negative");
  if (!(lo > 0.0) || !(lo < hi))
    throw std::invalid_argument("gamma_grid_oracle: need 0 < lo < hi");
  if (steps < 2)
    throw std::invalid_argument("gamma_grid_oracle: need at least 2 steps");
  if (x.size() != problem.dimension)
    throw std::invalid_argument("gamma_grid_oracle: point dimension mismatch");

  Point probe(x.size());
  const double dg = (hi - lo) / static_cast<double>(steps - 1);
  for (long k = 0; k < steps; ++k) {
    const double g = lo + dg * static_cast<double>(k);
    const double inv = 1.0 / g;
    for (std::size_t i = 0; i < x.size(); ++i) probe[i] = x[i] * inv;
    if (problem.value_oracle(probe).scaled_by(g) <= z) return g;
  }
  return std::nullopt;
}

}  // namespace radial
