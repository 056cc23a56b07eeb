#pragma once

#include <stdexcept>
#include <variant>

namespace radial {

// Certified positive value of the radial reformulation at a point, together
// with the width of the final bisection bracket (0 for closed forms).
struct GammaPositive {
  double gamma = 0.0;
  double bracket_width = 0.0;
};

// The line search descended below gamma_min with the level constraint still
// satisfied: the queried point generates a ray along which the objective is
// unbounded below. witness_gamma is the last scale at which the constraint
// was seen to hold.
struct GammaZero {
  double witness_gamma = 0.0;
};

using GammaResult = std::variant<GammaPositive, GammaZero>;

inline bool is_zero(const GammaResult& r) {
  return std::holds_alternative<GammaZero>(r);
}

inline double gamma_value(const GammaResult& r) {
  if (const auto* p = std::get_if<GammaPositive>(&r)) return p->gamma;
  throw std::logic_error("gamma_value called on a zero-detected result");
}

// Controls the bracketing line search that evaluates the radial
// reformulation.
struct LineSearchConfig {
  double gamma_tol = 1e-10;   // relative bracket width at which bisection stops
  double gamma_min = 1e-12;   // scales at or below this count as zero
  int max_expansions = 200;   // cap on bracket doublings/halvings
  double initial_guess = 1.0;

  void validate() const {
    if (!(gamma_tol > 0.0) || !(gamma_tol < 1.0))
      throw std::invalid_argument("gamma_tol must lie in (0, 1)");
    if (!(gamma_min > 0.0) || !(gamma_min < initial_guess))
      throw std::invalid_argument("gamma_min must be positive and below initial_guess");
    if (max_expansions < 1)
      throw std::invalid_argument("max_expansions must be at least 1");
  }
};

}  // namespace radial
