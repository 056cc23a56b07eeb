#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "radial/problem.hpp"

namespace radial {

// f(x) = <c, x> - h on the polyhedron {A x <= b}, +inf outside it.
// Requiring b > 0 keeps the origin strictly feasible, and h > 0 gives
// f(0) = -h < 0, so instances are canonical by construction.
struct LinearProgramData {
  std::vector<Point> A;   // constraint normals, one row per constraint
  std::vector<double> b;  // all strictly positive
  Point c;
  double h = 1.0;
};

// Exact radial reformulation. The level constraint splits per row:
//   gamma f(x/gamma) <= z  <=>  <c,x> - gamma h <= z  and  A x <= gamma b,
// so the infimum scale is max((<c,x> - z)/h, max_i <A_i,x>/b_i), and a
// nonpositive maximum means every positive scale is feasible (gamma_z = 0).
inline GammaResult lp_gamma_closed_form(const LinearProgramData& data,
                                        const Point& x, double z) {
  double best = (dot(data.c, x) - z) / data.h;
  for (std::size_t i = 0; i < data.A.size(); ++i)
    best = std::max(best, dot(data.A[i], x) / data.b[i]);
  if (best > 0.0) return GammaPositive{best, 0.0};
  return GammaZero{LineSearchConfig{}.gamma_min};
}

inline ProblemInstance make_linear_program(LinearProgramData data) {
  const std::size_t n = data.c.size();
  if (n == 0) throw std::invalid_argument("make_linear_program: c must be nonempty");
  if (data.A.size() != data.b.size())
    throw std::invalid_argument("make_linear_program: A and b row counts differ");
  for (const Point& row : data.A)
    if (row.size() != n)
      throw std::invalid_argument("make_linear_program: A row length does not match c");
  for (double bi : data.b)
    if (!(bi > 0.0))
      throw std::invalid_argument("make_linear_program: b must be strictly positive");
  if (!(data.h > 0.0))
    throw std::invalid_argument("make_linear_program: h must be positive");

  ProblemInstance out;
  out.dimension = n;

  out.value_oracle = [data](const Point& x) -> ExtendedValue {
    for (std::size_t i = 0; i < data.A.size(); ++i)
      if (dot(data.A[i], x) > data.b[i]) return ExtendedValue::infinity();
    return dot(data.c, x) - data.h;
  };

  out.normal_oracle = [data](const Point& x, double t) -> EpigraphNormal {
    // Constraint-active rows take precedence; among several, the lowest
    // index wins so the oracle is deterministic.
    int active = -1;
    for (std::size_t i = 0; i < data.A.size(); ++i) {
      if (norm_squared(data.A[i]) == 0.0) continue;  // vacuous row
      const double ax = dot(data.A[i], x);
      const double row_tol = 1e-8 * std::max(1.0, std::abs(data.b[i]));
      if (ax > data.b[i] + row_tol)
        throw ContractError("lp normal oracle: point lies outside the domain");
      if (active < 0 && std::abs(ax - data.b[i]) <= row_tol)
        active = static_cast<int>(i);
    }
    const double fx = dot(data.c, x) - data.h;
    const double obj_tol = 1e-8 * std::max(1.0, std::abs(t));
    if (fx > t + obj_tol)
      throw ContractError("lp normal oracle: (x, t) lies outside the epigraph");
    if (active >= 0) return EpigraphNormal{data.A[active], 0.0};
    if (std::abs(fx - t) <= obj_tol) return EpigraphNormal{data.c, -1.0};
    throw ContractError("lp normal oracle: (x, t) is interior to the epigraph");
  };

  out.closed_form_gamma = [data](const Point& x, double z) {
    return lp_gamma_closed_form(data, x, z);
  };

  // Inradius of {f <= 0} about the origin: the nearest of the bounding
  // halfspace boundaries {<c,x> = h} and {<A_i,x> = b_i}.
  double R = std::numeric_limits<double>::infinity();
  if (norm_squared(data.c) > 0.0) R = data.h / norm(data.c);
  for (std::size_t i = 0; i < data.A.size(); ++i)
    if (norm_squared(data.A[i]) > 0.0)
      R = std::min(R, data.b[i] / norm(data.A[i]));
  if (std::isfinite(R)) out.metadata.radius_R = R;

  // For one-dimensional instances the feasible interval can be enumerated,
  // which yields the minimizer and the sublevel-set diameter exactly.
  if (n == 1) {
    const double inf = std::numeric_limits<double>::infinity();
    double L = -inf, U = inf;
    for (std::size_t i = 0; i < data.A.size(); ++i) {
      const double a = data.A[i][0];
      if (a > 0.0) U = std::min(U, data.b[i] / a);
      else if (a < 0.0) L = std::max(L, data.b[i] / a);
    }
    const double c0 = data.c[0];
    if (c0 == 0.0) {
      out.metadata.f_star = -data.h;
      out.metadata.optimum = Point{0.0};
      out.metadata.dist_to_opt = 0.0;
    } else {
      const double x_opt = c0 < 0.0 ? U : L;
      if (std::isfinite(x_opt)) {
        out.metadata.f_star = c0 * x_opt - data.h;
        out.metadata.optimum = Point{x_opt};
        out.metadata.dist_to_opt = std::abs(x_opt);
      }
    }
    // Diameter of {f <= f(0)} = {<c,x> <= 0} ∩ [L, U].
    double lo = L, hi = U;
    if (c0 > 0.0) hi = std::min(hi, 0.0);
    else if (c0 < 0.0) lo = std::max(lo, 0.0);
    if (std::isfinite(lo) && std::isfinite(hi))
      out.metadata.diameter_D = hi - lo;
  }

  return out;
}

}  // namespace radial
