#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>

#include "radial/errors.hpp"
#include "radial/extended_value.hpp"
#include "radial/gamma_result.hpp"
#include "radial/vec.hpp"

namespace radial {

// Outward normal (zeta, delta) of the epigraph of f at a boundary point.
// delta = -1 for gradient-type normals on the graph of f, delta = 0 for
// domain-constraint normals; delta is never positive.
struct EpigraphNormal {
  Point zeta;
  double delta = 0.0;
};

// Ground truth used by convergence and bound checks. Every field is
// optional; an absent field simply excludes the instance from the checks
// that would need it.
struct ProblemMetadata {
  std::optional<double> f_star;       // minimum value, always negative
  std::optional<Point> optimum;       // a minimizer
  std::optional<double> dist_to_opt;  // distance from the origin to the optimum
  std::optional<double> radius_R;     // largest origin-centered ball on which f <= 0
  std::optional<double> diameter_D;   // diameter of the sublevel set {f <= f(0)}
};

// Oracle bundle for a lower-semicontinuous convex objective with f(0) < 0
// and the origin interior to dom f. Instances are immutable after
// construction and safe to share across concurrent runs; oracles must be
// pure functions of their arguments.
struct ProblemInstance {
  std::size_t dimension = 0;
  std::function<ExtendedValue(const Point&)> value_oracle;
  // Normal of epi f at the boundary point (x, t); see boundary_normal.
  std::function<EpigraphNormal(const Point&, double)> normal_oracle;
  // Exact radial reformulation when the family has one, else empty.
  std::function<GammaResult(const Point&, double z)> closed_form_gamma;
  ProblemMetadata metadata;
};

inline ExtendedValue evaluate(const ProblemInstance& problem, const Point& x) {
  if (x.size() != problem.dimension)
    throw std::invalid_argument("evaluate: point dimension mismatch");
  return problem.value_oracle(x);
}

// Normal of epi f at (x, t). The point must lie on the epigraph boundary:
// the family oracle classifies it as objective-active (f(x) = t) or
// constraint-active (x on the domain boundary) and throws ContractError
// when the point is interior to, or outside of, the epigraph beyond
// tolerance. The returned normal is validated: never zero, delta <= 0.
inline EpigraphNormal boundary_normal(const ProblemInstance& problem,
                                      const Point& x, double t) {
  if (x.size() != problem.dimension)
    throw std::invalid_argument("boundary_normal: point dimension mismatch");
  EpigraphNormal n = problem.normal_oracle(x, t);
  if (n.delta > 0.0) throw OracleError("normal oracle returned delta > 0");
  if (n.delta == 0.0 && norm_squared(n.zeta) == 0.0)
    throw OracleError("normal oracle returned the zero normal");
  return n;
}

// Shift a raw objective so the translated instance satisfies f(0) = -h < 0:
// the new value oracle is x -> f_raw(x + x0) - f_raw(x0) - h. Epigraph
// normals are translation-invariant, so the raw normal oracle carries over
// at shifted arguments.
inline ProblemInstance canonicalize(
    std::function<ExtendedValue(const Point&)> raw_value,
    std::function<EpigraphNormal(const Point&, double)> raw_normal,
    const Point& x0, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("canonicalize: h must be positive");
  ExtendedValue at_x0 = raw_value(x0);
  if (!at_x0.is_finite())
    throw std::invalid_argument("canonicalize: f(x0) must be finite");
  const double offset = at_x0.finite() + h;

  ProblemInstance out;
  out.dimension = x0.size();
  out.value_oracle = [raw_value = std::move(raw_value), x0, offset](const Point& x) {
    ExtendedValue v = raw_value(add(x, x0));
    if (!v.is_finite()) return v;
    return ExtendedValue(v.finite() - offset);
  };
  if (raw_normal) {
    out.normal_oracle = [raw_normal = std::move(raw_normal), x0, offset](
                            const Point& x, double t) {
      return raw_normal(add(x, x0), t + offset);
    };
  }
  return out;
}

}  // namespace radial
