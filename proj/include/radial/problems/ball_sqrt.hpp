#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "radial/problem.hpp"

namespace radial {

// f(x) = -sqrt(1 - ||x - center||^2) on the unit ball around `center`,
// +inf outside. Requires ||center|| < 1 so that f(0) < 0. The gradient
// blows up toward the domain boundary, which makes this the stock
// non-Lipschitz test objective; everything about it is known in closed
// form: f* = -1 at the center, R = 1 - ||center||, D = 2 ||center||.
struct BallSqrtData {
  Point center;
};

inline ProblemInstance make_ball_sqrt(BallSqrtData data) {
  if (data.center.empty())
    throw std::invalid_argument("make_ball_sqrt: center must be nonempty");
  const double center_norm = norm(data.center);
  if (!(center_norm < 1.0))
    throw std::invalid_argument("make_ball_sqrt: ||center|| must be < 1");

  ProblemInstance out;
  out.dimension = data.center.size();

  const Point c = data.center;
  out.value_oracle = [c](const Point& x) -> ExtendedValue {
    double d2 = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double d = x[i] - c[i];
      d2 += d * d;
    }
    if (d2 > 1.0) return ExtendedValue::infinity();
    return -std::sqrt(1.0 - d2);
  };

  out.normal_oracle = [c](const Point& x, double t) -> EpigraphNormal {
    const double d = distance(x, c);
    if (d > 1.0 + 1e-8)
      throw ContractError("ball normal oracle: point lies outside the domain");
    const double obj_tol = 1e-8 * std::max(1.0, std::abs(t));
    if (std::abs(d - 1.0) <= 1e-8) {
      // Sphere face of the epigraph; the outward normal is radial.
      const double fx = -std::sqrt(std::max(0.0, 1.0 - d * d));
      if (fx > t + obj_tol)
        throw ContractError("ball normal oracle: (x, t) lies outside the epigraph");
      return EpigraphNormal{subtract(x, c), 0.0};
    }
    const double fx = -std::sqrt(1.0 - d * d);
    if (fx > t + obj_tol)
      throw ContractError("ball normal oracle: (x, t) lies outside the epigraph");
    if (std::abs(fx - t) <= obj_tol) {
      // Graph face: gradient (x - c) / sqrt(1 - ||x - c||^2).
      return EpigraphNormal{scaled(subtract(x, c), 1.0 / std::sqrt(1.0 - d * d)), -1.0};
    }
    throw ContractError("ball normal oracle: (x, t) is interior to the epigraph");
  };

  // gamma f(x/gamma) <= z with both sides negative squares to the quadratic
  // (1 - ||c||^2) gamma^2 + 2 <x, c> gamma - (||x||^2 + z^2) = 0, whose
  // positive root is gamma_z(x); it is never zero because f* = -1 is finite.
  out.closed_form_gamma = [c](const Point& x, double z) -> GammaResult {
    const double a = 1.0 - norm_squared(c);
    const double b = 2.0 * dot(x, c);
    const double k = norm_squared(x) + z * z;
    const double disc = b * b + 4.0 * a * k;
    return GammaPositive{(-b + std::sqrt(disc)) / (2.0 * a), 0.0};
  };

  out.metadata.f_star = -1.0;
  out.metadata.optimum = c;
  out.metadata.dist_to_opt = center_norm;
  out.metadata.radius_R = 1.0 - center_norm;
  if (center_norm > 0.0) out.metadata.diameter_D = 2.0 * center_norm;
  return out;
}

}  // namespace radial
