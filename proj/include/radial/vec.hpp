#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace radial {

// Points are plain coordinate vectors; the solvers need only a handful of
// dense operations, provided here as free functions.
using Point = std::vector<double>;

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_squared(const Point& a) { return dot(a, a); }

inline double norm(const Point& a) { return std::sqrt(norm_squared(a)); }

inline Point scaled(const Point& a, double s) {
  Point out(a);
  for (double& v : out) v *= s;
  return out;
}

inline Point add(const Point& a, const Point& b) {
  Point out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

inline Point subtract(const Point& a, const Point& b) {
  Point out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

inline double distance_squared(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double distance(const Point& a, const Point& b) {
  return std::sqrt(distance_squared(a, b));
}

// a - alpha * g, the subgradient step.
inline Point step_from(const Point& a, double alpha, const Point& g) {
  Point out(a);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] -= alpha * g[i];
  return out;
}

}  // namespace radial
