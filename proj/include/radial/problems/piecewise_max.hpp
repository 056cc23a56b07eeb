#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "radial/problem.hpp"

namespace radial {

// f(x) = max_i (<a_i, x> + b_i) with every b_i < 0, so f(0) = max_i b_i < 0
// and the whole space is the domain. Finite everywhere, non-smooth along
// the piece switching surfaces.
struct PiecewisePiece {
  Point a;
  double b = 0.0;
};

struct PiecewiseMaxData {
  std::vector<PiecewisePiece> pieces;
};

namespace detail {

// Solves a 3x3 system by Gaussian elimination with partial pivoting;
// returns false when the matrix is (numerically) singular. Used only by
// the two-dimensional piecewise metadata enumeration below.
inline bool solve3(std::array<std::array<double, 4>, 3> m, std::array<double, 3>& out) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (std::abs(m[pivot][col]) < 1e-12) return false;
    std::swap(m[col], m[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double factor = m[r][col] / m[col][col];
      for (int cc = col; cc < 4; ++cc) m[r][cc] -= factor * m[col][cc];
    }
  }
  for (int i = 0; i < 3; ++i) out[i] = m[i][3] / m[i][i];
  return true;
}

}  // namespace detail

inline ProblemInstance make_piecewise_max(PiecewiseMaxData data) {
  if (data.pieces.empty())
    throw std::invalid_argument("make_piecewise_max: need at least one piece");
  const std::size_t n = data.pieces.front().a.size();
  if (n == 0)
    throw std::invalid_argument("make_piecewise_max: pieces must have nonzero dimension");
  double b_max = -std::numeric_limits<double>::infinity();
  for (const PiecewisePiece& p : data.pieces) {
    if (p.a.size() != n)
      throw std::invalid_argument("make_piecewise_max: inconsistent piece dimensions");
    b_max = std::max(b_max, p.b);
  }
  if (!(b_max < 0.0))
    throw std::invalid_argument("make_piecewise_max: max_i b_i = f(0) must be negative");

  ProblemInstance out;
  out.dimension = n;

  const std::vector<PiecewisePiece> pieces = data.pieces;
  out.value_oracle = [pieces](const Point& x) -> ExtendedValue {
    double best = -std::numeric_limits<double>::infinity();
    for (const PiecewisePiece& p : pieces) best = std::max(best, dot(p.a, x) + p.b);
    return best;
  };

  out.normal_oracle = [pieces](const Point& x, double t) -> EpigraphNormal {
    double fx = -std::numeric_limits<double>::infinity();
    for (const PiecewisePiece& p : pieces) fx = std::max(fx, dot(p.a, x) + p.b);
    const double obj_tol = 1e-8 * std::max(1.0, std::abs(t));
    if (fx > t + obj_tol)
      throw ContractError("piecewise normal oracle: (x, t) lies outside the epigraph");
    if (fx < t - obj_tol)
      throw ContractError("piecewise normal oracle: (x, t) is interior to the epigraph");
    // Lowest-index piece attaining the max, for a deterministic answer on
    // the switching surfaces.
    const double active_tol = 1e-9 * std::max(1.0, std::abs(fx));
    for (const PiecewisePiece& p : pieces)
      if (fx - (dot(p.a, x) + p.b) <= active_tol) return EpigraphNormal{p.a, -1.0};
    throw ContractError("piecewise normal oracle: no active piece found");  // unreachable
  };

  // Inradius of {f <= 0}: min_i over nonconstant pieces of (-b_i)/||a_i||,
  // the distance from the origin to the halfspace boundary {<a_i,x> + b_i = 0}.
  double R = std::numeric_limits<double>::infinity();
  for (const PiecewisePiece& p : pieces)
    if (norm_squared(p.a) > 0.0) R = std::min(R, -p.b / norm(p.a));
  if (std::isfinite(R)) out.metadata.radius_R = R;

  const double inf = std::numeric_limits<double>::infinity();
  if (n == 1) {
    // The envelope's slope at +/-inf decides boundedness; the minimum of a
    // bounded envelope sits at a piece intersection (or the envelope is
    // flat).
    double a_min = inf, a_max = -inf;
    for (const PiecewisePiece& p : pieces) {
      a_min = std::min(a_min, p.a[0]);
      a_max = std::max(a_max, p.a[0]);
    }
    if (a_max >= 0.0 && a_min <= 0.0) {
      auto value_at = [&](double xx) {
        double v = -inf;
        for (const PiecewisePiece& p : pieces) v = std::max(v, p.a[0] * xx + p.b);
        return v;
      };
      double best_f = b_max, best_x = 0.0;  // covers the all-flat case
      for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
          const double da = pieces[i].a[0] - pieces[j].a[0];
          if (da == 0.0) continue;
          const double xx = (pieces[j].b - pieces[i].b) / da;
          const double v = value_at(xx);
          if (v < best_f) {
            best_f = v;
            best_x = xx;
          }
        }
      out.metadata.f_star = best_f;
      out.metadata.optimum = Point{best_x};
      out.metadata.dist_to_opt = std::abs(best_x);
      // Diameter of {f <= f(0)}: the interval cut out by a_i x <= f(0) - b_i.
      double lo = -inf, hi = inf;
      for (const PiecewisePiece& p : pieces) {
        if (p.a[0] > 0.0) hi = std::min(hi, (b_max - p.b) / p.a[0]);
        else if (p.a[0] < 0.0) lo = std::max(lo, (b_max - p.b) / p.a[0]);
      }
      if (std::isfinite(lo) && std::isfinite(hi) && hi > lo)
        out.metadata.diameter_D = hi - lo;
    }
  } else if (n == 2 && pieces.size() >= 3) {
    // The envelope is bounded below iff no direction d has <a_i,d> < 0 for
    // every piece, i.e. the slope vectors do not all fit in an open
    // halfplane. A piece with zero slope bounds f outright; otherwise the
    // largest cyclic gap between slope angles decides.
    bool bounded = false;
    std::vector<double> angles;
    for (const PiecewisePiece& p : pieces) {
      if (norm_squared(p.a) == 0.0) bounded = true;
      else angles.push_back(std::atan2(p.a[1], p.a[0]));
    }
    if (!bounded && !angles.empty()) {
      std::sort(angles.begin(), angles.end());
      double max_gap = angles.front() + 2.0 * M_PI - angles.back();
      for (std::size_t i = 1; i < angles.size(); ++i)
        max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
      bounded = max_gap <= M_PI + 1e-9;
    }
    if (!bounded) return out;

    // Vertices of the epigraph lower envelope: solve t = <a_i,x> + b_i for
    // each triple of pieces and keep the feasible vertex with least t.
    double best_t = inf;
    Point best_x;
    for (std::size_t i = 0; i < pieces.size(); ++i)
      for (std::size_t j = i + 1; j < pieces.size(); ++j)
        for (std::size_t k = j + 1; k < pieces.size(); ++k) {
          std::array<std::array<double, 4>, 3> m{{
              {{pieces[i].a[0], pieces[i].a[1], -1.0, -pieces[i].b}},
              {{pieces[j].a[0], pieces[j].a[1], -1.0, -pieces[j].b}},
              {{pieces[k].a[0], pieces[k].a[1], -1.0, -pieces[k].b}},
          }};
          std::array<double, 3> sol{};
          if (!detail::solve3(m, sol)) continue;
          const Point cand{sol[0], sol[1]};
          double v = -inf;
          for (const PiecewisePiece& p : pieces) v = std::max(v, dot(p.a, cand) + p.b);
          if (v > sol[2] + 1e-7 * std::max(1.0, std::abs(sol[2]))) continue;  // infeasible vertex
          if (v < best_t) {
            best_t = v;
            best_x = cand;
          }
        }
    if (std::isfinite(best_t)) {
      out.metadata.f_star = best_t;
      out.metadata.optimum = best_x;
      out.metadata.dist_to_opt = norm(best_x);
    }
  }

  return out;
}

}  // namespace radial
