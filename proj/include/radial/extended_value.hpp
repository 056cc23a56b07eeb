#pragma once

#include <cmath>
#include <limits>

#include "radial/errors.hpp"

namespace radial {

// Objective values live in R ∪ {+inf}; +inf marks points outside dom f.
// NaN and -inf are rejected at construction, so comparisons downstream
// never have to reckon with them.
class ExtendedValue {
 public:
  ExtendedValue() = default;

  ExtendedValue(double v) : v_(v) {  // implicit on purpose: oracles return doubles
    if (std::isnan(v)) throw OracleError("objective value is NaN");
    if (v == -std::numeric_limits<double>::infinity())
      throw OracleError("objective value is -inf");
  }

  static ExtendedValue infinity() {
    ExtendedValue e;
    e.v_ = std::numeric_limits<double>::infinity();
    return e;
  }

  bool is_finite() const { return v_ != std::numeric_limits<double>::infinity(); }

  // Finite payload; calling this on +inf is an oracle/contract failure.
  double finite() const {
    if (!is_finite()) throw OracleError("expected a finite objective value");
    return v_;
  }

  // gamma * f for gamma > 0; +inf is absorbing.
  ExtendedValue scaled_by(double gamma) const {
    if (!is_finite()) return *this;
    return ExtendedValue(v_ * gamma);
  }

  bool operator<=(double rhs) const { return v_ <= rhs; }
  bool operator<(double rhs) const { return v_ < rhs; }
  bool operator>(double rhs) const { return v_ > rhs; }
  bool operator>=(double rhs) const { return v_ >= rhs; }

 private:
  double v_ = 0.0;
};

}  // namespace radial
