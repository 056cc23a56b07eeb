#pragma once

#include <stdexcept>

namespace radial {

// An oracle broke its contract: NaN objective, invalid normal, etc.
struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The normal at the queried boundary point cannot be turned into a
// subgradient (nonpositive or vanishing denominator).
struct DegenerateNormalError : OracleError {
  using OracleError::OracleError;
};

// A caller handed geometry that violates a documented precondition,
// e.g. a point that is not on the epigraph boundary.
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problem-file parsing or validation failure; the message starts with the
// path of the offending field.
struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace radial
