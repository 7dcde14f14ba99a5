#pragma once

#include <stdexcept>
#include <string>

namespace uplab {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A parameter-selection window turned out empty.
class infeasible_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Exponent lies in the wrong regime (sub/critical/supercritical) for the request.
class regime_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// The Cowling-Price homogeneity relation 1/q + phi/d = 1/p + theta/d fails.
class homogeneity_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// An integral or moment does not exist, or quadrature failed to converge.
class divergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested object exceeds a hard size cap or does not fit its container grid.
class size_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Grid function not resolved well enough for the discrete transform.
class transform_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uplab
