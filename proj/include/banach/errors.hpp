#pragma once

#include <stdexcept>
#include <string>

namespace banach {

/// Input outside the mathematical domain of an operation (zero vector where a
/// nonzero one is required, non-finite coordinate, p < 2 for the exact path).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The operation needs a smooth exponent (1 < p < infinity) or an integer one.
class UnsupportedExponent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// T = 0 where a nonzero operator is required.
class DegenerateOperator : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// T is a scalar multiple of an isometry, so M_T is the whole unit sphere and
/// cannot be enumerated.
class IsometryMultiple : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A candidate polynomial vanished identically on a sign region: a continuum
/// of candidates that the isometry test should have caught.
class IsometryLike : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace banach
