#pragma once

#include <stdexcept>

namespace hadstar {

// Input that violates a documented precondition (bad radius, bad cap, ...).
class invalid_parameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation not defined for this domain representation.
class unsupported_domain : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation requires a bounded domain.
class unbounded_domain : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Separation test needs a caller-supplied log-radius range.
class range_required : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// w . nu vanished; the sample does not define a dual point.
class degenerate_normal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Connected-component extraction lost the origin cell.
class origin_excluded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Node doubling did not converge within the node budget.
class quadrature_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An invariant the implementation guarantees was violated.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hadstar
