#pragma once

#include <stdexcept>
#include <string>

namespace specdis {

/// Parameters that violate a model invariant (B <= 0, too few sites, ...).
class InvalidSpec : public std::invalid_argument {
 public:
  explicit InvalidSpec(const std::string& what) : std::invalid_argument(what) {}
};

/// Bad argument to an otherwise well-formed call.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A computed quantity broke a numerical invariant (norm drift, lost
/// positivity, integrator did not converge).
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace specdis
