#pragma once

#include <stdexcept>
#include <string>

namespace treepot {

/// Word that does not name a vertex of the tree.
class AddressError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Query outside the region a table or function was computed on.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Fixed-point or linear solver did not converge within its budget.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double worst_width)
      : std::runtime_error(what), worst_width_(worst_width) {}
  double worst_width() const noexcept { return worst_width_; }

 private:
  double worst_width_;
};

/// Brackets too wide to certify a derived quantity (increase the depth).
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Size cap exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid tree spec or experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace treepot

namespace treepot {

/// A walk ran out of steps before reaching its target.
class HorizonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace treepot
