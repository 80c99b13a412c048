#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpzoom {

/// Raised on non-finite, non-positive or otherwise malformed inputs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The KKT system could not be factorized.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The solved grid has a non-positive interval (or a non-monotone knot).
/// `index()` is the offending position in the stacked (d_row, d_col) vector.
class DegenerateDeformation : public std::runtime_error {
 public:
  DegenerateDeformation(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A point or box lies outside the domain of an axis map.
class OutOfDomain : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace qpzoom
