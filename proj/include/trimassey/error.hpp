#ifndef TRIMASSEY_ERROR_HPP
#define TRIMASSEY_ERROR_HPP

#include <stdexcept>
#include <string>

namespace trimassey {

/// Malformed or out-of-range user input (bad letter, dimension mismatch, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural data that parses but violates an invariant (simplicial identities,
/// non-simplicial maps, missing simplices).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its domain (e.g. p_map on t with l(t) != 0).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal consistency check failed. Indicates a bug upstream or violated
/// hypotheses on the input group.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trimassey

#endif
