#pragma once

#include <stdexcept>
#include <string>

namespace recset {

/// Violation of a library invariant. Anything thrown as InternalError means a
/// bug in this library (or a broken precondition check), not bad user input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

namespace detail {

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline void ensure(bool cond, const char* msg) {
  if (!cond) throw InternalError(msg);
}

}  // namespace detail

}  // namespace recset
