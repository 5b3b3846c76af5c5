#pragma once

#include <stdexcept>
#include <string>

namespace gplane {

// Internal invariant violation: a bug in this library, never a user error.
[[noreturn]] inline void fail(const std::string& msg) {
  throw std::logic_error(msg);
}

inline void check(bool cond, const char* msg) {
  if (!cond) throw std::logic_error(msg);
}

// Input validation: bad arguments or unsupported parameter ranges.
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace gplane
