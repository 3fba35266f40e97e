#pragma once

#include <stdexcept>
#include <string>

namespace klean {

// Always-on integrity check for algorithm invariants. These guard internal
// consistency (potential decrease, uniqueness arguments, ...) and must not be
// compiled out in release builds, so plain assert() is not used.
inline void internal_check(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("internal check failed: " + what);
}

}  // namespace klean
