#pragma once

#include <string>
#include <vector>

namespace qls {

/// Outcome of one identity family in a verification suite.
struct IdentityCheck {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string first_failure;  // empty when passed

  void fail(std::string what) {
    if (passed) first_failure = std::move(what);
    passed = false;
  }
};

inline bool all_passed(const std::vector<IdentityCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

}  // namespace qls
