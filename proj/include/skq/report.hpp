#pragma once

#include <string>
#include <vector>

namespace skq {

/// One named numerical check: passes when value <= tolerance.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;

  bool passed() const { return value <= tolerance; }
};

inline bool all_passed(const std::vector<Check>& checks) {
  for (const Check& c : checks) {
    if (!c.passed()) return false;
  }
  return true;
}

}  // namespace skq
