#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "kloos/bigint.hpp"

namespace kloos {

/// One exact two-sided comparison. `detail` carries context such as the offending β.
struct Check {
  std::string name;
  bool passed = false;
  BigInt lhs;
  BigInt rhs;
  std::string detail;
};

inline Check compare(std::string name, BigInt lhs, BigInt rhs, std::string detail = {}) {
  const bool ok = lhs == rhs;
  return Check{std::move(name), ok, std::move(lhs), std::move(rhs), std::move(detail)};
}

inline Check assertion(std::string name, bool ok, std::string detail = {}) {
  return Check{std::move(name), ok, ok ? 1 : 0, 1, std::move(detail)};
}

inline bool all_passed(const std::vector<Check>& checks) {
  return std::ranges::all_of(checks, [](const Check& c) { return c.passed; });
}

}  // namespace kloos
