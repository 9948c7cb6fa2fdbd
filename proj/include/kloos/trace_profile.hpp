#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kloos/bigint.hpp"
#include "kloos/constants.hpp"

namespace kloos {

/// β ↦ N(β), the number of coordinates (double-coset elements) whose matrix trace is β,
/// indexed by element code. Determines the code C(DC) up to coordinate permutation.
struct TraceProfile {
  std::optional<CosetFamily> family;
  int n = 0;
  std::vector<BigInt> counts;

  BigInt total() const {
    BigInt sum = 0;
    for (const BigInt& c : counts) sum += c;
    return sum;
  }
  friend bool operator==(const TraceProfile&, const TraceProfile&) = default;
};

}  // namespace kloos
