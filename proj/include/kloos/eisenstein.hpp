#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "kloos/errors.hpp"

namespace kloos {

/// Exact element a + b·ω of Z[ω], ω = e^{2πi/3}. Every additive character value
/// of GF(3^r) is a power of ω, so every character sum lands here.
struct EisensteinValue {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend constexpr bool operator==(const EisensteinValue&, const EisensteinValue&) = default;

  /// Sum of N0 copies of 1, N1 of ω and N2 of ω², reduced with 1 + ω + ω² = 0.
  static constexpr EisensteinValue from_counts(std::int64_t n0, std::int64_t n1, std::int64_t n2) {
    return {n0 - n2, n1 - n2};
  }

  /// ω^t for t ∈ {0,1,2}.
  static constexpr EisensteinValue root(unsigned t) {
    switch (t % 3) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      default: return {-1, -1};
    }
  }

  constexpr EisensteinValue& add_root(unsigned t, std::int64_t weight = 1) {
    switch (t % 3) {
      case 0: a += weight; break;
      case 1: b += weight; break;
      default: a -= weight; b -= weight; break;
    }
    return *this;
  }

  constexpr EisensteinValue times_omega() const { return {-b, a - b}; }

  constexpr EisensteinValue operator-() const { return {-a, -b}; }
  constexpr EisensteinValue& operator+=(const EisensteinValue& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  constexpr EisensteinValue& operator-=(const EisensteinValue& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  friend constexpr EisensteinValue operator+(EisensteinValue x, const EisensteinValue& y) { return x += y; }
  friend constexpr EisensteinValue operator-(EisensteinValue x, const EisensteinValue& y) { return x -= y; }
  friend constexpr EisensteinValue operator*(const EisensteinValue& x, const EisensteinValue& y) {
    // ω² = -1 - ω
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
  }

  constexpr bool is_real() const { return b == 0; }

  /// The rational-integer value; a nonzero ω-part is an internal error.
  std::int64_t real_value(std::string_view what) const {
    if (b != 0) {
      throw ConsistencyError(std::string(what) + ": character sum has nonzero omega part " + to_string());
    }
    return a;
  }

  std::string to_string() const { return std::to_string(a) + (b < 0 ? "" : "+") + std::to_string(b) + "w"; }
};

}  // namespace kloos
