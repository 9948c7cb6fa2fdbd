#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kloos/errors.hpp"

namespace kloos {

/// Element of F_3 = {0, 1, 2}.
using Trit = std::uint8_t;

/// Element of GF(3^r) in the polynomial basis. The code packs the coefficient
/// vector as base-3 digits, constant term least significant, so codes 0..q-1
/// enumerate the field in a fixed deterministic order.
struct Element {
  std::uint32_t code = 0;
  friend constexpr auto operator<=>(const Element&, const Element&) = default;
};

inline constexpr unsigned kMaxDegree = 12;

/// First primitive monic polynomial of each degree, ordered by base-3 encoding
/// of the coefficients (constant term first).
inline const std::vector<Trit>& default_modulus(unsigned r) {
  static const std::array<std::vector<Trit>, kMaxDegree + 1> table = {{
      {},
      {1, 1},
      {2, 1, 1},
      {1, 2, 0, 1},
      {2, 1, 0, 0, 1},
      {1, 2, 0, 0, 0, 1},
      {2, 1, 0, 0, 0, 0, 1},
      {1, 2, 1, 0, 0, 0, 0, 1},
      {2, 0, 0, 1, 0, 0, 0, 0, 1},
      {1, 0, 1, 2, 0, 0, 0, 0, 0, 1},
      {2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1},
      {1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1},
      {2, 2, 2, 1, 2, 0, 0, 0, 0, 0, 0, 0, 1},
  }};
  if (r == 0 || r > kMaxDegree) throw DomainError("default_modulus: degree must be in 1..12");
  return table[r];
}

namespace poly {

/// Human-readable polynomial, e.g. {2,0,1} -> "x^2+2".
inline std::string format(std::span<const Trit> c) {
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0 || c[i] != 1) out += std::to_string(c[i]);
    if (i >= 1) out += 'x';
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

/// Remainder of `num` modulo the monic `den` over F_3 (both constant term first).
inline std::vector<Trit> remainder(std::vector<Trit> num, std::span<const Trit> den) {
  const std::size_t d = den.size() - 1;
  for (std::size_t i = num.size(); i-- > d;) {
    const Trit c = num[i] % 3;
    if (c == 0) continue;
    for (std::size_t k = 0; k <= d; ++k) {
      num[i - d + k] = static_cast<Trit>((num[i - d + k] + 3 * 3 - c * den[k]) % 3);
    }
  }
  num.resize(std::min(num.size(), d));
  return num;
}

/// A monic factor of degree 1..deg/2, if one exists.
inline std::optional<std::vector<Trit>> find_factor(std::span<const Trit> f) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= 3;
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<Trit> g(d + 1, 0);
      g[d] = 1;
      for (std::size_t i = 0, c = code; i < d; ++i, c /= 3) g[i] = static_cast<Trit>(c % 3);
      const auto rem = remainder(std::vector<Trit>(f.begin(), f.end()), g);
      if (std::ranges::all_of(rem, [](Trit t) { return t == 0; })) return g;
    }
  }
  return std::nullopt;
}

}  // namespace poly

/// GF(3^r) with a validated modulus and precomputed log/exp, trace and
/// (for q <= 729) addition tables. Immutable after construction.
class Field {
 public:
  static std::shared_ptr<const Field> build(unsigned r, std::optional<std::vector<Trit>> modulus = std::nullopt) {
    return std::shared_ptr<const Field>(new Field(r, modulus ? std::move(*modulus) : default_modulus(r)));
  }

  unsigned degree() const { return r_; }
  std::uint32_t order() const { return q_; }
  const std::vector<Trit>& modulus() const { return modulus_; }
  Element generator() const { return exp_[1]; }

  static constexpr Element zero() { return {0}; }
  static constexpr Element one() { return {1}; }

  /// Embedding of an integer through F_3.
  Element from_int(long v) const { return {static_cast<std::uint32_t>(((v % 3) + 3) % 3)}; }

  Element from_coeffs(std::span<const Trit> c) const {
    if (c.size() > r_) throw DomainError("from_coeffs: more than r coefficients");
    std::uint32_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] > 2) throw DomainError("from_coeffs: coefficient outside {0,1,2}");
      code = code * 3 + c[i];
    }
    return {code};
  }

  std::vector<Trit> coeffs(Element x) const {
    std::vector<Trit> out(r_);
    for (unsigned i = 0; i < r_; ++i, x.code /= 3) out[i] = static_cast<Trit>(x.code % 3);
    return out;
  }

  /// Comma-separated coefficients, constant term first ("1,0" is the element 1 in GF(9)).
  std::string format(Element x) const {
    std::string out;
    for (Trit t : coeffs(x)) {
      if (!out.empty()) out += ',';
      out += static_cast<char>('0' + t);
    }
    return out;
  }

  Element parse(std::string_view text) const;

  auto elements() const {
    return std::views::iota(std::uint32_t{0}, q_) | std::views::transform([](std::uint32_t c) { return Element{c}; });
  }
  auto nonzero_elements() const {
    return std::views::iota(std::uint32_t{1}, q_) | std::views::transform([](std::uint32_t c) { return Element{c}; });
  }

  Element add(Element x, Element y) const {
    if (!add_table_.empty()) return {add_table_[x.code * q_ + y.code]};
    std::uint32_t out = 0;
    for (unsigned i = 0; i < r_; ++i) {
      out += ((x.code % 3 + y.code % 3) % 3) * pow3_[i];
      x.code /= 3;
      y.code /= 3;
    }
    return {out};
  }
  Element neg(Element x) const { return {neg_[x.code]}; }
  Element sub(Element x, Element y) const { return add(x, neg(y)); }

  Element mul(Element x, Element y) const {
    if (x.code == 0 || y.code == 0) return zero();
    std::uint32_t e = log_[x.code] + log_[y.code];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  Element square(Element x) const { return mul(x, x); }

  Element inv(Element x) const {
    if (x.code == 0) throw DomainError("inverse of zero");
    const std::uint32_t l = log_[x.code];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
  }
  Element div(Element x, Element y) const { return mul(x, inv(y)); }

  Element pow(Element x, std::uint64_t e) const {
    if (e == 0) return one();
    if (x.code == 0) return zero();
    return exp_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[x.code]) * e) % (q_ - 1))];
  }

  /// Absolute trace tr(x) = x + x^3 + ... + x^{3^{r-1}} ∈ F_3.
  Trit trace(Element x) const { return trace_[x.code]; }

  /// x is a nonzero square; the squareness of 0 is never meaningful here.
  bool is_square(Element x) const {
    if (x.code == 0) throw DomainError("is_square: zero has no quadratic character");
    return log_[x.code] % 2 == 0;
  }

  /// Nonsquares of F_q^* in element order; front() is the canonical ε.
  std::vector<Element> nonsquares() const {
    std::vector<Element> out;
    for (Element x : nonzero_elements()) {
      if (!is_square(x)) out.push_back(x);
    }
    return out;
  }
  Element first_nonsquare() const { return nonsquares().front(); }

 private:
  Field(unsigned r, std::vector<Trit> modulus);

  std::vector<Trit> slow_mul(std::span<const Trit> a, std::span<const Trit> b) const {
    std::vector<Trit> prod(2 * r_, 0);
    for (unsigned i = 0; i < r_; ++i) {
      for (unsigned j = 0; j < r_; ++j) prod[i + j] = static_cast<Trit>((prod[i + j] + a[i] * b[j]) % 3);
    }
    return poly::remainder(std::move(prod), modulus_);
  }

  unsigned r_;
  std::uint32_t q_;
  std::vector<Trit> modulus_;
  std::vector<std::uint32_t> pow3_;
  std::vector<Element> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> neg_;
  std::vector<Trit> trace_;
  std::vector<std::uint32_t> add_table_;
};

inline Field::Field(unsigned r, std::vector<Trit> modulus) : r_(r), modulus_(std::move(modulus)) {
  if (r_ == 0 || r_ > kMaxDegree) throw DomainError("field degree r must be in 1..12, got " + std::to_string(r_));
  if (modulus_.size() != r_ + 1 || modulus_.back() != 1) {
    throw DomainError("modulus " + poly::format(modulus_) + " is not monic of degree " + std::to_string(r_));
  }
  if (std::ranges::any_of(modulus_, [](Trit t) { return t > 2; })) {
    throw DomainError("modulus coefficients must lie in {0,1,2}");
  }
  if (auto factor = poly::find_factor(modulus_)) {
    throw DomainError("modulus " + poly::format(modulus_) + " is reducible over F_3: divisible by " +
                      poly::format(*factor));
  }

  q_ = 1;
  for (unsigned i = 0; i < r_; ++i) {
    pow3_.push_back(q_);
    q_ *= 3;
  }

  neg_.resize(q_);
  for (std::uint32_t c = 0; c < q_; ++c) {
    std::uint32_t out = 0;
    for (unsigned i = 0, x = c; i < r_; ++i, x /= 3) out += ((3 - x % 3) % 3) * pow3_[i];
    neg_[c] = out;
  }

  // Prime divisors of q - 1 for the generator test.
  std::vector<std::uint32_t> primes;
  for (std::uint32_t m = q_ - 1, p = 2; m > 1; ++p) {
    if (p * p > m) {
      primes.push_back(m);
      break;
    }
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  auto slow_pow = [&](std::vector<Trit> base, std::uint64_t e) {
    std::vector<Trit> acc(r_, 0);
    acc[0] = 1;
    while (e) {
      if (e & 1) acc = slow_mul(acc, base);
      base = slow_mul(base, base);
      e >>= 1;
    }
    return acc;
  };
  std::vector<Trit> unit(r_, 0);
  unit[0] = 1;
  std::optional<std::vector<Trit>> gen;
  for (std::uint32_t c = 1; c < q_ && !gen; ++c) {
    const auto g = coeffs(Element{c});
    if (std::ranges::all_of(primes, [&](std::uint32_t p) { return slow_pow(g, (q_ - 1) / p) != unit; })) gen = g;
  }

  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  std::vector<Trit> cur = unit;
  for (std::uint32_t i = 0; i + 1 < q_; ++i) {
    const Element e = from_coeffs(cur);
    exp_[i] = e;
    log_[e.code] = i;
    cur = slow_mul(cur, *gen);
  }

  if (q_ <= 729) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t x = 0; x < q_; ++x) {
      for (std::uint32_t y = 0; y < q_; ++y) {
        std::uint32_t out = 0;
        for (unsigned i = 0, a = x, b = y; i < r_; ++i, a /= 3, b /= 3) out += ((a % 3 + b % 3) % 3) * pow3_[i];
        add_table_[x * q_ + y] = out;
      }
    }
  }

  trace_.resize(q_);
  for (Element x : elements()) {
    Element acc = zero();
    Element frob = x;
    for (unsigned i = 0; i < r_; ++i) {
      acc = add(acc, frob);
      frob = mul(mul(frob, frob), frob);
    }
    if (acc.code > 2) throw ConsistencyError("trace left the prime field");
    trace_[x.code] = static_cast<Trit>(acc.code);
  }
}

/// Parses comma-separated F_3 coefficients, constant term first ("1,0,1" is x^2+1).
inline std::vector<Trit> parse_coefficients(std::string_view text) {
  std::vector<Trit> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    int v = -1;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || v < 0 || v > 2) {
      throw DomainError("coefficient '" + std::string(token) + "' is not one of 0, 1, 2");
    }
    out.push_back(static_cast<Trit>(v));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw DomainError("empty coefficient list");
  return out;
}

inline Element Field::parse(std::string_view text) const { return from_coeffs(parse_coefficients(text)); }

}  // namespace kloos
