#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "kloos/bigint.hpp"
#include "kloos/check.hpp"
#include "kloos/eisenstein.hpp"
#include "kloos/finite_field.hpp"

namespace kloos {

/// K(λ;a) = Σ_{α∈F_q^*} λ(α + aα^{-1}) with λ the canonical additive character.
/// The sum is real (α ↦ -α conjugates it) and satisfies |K| <= 2√q; both are asserted.
inline std::int64_t kloosterman(const Field& f, Element a) {
  if (a == Field::zero()) throw DomainError("kloosterman: argument a must be nonzero");
  EisensteinValue acc;
  for (Element x : f.nonzero_elements()) acc.add_root(f.trace(f.add(x, f.mul(a, f.inv(x)))));
  const std::int64_t k = acc.real_value("kloosterman");
  if (k * k > 4 * static_cast<std::int64_t>(f.order())) {
    throw ConsistencyError("kloosterman: Weil bound violated at a=" + f.format(a));
  }
  return k;
}

/// K(λ;a) for every a ∈ F_q^*, computed once and shared by the moment and identity routines.
class KloostermanTable {
 public:
  explicit KloostermanTable(std::shared_ptr<const Field> field) : field_(std::move(field)) {
    values_.assign(field_->order(), 0);
    for (Element a : field_->nonzero_elements()) values_[a.code] = kloosterman(*field_, a);
  }

  const Field& field() const { return *field_; }
  std::shared_ptr<const Field> field_ptr() const { return field_; }

  std::int64_t operator()(Element a) const {
    if (a == Field::zero()) throw DomainError("kloosterman: argument a must be nonzero");
    return values_[a.code];
  }
  /// K(λ;a²).
  std::int64_t at_square_of(Element a) const { return (*this)(field_->square(a)); }

 private:
  std::shared_ptr<const Field> field_;
  std::vector<std::int64_t> values_;
};

/// K_{GL(t,q)}(λ;a) through the three-term recursion in t, seeded by K_{GL(0)} = 1 and K_{GL(1)} = K(λ;a).
inline BigInt kloosterman_gl(const Field& f, unsigned t, Element a) {
  const BigInt k = kloosterman(f, a);
  const BigInt q = f.order();
  BigInt prev = 1;  // t - 2
  BigInt cur = k;   // t - 1
  if (t == 0) return prev;
  for (unsigned s = 2; s <= t; ++s) {
    BigInt next = ipow(q, s - 1) * cur * k + ipow(q, 2 * s - 2) * (ipow(q, s - 1) - 1) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Σ_{w∈GL(t,q)} λ(Tr w + a Tr w^{-1}) by enumeration; t ∈ {1,2}, and q <= 27 when t = 2.
inline std::int64_t kloosterman_gl_bruteforce(const Field& f, unsigned t, Element a) {
  if (a == Field::zero()) throw DomainError("kloosterman_gl_bruteforce: a must be nonzero");
  if (t != 1 && t != 2) throw DomainError("kloosterman_gl_bruteforce: t must be 1 or 2");
  EisensteinValue acc;
  if (t == 1) {
    for (Element w : f.nonzero_elements()) acc.add_root(f.trace(f.add(w, f.mul(a, f.inv(w)))));
    return acc.real_value("kloosterman_gl_bruteforce");
  }
  if (f.order() > 27) throw ResourceError("kloosterman_gl_bruteforce: t=2 needs q <= 27");
  for (Element x : f.elements()) {
    for (Element y : f.elements()) {
      for (Element z : f.elements()) {
        for (Element w : f.elements()) {
          const Element det = f.sub(f.mul(x, w), f.mul(y, z));
          if (det == Field::zero()) continue;
          // w^{-1} = det^{-1} [[w, -y], [-z, x]], so Tr w^{-1} = det^{-1} (x + w).
          const Element tr = f.add(x, w);
          acc.add_root(f.trace(f.add(tr, f.mul(a, f.div(tr, det)))));
        }
      }
    }
  }
  return acc.real_value("kloosterman_gl_bruteforce");
}

inline constexpr unsigned kMaxDeltaOrder = 4;

/// δ(m,q;β) for every β, indexed by element code: the number of (α_1..α_m) ∈ (F_q^*)^m
/// with Σ (α_i + α_i^{-1}) = β. Built as the m-fold additive convolution of the
/// fibre counts of x ↦ x + x^{-1}.
inline std::vector<std::uint64_t> delta_table(const Field& f, unsigned m) {
  if (m > kMaxDeltaOrder) throw ResourceError("delta: m must be <= 4");
  const std::uint32_t q = f.order();
  std::vector<std::uint64_t> fibre(q, 0);
  for (Element x : f.nonzero_elements()) ++fibre[f.add(x, f.inv(x)).code];

  std::vector<std::uint64_t> cur(q, 0);
  cur[0] = 1;
  for (unsigned step = 0; step < m; ++step) {
    std::vector<std::uint64_t> next(q, 0);
    for (Element s : f.elements()) {
      if (cur[s.code] == 0) continue;
      for (Element x : f.elements()) {
        if (fibre[x.code] == 0) continue;
        next[f.add(s, x).code] += cur[s.code] * fibre[x.code];
      }
    }
    cur = std::move(next);
  }
  return cur;
}

inline std::uint64_t delta(const Field& f, unsigned m, Element beta) { return delta_table(f, m)[beta.code]; }

/// δ(1,q;β) from the squareness of β² - 1: 2 if a nonzero square, 1 if β = ±1, 0 otherwise.
inline std::uint64_t delta1_closed_form(const Field& f, Element beta) {
  const Element d = f.sub(f.square(beta), Field::one());
  if (d == Field::zero()) return 1;
  return f.is_square(d) ? 2 : 0;
}

/// SK^h = Σ_{a square} K(λ;a)^h.
inline BigInt sk_moment(const KloostermanTable& table, unsigned h) {
  BigInt sum = 0;
  for (Element a : table.field().nonzero_elements()) {
    if (table.field().is_square(a)) sum += ipow(BigInt(table(a)), h);
  }
  return sum;
}

/// MK^h = Σ_{a∈F_q^*} K(λ;a)^h.
inline BigInt mk_moment(const KloostermanTable& table, unsigned h) {
  BigInt sum = 0;
  for (Element a : table.field().nonzero_elements()) sum += ipow(BigInt(table(a)), h);
  return sum;
}

/// Σ_β δ(m,q;β) λ(aβ) = K(λ;a²)^m.
inline Check verify_delta_transform(const KloostermanTable& table, unsigned m, Element a) {
  const Field& f = table.field();
  if (a == Field::zero()) throw DomainError("verify_delta_transform: a must be nonzero");
  const auto d = delta_table(f, m);
  EisensteinValue lhs;
  for (Element beta : f.elements()) lhs.add_root(f.trace(f.mul(a, beta)), static_cast<std::int64_t>(d[beta.code]));
  return compare("delta_transform(m=" + std::to_string(m) + ",a=" + f.format(a) + ")", BigInt(lhs.real_value("delta_transform")),
                 ipow(BigInt(table.at_square_of(a)), m));
}

/// Σ_{a∈F_q^*} λ(-aβ) K(λ;a²)^m = q δ(m,q;β) - (q-1)^m.
inline Check verify_twisted_moment(const KloostermanTable& table, unsigned m, Element beta) {
  const Field& f = table.field();
  EisensteinValue lhs;
  for (Element a : f.nonzero_elements()) {
    std::int64_t weight = 1;
    for (unsigned i = 0; i < m; ++i) weight *= table.at_square_of(a);
    lhs.add_root(f.trace(f.neg(f.mul(a, beta))), weight);
  }
  const BigInt q = f.order();
  const BigInt rhs = q * BigInt(delta(f, m, beta)) - ipow(q - 1, m);
  return compare("twisted_moment(m=" + std::to_string(m) + ",beta=" + f.format(beta) + ")", BigInt(lhs.real_value("twisted_moment")),
                 rhs);
}

}  // namespace kloos
