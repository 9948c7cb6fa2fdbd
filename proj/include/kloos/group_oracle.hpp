#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "kloos/bigint.hpp"
#include "kloos/char_sums.hpp"
#include "kloos/check.hpp"
#include "kloos/constants.hpp"
#include "kloos/eisenstein.hpp"
#include "kloos/finite_field.hpp"
#include "kloos/trace_profile.hpp"

namespace kloos {

/// Square matrix over GF(3^r), row-major.
class Matrix {
 public:
  explicit Matrix(unsigned dim) : dim_(dim), entries_(static_cast<std::size_t>(dim) * dim) {}

  static Matrix identity(unsigned dim) {
    Matrix m(dim);
    for (unsigned i = 0; i < dim; ++i) m.at(i, i) = Field::one();
    return m;
  }
  static Matrix diagonal(const std::vector<Element>& d) {
    Matrix m(static_cast<unsigned>(d.size()));
    for (unsigned i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
  }

  unsigned dim() const { return dim_; }
  Element operator()(unsigned i, unsigned j) const { return entries_[i * dim_ + j]; }
  Element& at(unsigned i, unsigned j) { return entries_[i * dim_ + j]; }
  const std::vector<Element>& entries() const { return entries_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix& x, const Matrix& y) {
    if (auto c = x.dim_ <=> y.dim_; c != 0) return c;
    return std::lexicographical_compare_three_way(x.entries_.begin(), x.entries_.end(), y.entries_.begin(),
                                                  y.entries_.end());
  }

 private:
  unsigned dim_;
  std::vector<Element> entries_;
};

inline Matrix multiply(const Field& f, const Matrix& x, const Matrix& y) {
  const unsigned d = x.dim();
  Matrix out(d);
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned k = 0; k < d; ++k) {
      const Element xik = x(i, k);
      if (xik == Field::zero()) continue;
      for (unsigned j = 0; j < d; ++j) out.at(i, j) = f.add(out(i, j), f.mul(xik, y(k, j)));
    }
  }
  return out;
}

inline Matrix transpose(const Matrix& x) {
  Matrix out(x.dim());
  for (unsigned i = 0; i < x.dim(); ++i) {
    for (unsigned j = 0; j < x.dim(); ++j) out.at(j, i) = x(i, j);
  }
  return out;
}

inline Element matrix_trace(const Field& f, const Matrix& x) {
  Element t = Field::zero();
  for (unsigned i = 0; i < x.dim(); ++i) t = f.add(t, x(i, i));
  return t;
}

inline Element determinant(const Field& f, Matrix x) {
  const unsigned d = x.dim();
  Element det = Field::one();
  for (unsigned c = 0; c < d; ++c) {
    unsigned p = c;
    while (p < d && x(p, c) == Field::zero()) ++p;
    if (p == d) return Field::zero();
    if (p != c) {
      for (unsigned j = 0; j < d; ++j) std::swap(x.at(p, j), x.at(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, x(c, c));
    const Element inv = f.inv(x(c, c));
    for (unsigned i = c + 1; i < d; ++i) {
      const Element factor = f.mul(x(i, c), inv);
      if (factor == Field::zero()) continue;
      for (unsigned j = c; j < d; ++j) x.at(i, j) = f.sub(x(i, j), f.mul(factor, x(c, j)));
    }
  }
  return det;
}

/// δ_ε = diag(1, -ε).
inline Matrix delta_eps(const Field& f, Element eps) { return Matrix::diagonal({Field::one(), f.neg(eps)}); }

/// The form J of O^-(2n,q): [[0, 1_{n-1}], [1_{n-1}, 0]] ⊕ δ_ε. Coordinates are ordered
/// (first n-1 block, second n-1 block, the anisotropic plane).
inline Matrix form_j(const Field& f, int n, Element eps) {
  const unsigned m = static_cast<unsigned>(n - 1);
  Matrix j(2 * m + 2);
  for (unsigned i = 0; i < m; ++i) {
    j.at(i, m + i) = Field::one();
    j.at(m + i, i) = Field::one();
  }
  j.at(2 * m, 2 * m) = Field::one();
  j.at(2 * m + 1, 2 * m + 1) = f.neg(eps);
  return j;
}

inline bool preserves_form(const Field& f, const Matrix& w, const Matrix& form) {
  return multiply(f, multiply(f, transpose(w), form), w) == form;
}

/// σ_r: swaps the first r coordinates of the two (n-1)-blocks.
inline Matrix sigma(int n, int r) {
  const unsigned m = static_cast<unsigned>(n - 1);
  Matrix s = Matrix::identity(2 * m + 2);
  for (unsigned i = 0; i < static_cast<unsigned>(r); ++i) {
    s.at(i, i) = Field::zero();
    s.at(m + i, m + i) = Field::zero();
    s.at(i, m + i) = Field::one();
    s.at(m + i, i) = Field::one();
  }
  return s;
}

/// ρ = diag(1, ..., 1, -1).
inline Matrix rho(const Field& f, int n) {
  Matrix x = Matrix::identity(static_cast<unsigned>(2 * n));
  x.at(2 * n - 1, 2 * n - 1) = f.neg(Field::one());
  return x;
}

/// A deduplicated, sorted set of matrices together with the field and ε it was built over.
struct GroupSet {
  std::string label;
  std::shared_ptr<const Field> field;
  Element epsilon;
  std::vector<Matrix> elements;

  std::size_t size() const { return elements.size(); }
  bool contains(const Matrix& m) const { return std::binary_search(elements.begin(), elements.end(), m); }
};

namespace detail {
inline GroupSet make_set(std::string label, std::shared_ptr<const Field> f, Element eps, std::vector<Matrix> mats) {
  std::ranges::sort(mats);
  const auto dup = std::ranges::unique(mats);
  mats.erase(dup.begin(), dup.end());
  return GroupSet{std::move(label), std::move(f), eps, std::move(mats)};
}
}  // namespace detail

/// SO^-(2,q) = {[[a, bε], [b, a]] : a² - b²ε = 1}, the norm-one torus; q + 1 elements.
inline GroupSet enumerate_so2_minus(std::shared_ptr<const Field> fp, Element eps) {
  const Field& f = *fp;
  std::vector<Matrix> out;
  for (Element a : f.elements()) {
    for (Element b : f.elements()) {
      if (f.sub(f.square(a), f.mul(f.square(b), eps)) != Field::one()) continue;
      Matrix m(2);
      m.at(0, 0) = a;
      m.at(0, 1) = f.mul(b, eps);
      m.at(1, 0) = b;
      m.at(1, 1) = a;
      out.push_back(m);
    }
  }
  return detail::make_set("SO-(2)", std::move(fp), eps, std::move(out));
}

/// O^-(2,q) = SO^-(2,q) ⨿ δ_1 SO^-(2,q) with δ_1 = diag(1,-1).
inline GroupSet enumerate_o2_minus(std::shared_ptr<const Field> fp, Element eps) {
  const Field& f = *fp;
  GroupSet so = enumerate_so2_minus(fp, eps);
  const Matrix d1 = Matrix::diagonal({Field::one(), f.neg(Field::one())});
  std::vector<Matrix> out = so.elements;
  for (const Matrix& m : so.elements) out.push_back(multiply(f, d1, m));
  return detail::make_set("O-(2)", std::move(fp), eps, std::move(out));
}

/// The parabolic Q(2n,q) for n ∈ {1,2} (q <= 9 when n = 2). For n = 2 every element is
/// diag(a, a^{-1}, i) · [[1, B, -ᵗhδ_ε], [0, 1, 0], [0, h, 1_2]] with a ∈ F_q^*, i ∈ SO^-(2,q),
/// h ∈ F_q^{2×1}; the constraint 2B = -ᵗhδ_εh gives B = ᵗhδ_εh in characteristic 3.
inline GroupSet enumerate_q(std::shared_ptr<const Field> fp, int n, Element eps) {
  const Field& f = *fp;
  if (n < 1) throw DomainError("enumerate_q: n must be positive");
  if (n > 2) throw ResourceError("enumerate_q: brute force is limited to n <= 2");
  GroupSet so = enumerate_so2_minus(fp, eps);
  if (n == 1) {
    so.label = "Q(2)";
    return so;
  }
  if (f.order() > 9) throw ResourceError("enumerate_q: n = 2 needs q <= 9");
  std::vector<Matrix> out;
  for (Element a : f.nonzero_elements()) {
    for (const Matrix& i : so.elements) {
      Matrix levi(4);
      levi.at(0, 0) = a;
      levi.at(1, 1) = f.inv(a);
      for (unsigned r = 0; r < 2; ++r) {
        for (unsigned c = 0; c < 2; ++c) levi.at(2 + r, 2 + c) = i(r, c);
      }
      for (Element h0 : f.elements()) {
        for (Element h1 : f.elements()) {
          // ᵗhδ_εh = h0² - εh1²
          const Element b = f.sub(f.square(h0), f.mul(eps, f.square(h1)));
          Matrix unip = Matrix::identity(4);
          unip.at(0, 1) = b;
          unip.at(0, 2) = f.neg(h0);          // -ᵗhδ_ε = (-h0, εh1)
          unip.at(0, 3) = f.mul(eps, h1);
          unip.at(2, 1) = h0;
          unip.at(3, 1) = h1;
          out.push_back(multiply(f, levi, unip));
        }
      }
    }
  }
  return detail::make_set("Q(4)", std::move(fp), eps, std::move(out));
}

/// DC_i^±(n,q) = Qσ_rQ or ρQσ_rQ by pairwise products with deduplication. Limited to n <= 2, q = 3.
inline GroupSet double_coset(std::shared_ptr<const Field> fp, CosetFamily fam, int n, Element eps) {
  const Field& f = *fp;
  fam.require_valid(n);
  if (n > 2 || f.order() != 3) throw ResourceError("double_coset: brute force is limited to n <= 2 and q = 3");
  const GroupSet q = enumerate_q(fp, n, eps);
  Matrix left = sigma(n, fam.bruhat_index(n));
  std::vector<Matrix> prefixes;
  for (const Matrix& x : q.elements) prefixes.push_back(fam.uses_rho() ? multiply(f, rho(f, n), x) : x);
  std::vector<Matrix> out;
  out.reserve(prefixes.size() * q.size());
  for (const Matrix& x : prefixes) {
    const Matrix xs = multiply(f, x, left);
    for (const Matrix& y : q.elements) out.push_back(multiply(f, xs, y));
  }
  return detail::make_set(fam.name() + "(" + std::to_string(n) + ")", std::move(fp), eps, std::move(out));
}

/// Every w ∈ GL(2n,q) with ᵗwJw = J, found column by column; guarded to q^{2n} <= 6561.
inline GroupSet enumerate_orthogonal(std::shared_ptr<const Field> fp, int n, Element eps) {
  const Field& f = *fp;
  const unsigned d = static_cast<unsigned>(2 * n);
  std::uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i) count *= f.order();
  if (count > 6561) throw ResourceError("enumerate_orthogonal: q^{2n} must be <= 6561");
  const Matrix j = form_j(f, n, eps);

  std::vector<std::vector<Element>> vectors;
  for (std::uint64_t c = 0; c < count; ++c) {
    std::vector<Element> v(d);
    for (unsigned i = 0, x = static_cast<unsigned>(c); i < d; ++i, x /= f.order()) v[i] = Element{x % f.order()};
    vectors.push_back(std::move(v));
  }
  auto form = [&](const std::vector<Element>& u, const std::vector<Element>& v) {
    Element acc = Field::zero();
    for (unsigned a = 0; a < d; ++a) {
      for (unsigned b = 0; b < d; ++b) {
        if (j(a, b) != Field::zero()) acc = f.add(acc, f.mul(u[a], f.mul(j(a, b), v[b])));
      }
    }
    return acc;
  };

  std::vector<Matrix> out;
  std::vector<const std::vector<Element>*> cols(d);
  auto search = [&](auto&& self, unsigned k) -> void {
    if (k == d) {
      Matrix m(d);
      for (unsigned c = 0; c < d; ++c) {
        for (unsigned r = 0; r < d; ++r) m.at(r, c) = (*cols[c])[r];
      }
      out.push_back(std::move(m));
      return;
    }
    for (const auto& v : vectors) {
      if (form(v, v) != j(k, k)) continue;
      bool ok = true;
      for (unsigned i = 0; i < k && ok; ++i) ok = form(*cols[i], v) == j(i, k);
      if (!ok) continue;
      cols[k] = &v;
      self(self, k + 1);
    }
  };
  search(search, 0);
  return detail::make_set("O-(" + std::to_string(d) + ")", std::move(fp), eps, std::move(out));
}

/// N(β) = |{w ∈ set : Tr w = β}|.
inline TraceProfile trace_histogram(const GroupSet& set) {
  const Field& f = *set.field;
  TraceProfile p;
  p.counts.assign(f.order(), 0);
  for (const Matrix& m : set.elements) p.counts[matrix_trace(f, m).code] += 1;
  return p;
}

/// Σ_{w∈set} λ(a Tr w).
inline EisensteinValue gauss_sum_dc(const GroupSet& set, Element a) {
  const Field& f = *set.field;
  if (a == Field::zero()) throw DomainError("gauss_sum_dc: a must be nonzero");
  EisensteinValue acc;
  for (const Matrix& m : set.elements) acc.add_root(f.trace(f.mul(a, matrix_trace(f, m))));
  return acc;
}

/// Closed form of Σ_{w∈DC} λ(a Tr w) in terms of k = K(λ;a²):
/// ±A·k for i = 1,3; ∓A·k² for i = 2; ∓A·(k² + q² - q) for i = 4.
inline BigInt double_coset_sum_closed_form(CosetFamily fam, int n, const BigInt& q, std::int64_t k) {
  const FamilyConstants c = family_constants(fam, n, q);
  const BigInt kk = k;
  switch (fam.index) {
    case 1:
    case 3: return fam.pm() * c.A * kk;
    case 2: return -fam.pm() * c.A * kk * kk;
    default: return -fam.pm() * c.A * (kk * kk + q * q - q);
  }
}

/// b_r(ψ) = Σ_{B∈Ω_r} Σ_{h∈F_q^{r×2}} ψ(Tr δ_ε ᵗh B h) with ψ = λ(a·), over nonsingular symmetric
/// r×r matrices B. Tr δ_ε ᵗhBh = Q_B(h_0) - ε Q_B(h_1) for the columns h_0, h_1 of h.
inline EisensteinValue b_r_bruteforce(const Field& f, int r, Element a, Element eps) {
  if (a == Field::zero()) throw DomainError("b_r_bruteforce: a must be nonzero");
  if (r != 1 && r != 2) throw DomainError("b_r_bruteforce: r must be 1 or 2");
  if (r == 2 && f.order() > 9) throw ResourceError("b_r_bruteforce: r = 2 needs q <= 9");
  EisensteinValue acc;
  if (r == 1) {
    for (Element b : f.nonzero_elements()) {
      for (Element x : f.elements()) {
        for (Element y : f.elements()) {
          const Element v = f.mul(b, f.sub(f.square(x), f.mul(eps, f.square(y))));
          acc.add_root(f.trace(f.mul(a, v)));
        }
      }
    }
    return acc;
  }
  for (Element x : f.elements()) {
    for (Element y : f.elements()) {
      for (Element z : f.elements()) {
        if (f.sub(f.mul(x, z), f.square(y)) == Field::zero()) continue;
        auto form = [&](Element u, Element v) {
          // (u v) [[x y][y z]] (u v)ᵗ
          return f.add(f.add(f.mul(x, f.square(u)), f.mul(z, f.square(v))), f.mul(f.add(y, y), f.mul(u, v)));
        };
        for (Element u0 : f.elements()) {
          for (Element v0 : f.elements()) {
            const Element first = form(u0, v0);
            for (Element u1 : f.elements()) {
              for (Element v1 : f.elements()) {
                const Element val = f.sub(first, f.mul(eps, form(u1, v1)));
                acc.add_root(f.trace(f.mul(a, val)));
              }
            }
          }
        }
      }
    }
  }
  return acc;
}

/// q^{r(r+6)/4} Π_{j=1}^{r/2}(q^{2j-1}-1) for even r; -q^{(r²+4r-1)/4} Π_{j=1}^{(r+1)/2}(q^{2j-1}-1) for odd r.
inline BigInt b_r_closed_form(int r, const BigInt& q) {
  if (r % 2 == 0) return detail::quarter_power(q, r * (r + 6)) * detail::odd_product(q, r / 2);
  return -detail::quarter_power(q, r * r + 4 * r - 1) * detail::odd_product(q, (r + 1) / 2);
}

/// The three SO^-(2,q) / O^-(2,q) sums with ψ = λ(a·):
/// Σ_{SO^-} ψ(Tr w) = -K(ψ;1), Σ_{SO^-} ψ(Tr δ_1 w) = q+1, Σ_{O^-} ψ(Tr w) = -K(ψ;1) + q + 1.
inline std::vector<Check> rank_two_sum_check(std::shared_ptr<const Field> fp, Element a, Element eps) {
  const Field& f = *fp;
  if (a == Field::zero()) throw DomainError("rank_two_sum_check: a must be nonzero");
  // K(ψ;1) = Σ_α ψ(α + α^{-1}) evaluated directly.
  EisensteinValue kpsi;
  for (Element x : f.nonzero_elements()) kpsi.add_root(f.trace(f.mul(a, f.add(x, f.inv(x)))));
  const BigInt k = kpsi.real_value("rank_two K(psi;1)");

  const GroupSet so = enumerate_so2_minus(fp, eps);
  const GroupSet o = enumerate_o2_minus(fp, eps);
  const Matrix d1 = Matrix::diagonal({Field::one(), f.neg(Field::one())});
  EisensteinValue twisted;
  for (const Matrix& w : so.elements) twisted.add_root(f.trace(f.mul(a, matrix_trace(f, multiply(f, d1, w)))));

  const BigInt q = f.order();
  const std::string tag = "(a=" + f.format(a) + ")";
  return {
      compare("rank_two_so2" + tag, BigInt(gauss_sum_dc(so, a).real_value("rank_two")), -k),
      compare("rank_two_twisted" + tag, BigInt(twisted.real_value("rank_two")), q + 1),
      compare("rank_two_o2" + tag, BigInt(gauss_sum_dc(o, a).real_value("rank_two")), -k + q + 1),
  };
}

}  // namespace kloos
