#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "kloos/bigint.hpp"
#include "kloos/errors.hpp"

namespace kloos {

enum class Sign { Plus, Minus };

/// One of the eight double-coset families DC_i^±(n,q), i ∈ 1..4.
struct CosetFamily {
  int index = 1;
  Sign sign = Sign::Plus;

  friend constexpr auto operator<=>(const CosetFamily&, const CosetFamily&) = default;

  bool plus() const { return sign == Sign::Plus; }
  /// +1 for the plus families, -1 for the minus ones.
  int pm() const { return plus() ? 1 : -1; }

  /// Families 2 and 4 give even moments SK^{2h}; 1 and 3 give SK^h.
  bool even_moments() const { return index == 2 || index == 4; }
  /// Families 3 and 4 are the ρ-translated cosets ρQσ_rQ.
  bool uses_rho() const { return index == 3 || index == 4; }

  std::string name() const { return "DC" + std::to_string(index) + (plus() ? "+" : "-"); }

  static CosetFamily parse(std::string_view text) {
    if (text.size() != 4 || text.substr(0, 2) != "DC" || text[2] < '1' || text[2] > '4' ||
        (text[3] != '+' && text[3] != '-')) {
      throw DomainError("unknown family '" + std::string(text) + "' (expected DC1+ ... DC4-)");
    }
    return CosetFamily{text[2] - '0', text[3] == '+' ? Sign::Plus : Sign::Minus};
  }

  static std::vector<CosetFamily> all() {
    std::vector<CosetFamily> out;
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      for (int i = 1; i <= 4; ++i) out.push_back({i, s});
    }
    return out;
  }

  /// Smallest n of the family; valid n step by 2 from here.
  int min_n() const {
    if (plus()) return index == 4 ? 4 : 2;
    return index == 1 ? 1 : 3;
  }

  bool valid_n(int n) const { return n >= min_n() && (n - min_n()) % 2 == 0; }

  void require_valid(int n) const {
    if (valid_n(n)) return;
    const std::string rule = plus() ? "even n >= " + std::to_string(min_n()) : "odd n >= " + std::to_string(min_n());
    throw DomainError(name() + " is defined only for " + rule + ", got n=" + std::to_string(n));
  }

  /// Bruhat index r of σ_r: n-1 for i=1, n-2 for i=2,3, n-3 for i=4.
  int bruhat_index(int n) const { return n - (index == 1 ? 1 : index == 4 ? 3 : 2); }
};

/// Gaussian binomial [n r]_q; zero when r > n.
inline BigInt q_binom(unsigned n, unsigned r, const BigInt& q) {
  if (r > n) return 0;
  BigInt num = 1;
  BigInt den = 1;
  for (unsigned j = 0; j < r; ++j) {
    num *= ipow(q, n - j) - 1;
    den *= ipow(q, r - j) - 1;
  }
  return exact_div(num, den, "q_binom");
}

/// Stirling number of the second kind via the alternating sum (1/t!) Σ_j (-1)^{t-j} C(t,j) j^h.
inline BigInt stirling2(unsigned h, unsigned t) {
  BigInt sum = 0;
  for (unsigned j = 0; j <= t; ++j) {
    BigInt term = binomial(BigInt(t), j) * ipow(BigInt(j), h);
    if ((t - j) % 2) sum -= term;
    else sum += term;
  }
  return exact_div(sum, factorial(t), "stirling2");
}

/// |GL(n,q)| = q^{C(n,2)} Π_{j=1}^n (q^j - 1).
inline BigInt gl_order(unsigned n, const BigInt& q) {
  BigInt out = ipow(q, n * (n - 1) / 2);
  for (unsigned j = 1; j <= n; ++j) out *= ipow(q, j) - 1;
  return out;
}

namespace detail {

/// q^{numerator/4}; the numerator must be a nonnegative multiple of 4.
inline BigInt quarter_power(const BigInt& q, long numerator) {
  if (numerator < 0 || numerator % 4 != 0) {
    throw ConsistencyError("fractional exponent " + std::to_string(numerator) + "/4 is not a nonnegative integer");
  }
  return ipow(q, static_cast<unsigned long>(numerator / 4));
}

/// Π_{j=1}^{upper} (q^{2j-1} - 1) or Π (q^{2j} - 1); empty products are 1.
inline BigInt odd_product(const BigInt& q, long upper) {
  BigInt out = 1;
  for (long j = 1; j <= upper; ++j) out *= ipow(q, 2 * j - 1) - 1;
  return out;
}
inline BigInt even_product(const BigInt& q, long upper) {
  BigInt out = 1;
  for (long j = 1; j <= upper; ++j) out *= ipow(q, 2 * j) - 1;
  return out;
}

}  // namespace detail

struct FamilyConstants {
  BigInt A;
  BigInt B;
  BigInt N;
};

/// A_i^±(n,q), B_i^±(n,q) and N = A·B = |DC_i^±(n,q)|.
inline FamilyConstants family_constants(CosetFamily fam, int n, const BigInt& q) {
  fam.require_valid(n);
  using detail::even_product;
  using detail::odd_product;
  using detail::quarter_power;
  const long nn = n;
  const BigInt qp1 = q + 1;
  BigInt A;
  BigInt B;
  if (fam.plus()) {
    const long half = (nn - 2) / 2;
    const BigInt qn1 = ipow(q, nn - 1) - 1;
    switch (fam.index) {
      case 1:
        A = quarter_power(q, 5 * nn * nn - 2 * nn - 4) * qn1 * odd_product(q, half);
        B = qp1 * quarter_power(q, nn * nn) * even_product(q, half);
        break;
      case 2:
        A = quarter_power(q, 5 * nn * nn - 2 * nn - 8) * q_binom(n - 1, 1, q) * odd_product(q, half);
        B = qp1 * quarter_power(q, (nn - 2) * (nn - 2)) * qn1 * even_product(q, half);
        break;
      case 3:
        A = qp1 * quarter_power(q, 5 * nn * nn - 2 * nn - 8) * q_binom(n - 1, 1, q) * odd_product(q, half);
        B = quarter_power(q, (nn - 2) * (nn - 2)) * qn1 * even_product(q, half);
        break;
      default:
        A = qp1 * quarter_power(q, 5 * nn * nn - 6 * nn - 4) * q_binom(n - 1, 2, q) * odd_product(q, half);
        B = quarter_power(q, (nn - 2) * (nn - 2)) * qn1 * even_product(q, half);
        break;
    }
  } else {
    const long half = (nn - 1) / 2;
    switch (fam.index) {
      case 1:
        A = quarter_power(q, 5 * (nn * nn - 1)) * odd_product(q, half);
        B = qp1 * quarter_power(q, (nn - 1) * (nn - 1)) * even_product(q, half);
        break;
      case 2:
        A = quarter_power(q, 5 * nn * nn - 4 * nn - 5) * q_binom(n - 1, 1, q) * odd_product(q, half);
        B = qp1 * quarter_power(q, (nn - 1) * (nn - 1)) * even_product(q, half);
        break;
      case 3:
        A = qp1 * quarter_power(q, 5 * nn * nn - 4 * nn - 5) * q_binom(n - 1, 1, q) * odd_product(q, half);
        B = quarter_power(q, (nn - 1) * (nn - 1)) * even_product(q, half);
        break;
      default: {
        const long third = (nn - 3) / 2;
        A = qp1 * quarter_power(q, 5 * nn * nn - 4 * nn - 9) * q_binom(n - 1, 2, q) * odd_product(q, third);
        B = quarter_power(q, (nn - 3) * (nn - 3)) * (ipow(q, nn - 2) - 1) * (ipow(q, nn - 1) - 1) *
            even_product(q, third);
        break;
      }
    }
  }
  if (A <= 0 || B <= 0) throw ConsistencyError(fam.name() + ": nonpositive family constant");
  BigInt N = A * B;
  return {std::move(A), std::move(B), std::move(N)};
}

struct CosetOrders {
  BigInt quotient;      ///< |B_r \ Q|
  BigInt double_coset;  ///< |Qσ_rQ| = |ρQσ_rQ|
  BigInt parabolic;     ///< |P(2n,q)|
};

/// Orders entering the Bruhat decomposition of O^-(2n,q) with respect to P = Q ⨿ ρQ.
inline CosetOrders coset_orders(int n, int r, const BigInt& q) {
  if (n < 1 || r < 0 || r > n - 1) throw DomainError("coset_orders: need 0 <= r <= n-1");
  const unsigned un = static_cast<unsigned>(n);
  const unsigned ur = static_cast<unsigned>(r);
  CosetOrders out;
  out.parabolic = 2 * (q + 1) * gl_order(un - 1, q) * ipow(q, (un - 1) * (un + 2) / 2);
  out.quotient = q_binom(un - 1, ur, q) * ipow(q, ur * (ur + 3) / 2);
  out.double_coset = exact_div(out.parabolic * out.quotient, 2, "coset_orders");
  return out;
}

/// |Qσ_rQ| written out as (q+1) q^{n²-n} Π_{j=1}^{n-1}(q^j-1) [n-1 r]_q q^{C(r,2)} q^{2r}.
inline BigInt double_coset_order_closed(int n, int r, const BigInt& q) {
  const unsigned un = static_cast<unsigned>(n);
  const unsigned ur = static_cast<unsigned>(r);
  BigInt out = (q + 1) * ipow(q, un * un - un);
  for (unsigned j = 1; j + 1 <= un; ++j) out *= ipow(q, j) - 1;
  return out * q_binom(un - 1, ur, q) * ipow(q, ur * (ur - 1) / 2 + 2 * ur);
}

struct ConstantsMismatch {
  CosetFamily family;
  int n;
  BigInt from_family;
  BigInt from_cosets;
};

/// Cross-checks N_i^±(n,q) = A·B against |Qσ_rQ| from the parabolic/quotient orders for
/// every valid family with n <= n_max. An empty result means every pair agreed.
inline std::vector<ConstantsMismatch> family_constants_consistency(int n_max, const BigInt& q) {
  std::vector<ConstantsMismatch> out;
  for (const CosetFamily& fam : CosetFamily::all()) {
    for (int n = fam.min_n(); n <= n_max; n += 2) {
      const BigInt N = family_constants(fam, n, q).N;
      const BigInt order = coset_orders(n, fam.bruhat_index(n), q).double_coset;
      if (N != order) out.push_back({fam, n, N, order});
    }
  }
  return out;
}

}  // namespace kloos
