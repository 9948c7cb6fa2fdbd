#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kloos/bigint.hpp"
#include "kloos/char_sums.hpp"
#include "kloos/check.hpp"
#include "kloos/constants.hpp"
#include "kloos/finite_field.hpp"
#include "kloos/trace_profile.hpp"

namespace kloos {

/// N_{DC}(β) for every β from the exponential-sum evaluation: q^{-1}AB plus q^{-1}A times
/// ±(qδ(1,q;β) - q + 1) for i = 1,3, ∓(qδ(2,q;β) - (q-1)²) for i = 2, and the β = 0 / β ≠ 0
/// split for i = 4. Each entry is asserted to be a nonnegative integer.
inline TraceProfile trace_profile(CosetFamily fam, int n, const Field& f) {
  fam.require_valid(n);
  const BigInt q = f.order();
  const FamilyConstants c = family_constants(fam, n, q);
  const BigInt ab = c.A * c.B;
  std::vector<std::uint64_t> d2;
  if (fam.even_moments()) d2 = delta_table(f, 2);

  TraceProfile p{fam, n, {}};
  p.counts.reserve(f.order());
  for (Element beta : f.elements()) {
    BigInt value;
    if (!fam.even_moments()) {
      const BigInt inner = q * BigInt(delta1_closed_form(f, beta)) - q + 1;
      value = ab + fam.pm() * c.A * inner;
    } else {
      const BigInt qd = q * BigInt(d2[beta.code]);
      BigInt inner;
      if (fam.index == 2) inner = qd - (q - 1) * (q - 1);
      else if (beta == Field::zero()) inner = qd + q * q * q - 3 * q * q + 3 * q - 1;
      else inner = qd - 2 * q * q + 3 * q - 1;
      value = ab - fam.pm() * c.A * inner;
    }
    BigInt count = exact_div(value, q, fam.name() + " trace profile at beta=" + f.format(beta));
    if (count < 0) throw ConsistencyError(fam.name() + ": negative trace count at beta=" + f.format(beta));
    p.counts.push_back(std::move(count));
  }
  return p;
}

/// δ(2,q;β) by the direct double loop over (F_q^*)²; kept separate from the convolution route.
inline std::vector<std::uint64_t> delta2_direct(const Field& f) {
  std::vector<std::uint64_t> out(f.order(), 0);
  for (Element x : f.nonzero_elements()) {
    const Element sx = f.add(x, f.inv(x));
    for (Element y : f.nonzero_elements()) ++out[f.add(sx, f.add(y, f.inv(y))).code];
  }
  return out;
}

/// Column counts exactly as they appear as binomial tops in the tabulated weight-distribution
/// formulas, e.g. q^{-1}A(B ± (q+1)) on the β with β² - 1 a nonzero square.
inline std::vector<BigInt> tabulated_column_counts(CosetFamily fam, int n, const Field& f) {
  fam.require_valid(n);
  const BigInt q = f.order();
  const FamilyConstants c = family_constants(fam, n, q);
  const int pm = fam.pm();
  std::vector<std::uint64_t> d2;
  if (fam.even_moments()) d2 = delta2_direct(f);
  const Element one = Field::one();
  const Element minus_one = f.neg(one);

  std::vector<BigInt> out;
  for (Element beta : f.elements()) {
    BigInt paren;
    switch (fam.index) {
      case 1:
      case 3:
        if (beta == one || beta == minus_one) paren = c.B + pm;
        else if (f.is_square(f.sub(f.square(beta), one))) paren = c.B + pm * (q + 1);
        else paren = c.B + pm * (1 - q);
        break;
      case 2: paren = c.B + pm * ((q - 1) * (q - 1) - q * BigInt(d2[beta.code])); break;
      default: {
        const BigInt qd = q * BigInt(d2[beta.code]);
        paren = beta == Field::zero() ? c.B - pm * (qd + (q - 1) * (q - 1) * (q - 1))
                                      : c.B - pm * (qd - 2 * q * q + 3 * q - 1);
        break;
      }
    }
    out.push_back(exact_div(c.A * paren, q, fam.name() + " tabulated column count"));
  }
  return out;
}

/// Weight of c(a) = (tr(a Tr g_1), ..., tr(a Tr g_N)) in closed form, with k = K(λ;a²):
/// (2/3)A{B ∓ k} for i = 1,3; (2/3)A{B ± k²} for i = 2; (2/3)A{B ± (q² - q + k²)} for i = 4.
inline BigInt weight_from_kloosterman(CosetFamily fam, const FamilyConstants& c, const BigInt& q, std::int64_t k) {
  const BigInt kk = k;
  BigInt brace;
  switch (fam.index) {
    case 1:
    case 3: brace = c.B - fam.pm() * kk; break;
    case 2: brace = c.B + fam.pm() * kk * kk; break;
    default: brace = c.B + fam.pm() * (q * q - q + kk * kk); break;
  }
  BigInt w = exact_div(2 * c.A * brace, 3, fam.name() + " dual weight");
  if (w < 0 || w > c.N) throw ConsistencyError(fam.name() + ": dual weight outside [0, N]");
  return w;
}

/// w(c(a)) for every a ∈ F_q indexed by code; the zero word sits at index 0.
struct DualWeights {
  std::vector<BigInt> weight;
};

inline DualWeights dual_weights(CosetFamily fam, int n, const KloostermanTable& table) {
  fam.require_valid(n);
  const Field& f = table.field();
  const BigInt q = f.order();
  const FamilyConstants c = family_constants(fam, n, q);
  DualWeights out{std::vector<BigInt>(f.order(), 0)};
  for (Element a : f.nonzero_elements()) out.weight[a.code] = weight_from_kloosterman(fam, c, q, table.at_square_of(a));
  return out;
}

/// The same weights read off a trace profile: N minus the coordinates with tr(aβ) = 0.
inline DualWeights dual_weights_from_profile(const TraceProfile& p, const Field& f) {
  const BigInt total = p.total();
  DualWeights out{std::vector<BigInt>(f.order(), 0)};
  for (Element a : f.nonzero_elements()) {
    BigInt w = total;
    for (Element beta : f.elements()) {
      if (f.trace(f.mul(a, beta)) == 0) w -= p.counts[beta.code];
    }
    out.weight[a.code] = std::move(w);
  }
  return out;
}

inline BigInt dual_weight(CosetFamily fam, int n, const KloostermanTable& table, Element a) {
  if (a == Field::zero()) throw DomainError("dual_weight: a must be nonzero");
  fam.require_valid(n);
  const BigInt q = table.field().order();
  return weight_from_kloosterman(fam, family_constants(fam, n, q), q, table.at_square_of(a));
}

struct InjectivityReport {
  bool injective = true;
  BigInt min_weight;
  std::vector<Element> vanishing;  ///< nonzero a with c(a) = 0
};

/// a ↦ c(a) is injective iff no nonzero a yields the zero codeword.
inline InjectivityReport check_injectivity(CosetFamily fam, int n, const KloostermanTable& table) {
  const DualWeights w = dual_weights(fam, n, table);
  InjectivityReport r;
  bool first = true;
  for (Element a : table.field().nonzero_elements()) {
    const BigInt& x = w.weight[a.code];
    if (first || x < r.min_weight) r.min_weight = x;
    first = false;
    if (x == 0) {
      r.injective = false;
      r.vanishing.push_back(a);
    }
  }
  return r;
}

inline constexpr int kMaxPrefix = 12;

/// C_j for j = 0..j_max.
struct WeightPrefix {
  std::vector<BigInt> values;
  friend bool operator==(const WeightPrefix&, const WeightPrefix&) = default;
};

/// Number of ternary words of each weight j <= j_max with ν_β ones and μ_β twos on the β-columns,
/// subject to Σ(ν_β - μ_β)β = 0 in F_q. Dynamic programming over β with state (weight so far,
/// running difference s ∈ F_q); the per-β factor groups Σ C(N(β); ν, μ) by ν + μ and ν - μ mod 3.
inline WeightPrefix constrained_weight_prefix(const Field& f, const std::vector<BigInt>& counts, int j_max) {
  if (j_max < 0) throw DomainError("weight prefix: j_max must be nonnegative");
  if (j_max > kMaxPrefix) throw ResourceError("weight prefix: j_max must be <= 12");
  const std::size_t q = f.order();
  const std::size_t width = static_cast<std::size_t>(j_max) + 1;
  std::vector<BigInt> dp(width * q, 0);  // dp[j * q + s]
  dp[0] = 1;
  for (Element beta : f.elements()) {
    const BigInt& n = counts[beta.code];
    if (n == 0) continue;
    std::vector<BigInt> coef(width * 3, 0);  // coef[t * 3 + d]
    for (int nu = 0; nu <= j_max; ++nu) {
      for (int mu = 0; nu + mu <= j_max; ++mu) {
        coef[static_cast<std::size_t>(nu + mu) * 3 + static_cast<std::size_t>((nu - mu + 3 * kMaxPrefix) % 3)] +=
            multinomial(n, static_cast<unsigned>(nu), static_cast<unsigned>(mu));
      }
    }
    const Element shift[3] = {Field::zero(), beta, f.neg(beta)};
    std::vector<BigInt> next(width * q, 0);
    for (std::size_t j = 0; j < width; ++j) {
      for (Element s : f.elements()) {
        const BigInt& cur = dp[j * q + s.code];
        if (cur == 0) continue;
        for (std::size_t t = 0; j + t < width; ++t) {
          for (std::size_t d = 0; d < 3; ++d) {
            const BigInt& k = coef[t * 3 + d];
            if (k == 0) continue;
            next[(j + t) * q + f.add(s, shift[d]).code] += cur * k;
          }
        }
      }
    }
    dp = std::move(next);
  }
  WeightPrefix out;
  for (std::size_t j = 0; j < width; ++j) out.values.push_back(dp[j * q]);
  return out;
}

inline WeightPrefix weight_distribution_prefix(const TraceProfile& p, const Field& f, int j_max) {
  return constrained_weight_prefix(f, p.counts, j_max);
}

/// The prefix with column counts from the tabulated closed forms instead of the trace profile.
inline WeightPrefix tabulated_closed_forms(CosetFamily fam, int n, const Field& f, int j_max) {
  return constrained_weight_prefix(f, tabulated_column_counts(fam, n, f), j_max);
}

/// Full weight distribution of {u ∈ F_3^N : Σ u_k β_k = 0} by listing all 3^N words (N <= 12).
inline std::vector<BigInt> enumerate_code_tiny(const TraceProfile& p, const Field& f) {
  const BigInt total = p.total();
  if (total > 12) throw ResourceError("enumerate_code_tiny: length must be <= 12 (3^N <= 10^6)");
  std::vector<Element> column;
  for (Element beta : f.elements()) {
    for (BigInt i = 0; i < p.counts[beta.code]; ++i) column.push_back(beta);
  }
  const std::size_t len = column.size();
  std::vector<std::uint64_t> dist(len + 1, 0);
  std::vector<Trit> u(len, 0);
  while (true) {
    Element s = Field::zero();
    std::size_t weight = 0;
    for (std::size_t k = 0; k < len; ++k) {
      if (u[k] == 0) continue;
      ++weight;
      s = f.add(s, u[k] == 1 ? column[k] : f.neg(column[k]));
    }
    if (s == Field::zero()) ++dist[weight];
    std::size_t k = 0;
    while (k < len && u[k] == 2) u[k++] = 0;
    if (k == len) break;
    ++u[k];
  }
  return {dist.begin(), dist.end()};
}

/// Column-by-column and prefix comparison of the profile route against the tabulated closed forms.
inline std::vector<Check> compare_weight_routes(CosetFamily fam, int n, const Field& f, int j_max) {
  const TraceProfile profile = trace_profile(fam, n, f);
  const std::vector<BigInt> tabulated = tabulated_column_counts(fam, n, f);
  std::vector<Check> out;
  bool columns_ok = true;
  for (Element beta : f.elements()) {
    if (profile.counts[beta.code] != tabulated[beta.code]) {
      out.push_back(compare("column_count", profile.counts[beta.code], tabulated[beta.code], "beta=" + f.format(beta)));
      columns_ok = false;
    }
  }
  if (columns_ok) out.push_back(assertion("column_counts", true));
  const WeightPrefix dp = weight_distribution_prefix(profile, f, j_max);
  const WeightPrefix closed = constrained_weight_prefix(f, tabulated, j_max);
  for (int j = 0; j <= j_max; ++j) {
    out.push_back(compare("C_" + std::to_string(j), dp.values[static_cast<std::size_t>(j)],
                          closed.values[static_cast<std::size_t>(j)]));
  }
  return out;
}

}  // namespace kloos
