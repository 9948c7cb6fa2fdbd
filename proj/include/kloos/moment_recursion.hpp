#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "kloos/bigint.hpp"
#include "kloos/char_sums.hpp"
#include "kloos/check.hpp"
#include "kloos/code_engine.hpp"
#include "kloos/constants.hpp"
#include "kloos/finite_field.hpp"
#include "kloos/parallel.hpp"

namespace kloos {

inline constexpr int kMaxMomentOrder = 10;

/// The data entering the Pless identity for C(DC): length N, dual dimension k, the q dual
/// codeword weights (zero word included) and C_0..C_jmax of the code itself.
struct PlessInstance {
  BigInt N;
  unsigned k = 0;
  DualWeights dual;
  WeightPrefix prefix;
};

enum class WeightRoute { ClosedForm, Profile };
enum class PrefixRoute { Profile, Tabulated };

inline PlessInstance make_pless_instance(CosetFamily fam, int n, const KloostermanTable& table, int j_max,
                                         WeightRoute weights = WeightRoute::ClosedForm,
                                         PrefixRoute prefix = PrefixRoute::Profile) {
  const Field& f = table.field();
  const TraceProfile profile = trace_profile(fam, n, f);
  PlessInstance out;
  out.N = profile.total();
  out.k = f.degree();
  out.dual = weights == WeightRoute::ClosedForm ? dual_weights(fam, n, table) : dual_weights_from_profile(profile, f);
  out.prefix = prefix == PrefixRoute::Profile ? weight_distribution_prefix(profile, f, j_max)
                                              : tabulated_closed_forms(fam, n, f, j_max);
  return out;
}

/// Σ_j j^h B_j over the dual code, i.e. Σ_a w(c(a))^h with the zero word counted (0^0 = 1).
inline BigInt pless_lhs(const PlessInstance& inst, unsigned h) {
  BigInt sum = 0;
  for (const BigInt& w : inst.dual.weight) sum += ipow(w, h);
  return sum;
}

/// Σ_{a≠0} w(c(a))^h.
inline BigInt nonzero_weight_power_sum(const PlessInstance& inst, unsigned h) {
  return pless_lhs(inst, h) - (h == 0 ? 1 : 0);
}

/// Σ_{j=0}^{min(N,h)} (-1)^j C_j Σ_{t=j}^h t! S(h,t) 3^{k-t} 2^{t-j} C(N-j, N-t).
inline Rational pless_rhs_rational(const PlessInstance& inst, unsigned h) {
  const BigInt top = std::min<BigInt>(inst.N, BigInt(h));
  const unsigned j_top = top.convert_to<unsigned>();
  if (inst.prefix.values.size() <= j_top) {
    throw DomainError("pless_rhs: weight prefix ends at j=" + std::to_string(inst.prefix.values.size() - 1) +
                      ", need j_max >= " + std::to_string(j_top));
  }
  Rational sum = 0;
  for (unsigned j = 0; j <= j_top; ++j) {
    Rational inner = 0;
    for (unsigned t = j; t <= h; ++t) {
      if (BigInt(t) > inst.N) break;
      const BigInt num = factorial(t) * stirling2(h, t) * ipow(BigInt(2), t - j) * binomial(inst.N - j, t - j);
      inner += Rational(num) * rpow(Rational(3), static_cast<long>(inst.k) - static_cast<long>(t));
    }
    if (j % 2) sum -= Rational(inst.prefix.values[j]) * inner;
    else sum += Rational(inst.prefix.values[j]) * inner;
  }
  return sum;
}

inline BigInt pless_rhs(const PlessInstance& inst, unsigned h) {
  return to_integer(pless_rhs_rational(inst, h), "pless_rhs");
}

/// SK^1..SK^hmax (families 1,3) or SK^2, SK^4, ..., SK^{2hmax} (families 2,4).
struct MomentSeries {
  CosetFamily family;
  int n = 0;
  std::vector<BigInt> values;
  std::string provenance;

  /// Power of K carried by values[h-1].
  unsigned exponent(unsigned h) const { return family.even_moments() ? 2 * h : h; }
};

namespace detail {

/// The LHS expansion 2(2/3)^h A^h Σ_l s^l C(h,l) base^{h-l} M_l shared by both routes.
struct Expansion {
  BigInt A;
  BigInt N;
  BigInt base;
  int sign;
};

inline Expansion expansion(CosetFamily fam, int n, const BigInt& q) {
  const FamilyConstants c = family_constants(fam, n, q);
  Expansion e{c.A, c.N, c.B, fam.even_moments() ? fam.pm() : -fam.pm()};
  if (fam.index == 4) e.base += fam.pm() * (q * q - q);
  return e;
}

inline void require_order(int h_max) {
  if (h_max < 1 || h_max > kMaxMomentOrder) throw ResourceError("moment order h_max must be in 1..10");
}

inline int sign_power(int sign, unsigned l) { return (sign < 0 && l % 2) ? -1 : 1; }

/// Σ_{l<h} s^l C(h,l) base^{h-l} M_l with M_0 = (q-1)/2.
inline BigInt lower_terms(const Expansion& e, const std::vector<BigInt>& m, unsigned h) {
  BigInt sum = 0;
  for (unsigned l = 0; l < h; ++l) {
    sum += sign_power(e.sign, l) * binomial(BigInt(h), l) * ipow(e.base, h - l) * m[l];
  }
  return sum;
}

}  // namespace detail

/// Solves the Pless identity for the moments one order at a time. The RHS only needs C_0..C_h;
/// on the LHS 2(2/3)^h A^h Σ_l s^l C(h,l) base^{h-l} M_l only the l = h term is unknown.
inline MomentSeries sk_via_pless(CosetFamily fam, int n, const KloostermanTable& table, int h_max) {
  detail::require_order(h_max);
  const BigInt q = table.field().order();
  const PlessInstance inst = make_pless_instance(fam, n, table, std::min(h_max, kMaxPrefix));
  const detail::Expansion e = detail::expansion(fam, n, q);
  std::vector<BigInt> m{exact_div(q - 1, 2, "SK^0")};
  MomentSeries out{fam, n, {}, "recursion"};
  for (unsigned h = 1; h <= static_cast<unsigned>(h_max); ++h) {
    const Rational lhs = pless_rhs_rational(inst, h);
    const Rational scaled = lhs * rpow(Rational(3), h) / (Rational(2) * rpow(Rational(2 * e.A), h));
    const BigInt total = to_integer(scaled, fam.name() + " solved moment at h=" + std::to_string(h));
    const BigInt value = detail::sign_power(e.sign, h) * (total - detail::lower_terms(e, m, h));
    m.push_back(value);
    out.values.push_back(value);
  }
  return out;
}

struct TabulatedAudit {
  MomentSeries series;
  /// Empty when every order agrees with the solved recursion; otherwise the first differing
  /// (h, term) followed by any later ones.
  std::vector<std::string> discrepancies;
  bool matches() const { return discrepancies.empty(); }
};

/// The tabulated recursion transcribed literally:
///   s^h M_h = -Σ_{l<h} s^l C(h,l) base^{h-l} M_l
///             + q A^{-h} Σ_j (-1)^j C_j Σ_t t! S(h,t) 3^{h-t} 2^{t-h-j-1} C(N-j, N-t),
/// with C_j from the tabulated column counts. Each order is compared term by term against the
/// solved recursion; earlier moments fed forward are the tabulated route's own.
inline TabulatedAudit sk_via_tabulated_formula(CosetFamily fam, int n, const KloostermanTable& table, int h_max) {
  detail::require_order(h_max);
  const Field& f = table.field();
  const BigInt q = f.order();
  // Sign token (±(-1)) for i = 1,3 and (±1) for i = 2,4; base B, or {B ± (q² - q)} for i = 4.
  const FamilyConstants c = family_constants(fam, n, q);
  const int token = (fam.index == 1 || fam.index == 3) ? (fam.plus() ? -1 : 1) : (fam.plus() ? 1 : -1);
  const BigInt base = fam.index == 4 ? (fam.plus() ? c.B + (q * q - q) : c.B - (q * q - q)) : c.B;
  const detail::Expansion e{c.A, c.N, base, token};
  const WeightPrefix prefix = tabulated_closed_forms(fam, n, f, std::min(h_max, kMaxPrefix));
  const PlessInstance derived = make_pless_instance(fam, n, table, std::min(h_max, kMaxPrefix));
  const MomentSeries reference = sk_via_pless(fam, n, table, h_max);

  TabulatedAudit audit{{fam, n, {}, "tabulated"}, {}};
  std::vector<BigInt> m{exact_div(q - 1, 2, "SK^0")};
  for (unsigned h = 1; h <= static_cast<unsigned>(h_max); ++h) {
    const BigInt lower = detail::lower_terms(e, m, h);
    Rational kernel = 0;
    const unsigned j_top = std::min<BigInt>(e.N, BigInt(h)).convert_to<unsigned>();
    for (unsigned j = 0; j <= j_top; ++j) {
      Rational inner = 0;
      for (unsigned t = j; t <= h; ++t) {
        if (BigInt(t) > e.N) break;
        const BigInt num = factorial(t) * stirling2(h, t) * ipow(BigInt(3), h - t) * binomial(e.N - j, t - j);
        inner += Rational(num) * rpow(Rational(2), static_cast<long>(t) - static_cast<long>(h) - static_cast<long>(j) - 1);
      }
      const Rational term = Rational(prefix.values[j]) * inner;
      kernel += j % 2 ? -term : term;
    }
    kernel *= Rational(q) / rpow(Rational(e.A), h);

    const Rational signed_value = kernel - Rational(lower);
    const std::string at = fam.name() + " n=" + std::to_string(n) + " h=" + std::to_string(h);
    std::optional<BigInt> value;
    if (boost::multiprecision::denominator(signed_value) == 1) {
      value = detail::sign_power(e.sign, h) * boost::multiprecision::numerator(signed_value);
    }

    // The solved recursion's kernel: the scaled Pless RHS minus the zero word.
    const Rational derived_kernel = pless_rhs_rational(derived, h) * rpow(Rational(3), h) /
                                    (Rational(2) * rpow(Rational(2 * e.A), h));
    const BigInt& expected = reference.values[h - 1];
    if (kernel != derived_kernel) {
      audit.discrepancies.push_back(at + ": kernel term " + kernel.str() + " differs from " + derived_kernel.str());
    } else if (!value) {
      audit.discrepancies.push_back(at + ": non-integral moment " + signed_value.str());
    } else if (*value != expected) {
      audit.discrepancies.push_back(at + ": lower-order sum gives " + value->str() + ", expected " + expected.str());
    }
    const BigInt next = value ? *value : expected;
    m.push_back(next);
    audit.series.values.push_back(next);
  }
  return audit;
}

/// Results for one (family, n) instance.
struct InstanceReport {
  CosetFamily family;
  int n = 0;
  std::vector<Check> checks;
  std::vector<BigInt> moments;
  std::vector<std::string> tabulated_discrepancies;
  bool passed() const { return all_passed(checks); }
};

struct VerificationReport {
  unsigned q = 0;
  std::vector<Trit> modulus;
  int n_max = 0;
  int h_max = 0;
  std::vector<Check> global;
  std::vector<InstanceReport> instances;
  bool passed() const {
    return all_passed(global) && std::ranges::all_of(instances, [](const InstanceReport& r) { return r.passed(); });
  }
};

/// Every check for one instance: profile mass, both weight routes, both prefix routes, the Pless
/// identity four ways for h <= pless_h, injectivity, the solved moments against the oracle
/// and the tabulated recursion against the solved one.
inline InstanceReport verify_instance(CosetFamily fam, int n, const KloostermanTable& table, int h_max,
                                      int pless_h = kMaxMomentOrder) {
  const Field& f = table.field();
  const BigInt q = f.order();
  const int j_max = std::min(std::max(h_max, pless_h), kMaxPrefix);
  InstanceReport rep{fam, n, {}, {}, {}};
  auto& checks = rep.checks;

  const TraceProfile profile = trace_profile(fam, n, f);
  checks.push_back(compare("profile_mass", profile.total(), family_constants(fam, n, q).N));

  const DualWeights closed = dual_weights(fam, n, table);
  const DualWeights read = dual_weights_from_profile(profile, f);
  std::string first_weight_mismatch;
  for (Element a : f.nonzero_elements()) {
    if (closed.weight[a.code] != read.weight[a.code] && first_weight_mismatch.empty()) {
      first_weight_mismatch = "a=" + f.format(a);
    }
  }
  checks.push_back(assertion("dual_weight_routes", first_weight_mismatch.empty(), first_weight_mismatch));

  const InjectivityReport inj = check_injectivity(fam, n, table);
  checks.push_back(assertion("injective", inj.injective, "min weight " + inj.min_weight.str()));

  std::vector<Check> routes = compare_weight_routes(fam, n, f, j_max);
  const bool routes_ok = all_passed(routes);
  for (Check& c : routes) {
    if (!c.passed) checks.push_back(std::move(c));
  }
  checks.push_back(assertion("prefix_routes", routes_ok));

  const WeightPrefix dp = weight_distribution_prefix(profile, f, j_max);
  const WeightPrefix tabulated = tabulated_closed_forms(fam, n, f, j_max);
  for (int h = 0; h <= pless_h; ++h) {
    const unsigned uh = static_cast<unsigned>(h);
    std::vector<BigInt> values;
    for (const DualWeights* w : {&closed, &read}) {
      for (const WeightPrefix* p : {&dp, &tabulated}) {
        const PlessInstance inst{profile.total(), f.degree(), *w, *p};
        values.push_back(pless_lhs(inst, uh));
        values.push_back(pless_rhs(inst, uh));
      }
    }
    const bool same = std::ranges::all_of(values, [&](const BigInt& v) { return v == values.front(); });
    Check c = compare("pless(h=" + std::to_string(h) + ")", values[0], values[1]);
    if (!same) {
      c.passed = false;
      c.detail = "four-way disagreement";
    }
    checks.push_back(std::move(c));
  }

  const MomentSeries solved = sk_via_pless(fam, n, table, h_max);
  for (unsigned h = 1; h <= static_cast<unsigned>(h_max); ++h) {
    const unsigned e = solved.exponent(h);
    checks.push_back(compare("SK^" + std::to_string(e), solved.values[h - 1], sk_moment(table, e)));
  }
  rep.moments = solved.values;

  TabulatedAudit audit = sk_via_tabulated_formula(fam, n, table, h_max);
  rep.tabulated_discrepancies = std::move(audit.discrepancies);
  return rep;
}

/// Runs every valid (family, n <= n_max) instance over the field plus the constants cross-check.
inline VerificationReport full_verification(const KloostermanTable& table, int n_max, int h_max,
                                            unsigned jobs = 1, int pless_h = -1) {
  detail::require_order(h_max);
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  if (pless_h < 0) pless_h = h_max;
  detail::require_order(std::max(pless_h, 1));
  const Field& f = table.field();
  VerificationReport rep;
  rep.q = f.order();
  rep.modulus = f.modulus();
  rep.n_max = n_max;
  rep.h_max = h_max;

  const auto mismatches = family_constants_consistency(n_max, f.order());
  std::string detail;
  for (const auto& m : mismatches) detail += m.family.name() + " n=" + std::to_string(m.n) + " ";
  rep.global.push_back(assertion("constants_consistency", mismatches.empty(), detail));

  struct Job {
    CosetFamily family;
    int n;
  };
  std::vector<Job> work;
  for (const CosetFamily& fam : CosetFamily::all()) {
    for (int n = fam.min_n(); n <= n_max; n += 2) work.push_back({fam, n});
  }
  rep.instances = parallel_map(
      work, [&](const Job& j) { return verify_instance(j.family, j.n, table, h_max, pless_h); }, jobs);
  return rep;
}

}  // namespace kloos
