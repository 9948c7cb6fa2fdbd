#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "kloos/bigint.hpp"
#include "kloos/char_sums.hpp"
#include "kloos/code_engine.hpp"
#include "kloos/constants.hpp"
#include "kloos/finite_field.hpp"
#include "kloos/moment_recursion.hpp"

namespace kloos::json {

using nlohmann::ordered_json;

/// Integers that fit in int64 become JSON numbers, larger ones decimal strings.
inline ordered_json big(const BigInt& x) {
  if (fits_int64(x)) return x.convert_to<std::int64_t>();
  return x.str();
}

inline BigInt read_big(const ordered_json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(j.get<std::int64_t>());
}

inline ordered_json big_array(const std::vector<BigInt>& xs) {
  ordered_json out = ordered_json::array();
  for (const BigInt& x : xs) out.push_back(big(x));
  return out;
}

inline std::vector<BigInt> read_big_array(const ordered_json& j) {
  std::vector<BigInt> out;
  for (const auto& x : j) out.push_back(read_big(x));
  return out;
}

inline ordered_json modulus(const Field& f) {
  ordered_json out = ordered_json::array();
  for (Trit t : f.modulus()) out.push_back(t);
  return out;
}

inline ordered_json field_info(const Field& f) {
  ordered_json out;
  out["q"] = f.order();
  out["r"] = f.degree();
  out["modulus"] = modulus(f);
  out["generator"] = f.format(f.generator());
  out["epsilon"] = f.format(f.first_nonsquare());
  out["squares"] = (f.order() - 1) / 2;
  return out;
}

/// β ↦ value keyed by the comma-separated coefficients of β.
template <class V>
ordered_json by_element(const Field& f, const std::vector<V>& values, bool skip_zero = false) {
  ordered_json out = ordered_json::object();
  for (Element x : f.elements()) {
    if (skip_zero && x == Field::zero()) continue;
    if constexpr (std::is_same_v<V, BigInt>) out[f.format(x)] = big(values[x.code]);
    else out[f.format(x)] = values[x.code];
  }
  return out;
}

inline ordered_json kloosterman_moments(const KloostermanTable& t, unsigned h_max) {
  const Field& f = t.field();
  ordered_json out;
  out["q"] = f.order();
  out["modulus"] = modulus(f);
  ordered_json k = ordered_json::object();
  for (Element a : f.nonzero_elements()) k[f.format(a)] = t(a);
  out["K"] = std::move(k);
  ordered_json hs = ordered_json::array();
  std::vector<BigInt> sk;
  std::vector<BigInt> mk;
  for (unsigned h = 1; h <= h_max; ++h) {
    hs.push_back(h);
    sk.push_back(sk_moment(t, h));
    mk.push_back(mk_moment(t, h));
  }
  out["h"] = std::move(hs);
  out["SK"] = big_array(sk);
  out["MK"] = big_array(mk);
  return out;
}

inline ordered_json constants_row(CosetFamily fam, int n, const BigInt& q) {
  const FamilyConstants c = family_constants(fam, n, q);
  ordered_json out;
  out["family"] = fam.name();
  out["n"] = n;
  out["q"] = big(q);
  out["A"] = big(c.A);
  out["B"] = big(c.B);
  out["N"] = big(c.N);
  return out;
}

inline ordered_json code_dump(CosetFamily fam, int n, const KloostermanTable& t, int j_max) {
  const Field& f = t.field();
  const TraceProfile p = trace_profile(fam, n, f);
  ordered_json out;
  out["family"] = fam.name();
  out["n"] = n;
  out["q"] = f.order();
  out["N"] = big(p.total());
  out["profile"] = by_element(f, p.counts);
  out["dual_weights"] = by_element(f, dual_weights(fam, n, t).weight, true);
  out["C_prefix"] = big_array(weight_distribution_prefix(p, f, j_max).values);
  return out;
}

inline ordered_json check(const Check& c) {
  ordered_json out;
  out["name"] = c.name;
  out["status"] = c.passed ? "pass" : "fail";
  out["lhs"] = big(c.lhs);
  out["rhs"] = big(c.rhs);
  if (!c.detail.empty()) out["detail"] = c.detail;
  return out;
}

inline Check read_check(const ordered_json& j) {
  Check c;
  c.name = j.at("name").get<std::string>();
  c.passed = j.at("status").get<std::string>() == "pass";
  c.lhs = read_big(j.at("lhs"));
  c.rhs = read_big(j.at("rhs"));
  if (j.contains("detail")) c.detail = j.at("detail").get<std::string>();
  return c;
}

inline ordered_json report(const VerificationReport& rep) {
  ordered_json out;
  out["q"] = rep.q;
  ordered_json mod = ordered_json::array();
  for (Trit t : rep.modulus) mod.push_back(t);
  out["modulus"] = std::move(mod);
  out["n_max"] = rep.n_max;
  out["h_max"] = rep.h_max;
  out["passed"] = rep.passed();
  ordered_json global = ordered_json::array();
  for (const Check& c : rep.global) global.push_back(check(c));
  out["global"] = std::move(global);
  ordered_json instances = ordered_json::array();
  for (const InstanceReport& r : rep.instances) {
    ordered_json item;
    item["instance"] = {{"family", r.family.name()}, {"n", r.n}};
    ordered_json checks = ordered_json::array();
    for (const Check& c : r.checks) checks.push_back(check(c));
    item["checks"] = std::move(checks);
    item["SK"] = big_array(r.moments);
    item["tabulated_discrepancies"] = r.tabulated_discrepancies;
    instances.push_back(std::move(item));
  }
  out["instances"] = std::move(instances);
  return out;
}

inline VerificationReport read_report(const ordered_json& j) {
  VerificationReport rep;
  rep.q = j.at("q").get<unsigned>();
  for (const auto& t : j.at("modulus")) rep.modulus.push_back(t.get<Trit>());
  rep.n_max = j.at("n_max").get<int>();
  rep.h_max = j.at("h_max").get<int>();
  for (const auto& c : j.at("global")) rep.global.push_back(read_check(c));
  for (const auto& item : j.at("instances")) {
    InstanceReport r;
    r.family = CosetFamily::parse(item.at("instance").at("family").get<std::string>());
    r.n = item.at("instance").at("n").get<int>();
    for (const auto& c : item.at("checks")) r.checks.push_back(read_check(c));
    r.moments = read_big_array(item.at("SK"));
    r.tabulated_discrepancies = item.at("tabulated_discrepancies").get<std::vector<std::string>>();
    rep.instances.push_back(std::move(r));
  }
  return rep;
}

}  // namespace kloos::json
