// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 only if all pass.
// Every comparison is exact integer equality.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kloos/group_oracle.hpp"
#include "kloos/kloos.hpp"

using namespace kloos;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream note;

  void expect(bool ok, const std::string& what) {
    if (!ok && passed) note << "first failure: " << what << "; ";
    passed = passed && ok;
  }
};

CosetFamily fam(const char* s) { return CosetFamily::parse(s); }

std::vector<BigInt> big(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

/// Full reports for q = 3, 9, 27 at n <= 6, recursion h <= 8, Pless h <= 10; shared by 1, 2, 7.
const std::map<unsigned, VerificationReport>& reports() {
  static const std::map<unsigned, VerificationReport> cache = [] {
    std::map<unsigned, VerificationReport> out;
    const unsigned jobs = jobs_from_env();
    for (unsigned r = 1; r <= 3; ++r) {
      KloostermanTable t(Field::build(r));
      out.emplace(t.field().order(), full_verification(t, 6, 8, jobs, 10));
    }
    return out;
  }();
  return cache;
}

bool starts_with(const std::string& s, const char* p) { return s.rfind(p, 0) == 0; }

void criterion1(Outcome& o) {
  std::size_t compared = 0;
  for (const auto& [q, rep] : reports()) {
    for (const Check& g : rep.global) o.expect(g.passed, "q=" + std::to_string(q) + " " + g.name);
    for (const InstanceReport& inst : rep.instances) {
      for (const Check& c : inst.checks) {
        if (!starts_with(c.name, "SK^")) continue;
        ++compared;
        o.expect(c.passed, "q=" + std::to_string(q) + " " + inst.family.name() + " n=" + std::to_string(inst.n) +
                               " " + c.name + ": " + c.lhs.str() + " vs " + c.rhs.str());
      }
    }
  }
  // Moments do not depend on the family that produced them.
  for (const auto& [q, rep] : reports()) {
    std::map<std::pair<bool, int>, std::vector<BigInt>> seen;
    for (const InstanceReport& inst : rep.instances) {
      auto [it, fresh] = seen.emplace(std::pair{inst.family.even_moments(), 0}, inst.moments);
      o.expect(fresh || it->second == inst.moments, "family independence at q=" + std::to_string(q));
    }
  }
  o.note << compared << " moments compared over 60 instances";
}

void criterion2(Outcome& o) {
  std::size_t identities = 0;
  for (const auto& [q, rep] : reports()) {
    for (const InstanceReport& inst : rep.instances) {
      for (const Check& c : inst.checks) {
        if (starts_with(c.name, "SK^")) continue;
        if (starts_with(c.name, "pless")) ++identities;
        o.expect(c.passed, "q=" + std::to_string(q) + " " + inst.family.name() + " n=" + std::to_string(inst.n) +
                               " " + c.name + " " + c.detail);
      }
    }
  }
  o.note << identities << " identities (h = 0..10), each four ways";
}

void criterion3(Outcome& o) {
  auto f = Field::build(1);
  const Element eps = f->first_nonsquare();
  o.expect(enumerate_so2_minus(f, eps).size() == 4, "|SO-(2,3)|");
  o.expect(enumerate_o2_minus(f, eps).size() == 8, "|O-(2,3)|");
  o.expect(enumerate_q(f, 2, eps).size() == 72, "|Q(4,3)|");

  const GroupSet q_sigma = double_coset(f, fam("DC1+"), 2, eps);
  o.expect(q_sigma.size() == 648, "|Q sigma_1 Q|");

  const GroupSet o4 = enumerate_orthogonal(f, 2, eps);
  BigInt bruhat = 0;
  for (int r = 0; r <= 1; ++r) bruhat += 2 * coset_orders(2, r, 3).double_coset;
  o.expect(bruhat == 1440 && o4.size() == 1440, "Bruhat total 1440");

  std::vector<Matrix> all;
  for (const char* s : {"DC2+", "DC1+", "DC3+"}) {
    for (const Matrix& m : double_coset(f, fam(s), 2, eps).elements) all.push_back(m);
  }
  for (const Matrix& m : q_sigma.elements) all.push_back(multiply(*f, rho(*f, 2), m));
  std::ranges::sort(all);
  o.expect(std::ranges::adjacent_find(all) == all.end(), "Bruhat cells disjoint");
  o.expect(all == o4.elements, "Bruhat cells cover O-(4,3)");

  for (const char* s : {"DC1-", "DC2+", "DC3+", "DC1+"}) {
    const CosetFamily c = fam(s);
    const TraceProfile hist = trace_histogram(double_coset(f, c, c.min_n(), eps));
    o.expect(hist.counts == trace_profile(c, c.min_n(), *f).counts, std::string(s) + " histogram");
  }
  o.expect(trace_histogram(double_coset(f, fam("DC1-"), 1, eps)).counts == big({2, 1, 1}), "DC1-(1,3) = 2 - delta1");
  o.expect(trace_histogram(double_coset(f, fam("DC3+"), 2, eps)).counts == big({0, 36, 36}), "DC3+(2,3)");
}

void criterion4(Outcome& o) {
  auto f3 = Field::build(1);
  KloostermanTable t3(f3);
  const Element eps = f3->first_nonsquare();
  std::size_t sums = 0;
  for (const char* s : {"DC1-", "DC1+", "DC2+", "DC3+"}) {
    const CosetFamily c = fam(s);
    const GroupSet dc = double_coset(f3, c, c.min_n(), eps);
    for (Element a : f3->nonzero_elements()) {
      ++sums;
      o.expect(BigInt(gauss_sum_dc(dc, a).real_value("dc")) ==
                   double_coset_sum_closed_form(c, c.min_n(), 3, t3.at_square_of(a)),
               std::string(s) + " exponential sum");
    }
  }
  for (unsigned r : {1u, 2u}) {
    auto f = Field::build(r);
    for (Element a : f->nonzero_elements()) {
      for (int rr : {1, 2}) {
        ++sums;
        o.expect(BigInt(b_r_bruteforce(*f, rr, a, f->first_nonsquare()).real_value("b_r")) ==
                     b_r_closed_form(rr, f->order()),
                 "b_" + std::to_string(rr) + " at q=" + std::to_string(f->order()));
      }
      for (const Check& c : rank_two_sum_check(f, a, f->first_nonsquare())) {
        ++sums;
        o.expect(c.passed, c.name + " q=" + std::to_string(f->order()));
      }
    }
  }
  o.note << sums << " closed forms checked";
}

void criterion5(Outcome& o) {
  std::size_t checks = 0;
  for (unsigned r = 1; r <= 3; ++r) {
    auto f = Field::build(r);
    KloostermanTable t(f);
    const BigInt q = f->order();
    for (Element a : f->nonzero_elements()) {
      const BigInt k = t(a);
      o.expect(k * k <= 4 * q, "Weil bound");
      ++checks;
    }
    for (unsigned m = 0; m <= 3; ++m) {
      for (Element a : f->nonzero_elements()) {
        const Check c = verify_delta_transform(t, m, a);
        o.expect(c.passed, c.name + " q=" + q.str());
        ++checks;
      }
      for (Element b : f->elements()) {
        const Check c = verify_twisted_moment(t, m, b);
        o.expect(c.passed, c.name + " q=" + q.str());
        ++checks;
      }
    }
    const auto d2 = delta_table(*f, 2);
    for (Element b : f->elements()) o.expect(d2[b.code] <= 2 * f->order() - 4, "delta2 bound");
    o.expect(d2[0] == 2 * f->order() - 4, "delta2 equality at 0");
    checks += f->order();
  }
  o.note << checks << " identities and bounds";
}

void criterion6(Outcome& o) {
  auto f = Field::build(1);
  const TraceProfile p = trace_profile(fam("DC1-"), 1, *f);
  const auto expected = big({1, 4, 6, 8, 8});
  o.expect(enumerate_code_tiny(p, *f) == expected, "exhaustive distribution");
  o.expect(weight_distribution_prefix(p, *f, 4).values == expected, "dynamic program");
  o.expect(tabulated_closed_forms(fam("DC1-"), 1, *f, 4).values == expected, "tabulated column counts");
}

void criterion7(Outcome& o) {
  std::size_t instances = 0;
  std::size_t differing = 0;
  for (const auto& [q, rep] : reports()) {
    for (const InstanceReport& inst : rep.instances) {
      ++instances;
      if (inst.tabulated_discrepancies.empty()) continue;
      if (differing++ == 0) o.note << "documented: " << inst.tabulated_discrepancies.front() << "; ";
    }
  }
  o.note << differing << "/" << instances << " instances differ from the tabulated recursion";
}

void criterion8(Outcome& o) {
  auto a = Field::build(2);
  auto b = Field::build(2, std::vector<Trit>{1, 0, 1});
  KloostermanTable ta(a);
  KloostermanTable tb(b);
  for (unsigned h = 0; h <= 16; ++h) {
    o.expect(sk_moment(ta, h) == sk_moment(tb, h), "SK^" + std::to_string(h) + " across moduli");
    o.expect(mk_moment(ta, h) == mk_moment(tb, h), "MK^" + std::to_string(h) + " across moduli");
  }
  const VerificationReport ra = full_verification(ta, 4, 8, jobs_from_env());
  const VerificationReport rb = full_verification(tb, 4, 8, jobs_from_env());
  o.expect(ra.passed() && rb.passed(), "verification under both moduli");
  for (std::size_t i = 0; i < ra.instances.size(); ++i) {
    o.expect(ra.instances[i].moments == rb.instances[i].moments, "recursion moments across moduli");
    o.expect(trace_profile(ra.instances[i].family, ra.instances[i].n, *a).counts.size() == 9, "profile size");
  }
  for (const CosetFamily& c : CosetFamily::all()) {
    for (int n = c.min_n(); n <= 6; n += 2) {
      const FamilyConstants x = family_constants(c, n, a->order());
      const FamilyConstants y = family_constants(c, n, b->order());
      o.expect(x.A == y.A && x.B == y.B && x.N == y.N, "constants across moduli");
      // Profiles are keyed by field element, so compare them as multisets of counts.
      auto pa = trace_profile(c, n, *a).counts;
      auto pb = trace_profile(c, n, *b).counts;
      std::ranges::sort(pa);
      std::ranges::sort(pb);
      o.expect(pa == pb, "profile multiset across moduli");
    }
  }

  // Second nonsquare: every group-level quantity at q = 9.
  for (const auto& f : {a, b}) {
    const std::vector<Element> ns = f->nonsquares();
    const Element e1 = ns[0];
    const Element e2 = ns[1];
    for (Element x : f->nonzero_elements()) {
      o.expect(BigInt(b_r_bruteforce(*f, 1, x, e1).real_value("b")) ==
                   BigInt(b_r_bruteforce(*f, 1, x, e2).real_value("b")),
               "b_1 across epsilon");
      o.expect(all_passed(rank_two_sum_check(f, x, e1)) && all_passed(rank_two_sum_check(f, x, e2)), "rank-two sums across epsilon");
    }
    for (Element eps : {e1, e2}) {
      const GroupSet q4 = enumerate_q(f, 2, eps);
      o.expect(trace_histogram(q4).counts == trace_profile(fam("DC2+"), 2, *f).counts, "Q(4,9) histogram");
      std::vector<Matrix> shifted;
      for (const Matrix& m : q4.elements) shifted.push_back(multiply(*f, rho(*f, 2), m));
      const GroupSet rq = detail::make_set("rhoQ", f, eps, std::move(shifted));
      o.expect(trace_histogram(rq).counts == trace_profile(fam("DC3+"), 2, *f).counts, "rhoQ(4,9) histogram");
      o.expect(trace_histogram(enumerate_so2_minus(f, eps)).counts ==
                   trace_histogram(enumerate_so2_minus(f, e1)).counts,
               "SO-(2,9) histogram");
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"1 moment recursion equals direct SK^h (q=3,9,27; n<=6; h<=8)", criterion1},
      {"2 Pless identity four ways (h<=10)", criterion2},
      {"3 group brute force at q=3", criterion3},
      {"4 exponential-sum closed forms", criterion4},
      {"5 delta transform / twisted moment / delta bound / Weil", criterion5},
      {"6 tiny code exhaustion DC1-(1,3)", criterion6},
      {"7 tabulated recursion audit", criterion7},
      {"8 modulus and nonsquare independence at q=9", criterion8},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.passed = false;
      o.note << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.passed;
    std::printf("[%s] criterion %s (%.1fs) %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), secs, o.note.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", all ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL");
  return all ? 0 : 1;
}
