#include <gtest/gtest.h>

#include "kloos/moment_recursion.hpp"

using namespace kloos;

namespace {

CosetFamily fam(const char* s) { return CosetFamily::parse(s); }
std::vector<BigInt> big(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Pless, TinyInstance) {
  KloostermanTable t(Field::build(1));
  const PlessInstance inst = make_pless_instance(fam("DC1-"), 1, t, 4);
  EXPECT_EQ(inst.N, 4);
  EXPECT_EQ(inst.k, 1u);
  EXPECT_EQ(nonzero_weight_power_sum(inst, 0), 2);
  EXPECT_EQ(pless_lhs(inst, 0), 3);
  EXPECT_EQ(pless_rhs(inst, 0), 3);
  EXPECT_EQ(nonzero_weight_power_sum(inst, 1), 4);
  EXPECT_EQ(pless_rhs(inst, 1), 4);
  for (unsigned h = 0; h <= 10; ++h) EXPECT_EQ(pless_lhs(inst, h), pless_rhs(inst, h)) << h;
}

TEST(Pless, ShortPrefixIsRejected) {
  KloostermanTable t(Field::build(1));
  const PlessInstance inst = make_pless_instance(fam("DC2+"), 2, t, 2);
  EXPECT_EQ(pless_lhs(inst, 2), pless_rhs(inst, 2));
  EXPECT_THROW(pless_rhs(inst, 3), DomainError);
}

TEST(Pless, FourWayAtNine) {
  KloostermanTable t(Field::build(2));
  for (const CosetFamily& c : CosetFamily::all()) {
    for (int n = c.min_n(); n <= 4; n += 2) {
      for (WeightRoute w : {WeightRoute::ClosedForm, WeightRoute::Profile}) {
        for (PrefixRoute p : {PrefixRoute::Profile, PrefixRoute::Tabulated}) {
          const PlessInstance inst = make_pless_instance(c, n, t, 10, w, p);
          for (unsigned h = 0; h <= 10; ++h) EXPECT_EQ(pless_lhs(inst, h), pless_rhs(inst, h)) << c.name() << h;
        }
      }
    }
  }
}

TEST(Recursion, SpecSeries) {
  KloostermanTable t(Field::build(1));
  EXPECT_EQ(sk_via_pless(fam("DC1-"), 1, t, 4).values, big({-1, 1, -1, 1}));
  EXPECT_EQ(sk_via_pless(fam("DC2+"), 2, t, 3).values, big({1, 1, 1}));
  EXPECT_THROW(sk_via_pless(fam("DC1-"), 1, t, 11), ResourceError);
}

TEST(Recursion, OracleEqualityAcrossFamilies) {
  for (unsigned r = 1; r <= 2; ++r) {
    KloostermanTable t(Field::build(r));
    for (const CosetFamily& c : CosetFamily::all()) {
      for (int n = c.min_n(); n <= 5; n += 2) {
        const MomentSeries s = sk_via_pless(c, n, t, 8);
        for (unsigned h = 1; h <= 8; ++h) EXPECT_EQ(s.values[h - 1], sk_moment(t, s.exponent(h))) << c.name() << n << h;
      }
    }
  }
}

TEST(Recursion, TabulatedFormulaAudit) {
  KloostermanTable t(Field::build(1));
  for (auto [name, n, h] : {std::tuple{"DC1-", 1, 4}, std::tuple{"DC3+", 2, 4}, std::tuple{"DC4-", 3, 3}}) {
    const TabulatedAudit a = sk_via_tabulated_formula(fam(name), n, t, h);
    EXPECT_TRUE(a.matches()) << name << (a.discrepancies.empty() ? "" : a.discrepancies.front());
    EXPECT_EQ(a.series.values, sk_via_pless(fam(name), n, t, h).values);
  }
}

TEST(Verification, SmallRunPasses) {
  KloostermanTable t(Field::build(1));
  const VerificationReport rep = full_verification(t, 3, 6);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.instances.size(), 8u);  // DC1+,2+,3+ at 2; DC1- at 1,3; DC2-,3-,4- at 3
}

TEST(Verification, ParallelMatchesSerial) {
  KloostermanTable t(Field::build(2));
  const VerificationReport a = full_verification(t, 3, 4, 1);
  const VerificationReport b = full_verification(t, 3, 4, 3);
  ASSERT_EQ(a.instances.size(), b.instances.size());
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    EXPECT_EQ(a.instances[i].family, b.instances[i].family);
    EXPECT_EQ(a.instances[i].moments, b.instances[i].moments);
  }
}
