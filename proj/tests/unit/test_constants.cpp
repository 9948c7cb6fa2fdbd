#include <gtest/gtest.h>

#include "kloos/constants.hpp"

using namespace kloos;

TEST(CosetFamily, ParseAndName) {
  for (const CosetFamily& fam : CosetFamily::all()) EXPECT_EQ(CosetFamily::parse(fam.name()), fam);
  EXPECT_THROW(CosetFamily::parse("DC5+"), DomainError);
  EXPECT_THROW(CosetFamily::parse("dc1+"), DomainError);
}

TEST(CosetFamily, ParityRules) {
  const auto fam = [](const char* s) { return CosetFamily::parse(s); };
  EXPECT_TRUE(fam("DC1+").valid_n(2));
  EXPECT_FALSE(fam("DC1+").valid_n(3));
  EXPECT_FALSE(fam("DC4+").valid_n(2));
  EXPECT_TRUE(fam("DC4+").valid_n(4));
  EXPECT_TRUE(fam("DC1-").valid_n(1));
  EXPECT_FALSE(fam("DC2-").valid_n(1));
  EXPECT_TRUE(fam("DC4-").valid_n(3));
  try {
    fam("DC4+").require_valid(2);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("even n >= 4"), std::string::npos);
  }
}

TEST(QBinom, Values) {
  EXPECT_EQ(q_binom(2, 1, 3), 4);
  EXPECT_EQ(q_binom(5, 0, 3), 1);
  EXPECT_EQ(q_binom(4, 2, 3), 130);  // subspace count oracle
  EXPECT_EQ(q_binom(2, 3, 3), 0);
}

TEST(QBinom, PascalAndSymmetry) {
  for (const BigInt q : {BigInt(3), BigInt(9)}) {
    for (unsigned n = 1; n <= 10; ++n) {
      for (unsigned r = 1; r <= n; ++r) {
        EXPECT_EQ(q_binom(n, r, q), q_binom(n - 1, r - 1, q) + ipow(q, r) * q_binom(n - 1, r, q));
        EXPECT_EQ(q_binom(n, r, q), q_binom(n, n - r, q));
      }
    }
  }
}

TEST(Stirling, Values) {
  EXPECT_EQ(stirling2(3, 2), 3);
  EXPECT_EQ(stirling2(5, 3), 25);
  EXPECT_EQ(stirling2(0, 0), 1);
  EXPECT_EQ(stirling2(3, 5), 0);
  for (unsigned h = 1; h <= 12; ++h) {
    EXPECT_EQ(stirling2(h, 1), 1);
    EXPECT_EQ(stirling2(h, h), 1);
    for (unsigned t = 1; t <= h; ++t) EXPECT_EQ(stirling2(h, t), t * stirling2(h - 1, t) + stirling2(h - 1, t - 1));
  }
}

TEST(GlOrder, Values) {
  EXPECT_EQ(gl_order(0, 3), 1);
  EXPECT_EQ(gl_order(1, 3), 2);
  EXPECT_EQ(gl_order(2, 3), 48);
  EXPECT_EQ(gl_order(2, 9), 5760);
}

TEST(FamilyConstants, SmallValues) {
  const auto c = [](const char* s, int n) { return family_constants(CosetFamily::parse(s), n, 3); };
  auto m1 = c("DC1-", 1);
  EXPECT_EQ(m1.A, 1);
  EXPECT_EQ(m1.B, 4);
  EXPECT_EQ(m1.N, 4);
  auto p3 = c("DC3+", 2);
  EXPECT_EQ(p3.A, 36);
  EXPECT_EQ(p3.B, 2);
  EXPECT_EQ(p3.N, 72);
  auto p2 = c("DC2+", 2);
  EXPECT_EQ(p2.A, 9);
  EXPECT_EQ(p2.B, 8);
  auto p1 = c("DC1+", 2);
  EXPECT_EQ(p1.A, 54);
  EXPECT_EQ(p1.B, 12);
  EXPECT_EQ(p1.N, 648);
  EXPECT_THROW(c("DC1+", 3), DomainError);
}

TEST(FamilyConstants, PositiveIntegersUpToTwenty) {
  for (const BigInt q : {BigInt(3), BigInt(9), BigInt(27)}) {
    for (const CosetFamily& fam : CosetFamily::all()) {
      for (int n = fam.min_n(); n <= 20; n += 2) {
        const FamilyConstants c = family_constants(fam, n, q);
        EXPECT_GT(c.A, 0);
        EXPECT_GT(c.B, 0);
        EXPECT_EQ(c.N, c.A * c.B);
      }
    }
  }
}

TEST(CosetOrders, SmallValues) {
  EXPECT_EQ(coset_orders(2, 1, 3).double_coset, 648);
  EXPECT_EQ(coset_orders(2, 0, 3).double_coset, 72);
  EXPECT_EQ(2 * (coset_orders(2, 0, 3).double_coset + coset_orders(2, 1, 3).double_coset), 1440);
  EXPECT_EQ(family_constants(CosetFamily::parse("DC4-"), 3, 3).N, coset_orders(3, 0, 3).double_coset);
  EXPECT_THROW(coset_orders(2, 2, 3), DomainError);
}

TEST(CosetOrders, ClosedFormAgrees) {
  for (const BigInt q : {BigInt(3), BigInt(9)}) {
    for (int n = 1; n <= 7; ++n) {
      for (int r = 0; r < n; ++r) EXPECT_EQ(coset_orders(n, r, q).double_coset, double_coset_order_closed(n, r, q));
    }
  }
}

TEST(CosetOrders, ConsistentWithFamilyConstants) {
  for (const BigInt q : {BigInt(3), BigInt(9), BigInt(27)}) EXPECT_TRUE(family_constants_consistency(8, q).empty());
}
