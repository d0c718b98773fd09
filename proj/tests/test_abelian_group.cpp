#include <gtest/gtest.h>

#include "support.hpp"

using namespace factorlab;
using testing_support::brute_davenport;

TEST(AbelianGroup, TrivialGroup) {
  AbelianGroup g;
  EXPECT_EQ(g.order(), 1u);
  EXPECT_TRUE(g.is_trivial());
  EXPECT_EQ(g.elements().size(), 1u);
  EXPECT_EQ(g.elements()[0], g.zero());
  EXPECT_EQ(group_from_invariants(std::vector<int>{}).order(), 1u);
}

TEST(AbelianGroup, NormalizesToInvariantFactors) {
  EXPECT_EQ(AbelianGroup({3}).order(), 3u);
  const AbelianGroup g{2, 4};
  EXPECT_EQ(g.order(), 8u);
  EXPECT_EQ(g.exponent(), 4);
  EXPECT_EQ(AbelianGroup({6}).invariant_factors(), (std::vector<int>{6}));
  EXPECT_EQ(AbelianGroup({2, 3}).invariant_factors(), (std::vector<int>{6}));
  EXPECT_EQ(AbelianGroup({4, 2}).invariant_factors(), (std::vector<int>{2, 4}));
  EXPECT_EQ(AbelianGroup({6, 4}).invariant_factors(), (std::vector<int>{2, 12}));
}

TEST(AbelianGroup, RejectsBadModulus) {
  try {
    AbelianGroup g{1};
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidGroup);
  }
  EXPECT_THROW(AbelianGroup({0}), Error);
  EXPECT_THROW(AbelianGroup({3, -2}), Error);
}

TEST(AbelianGroup, Arithmetic) {
  const AbelianGroup c3{3};
  EXPECT_EQ(c3.add(GroupElement{{1}}, GroupElement{{2}}), c3.zero());
  std::vector<GroupElement> three(3, GroupElement{{1}});
  EXPECT_EQ(c3.sum(three), c3.zero());
  const AbelianGroup v{2, 2};
  std::vector<GroupElement> s{GroupElement{{1, 0}}, GroupElement{{0, 1}}, GroupElement{{1, 1}}};
  EXPECT_EQ(v.sum(s), v.zero());
  EXPECT_EQ(c3.negate(GroupElement{{1}}), GroupElement{{2}});
  EXPECT_EQ(c3.multiple(GroupElement{{2}}, -1), GroupElement{{1}});
  EXPECT_EQ(c3.order_of(GroupElement{{1}}), 3);
  EXPECT_EQ(c3.order_of(c3.zero()), 1);
  EXPECT_EQ(AbelianGroup({2, 4}).order_of(GroupElement{{1, 2}}), 2);
}

TEST(AbelianGroup, MismatchedElement) {
  const AbelianGroup c3{3};
  try {
    c3.add(GroupElement{{1, 0}}, GroupElement{{1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ElementGroupMismatch);
  }
  EXPECT_FALSE(c3.contains(GroupElement{{3}}));
}

TEST(AbelianGroup, ElementOrderIsLexicographic) {
  const AbelianGroup c3{3};
  EXPECT_EQ(c3.elements(), (std::vector<GroupElement>{{{0}}, {{1}}, {{2}}}));
  const AbelianGroup v{2, 2};
  EXPECT_EQ(v.elements(), (std::vector<GroupElement>{{{0, 0}}, {{0, 1}}, {{1, 0}}, {{1, 1}}}));
  for (std::size_t i = 0; i < v.order(); ++i) EXPECT_EQ(v.index_of(v.element_at(i)), i);
}

TEST(AbelianGroup, GroupAxiomsExhaustive) {
  for (const auto& g : {AbelianGroup{2, 2}, AbelianGroup{6}, AbelianGroup{2, 4}}) {
    const auto el = g.elements();
    for (const auto& a : el) {
      EXPECT_EQ(g.add(a, g.zero()), a);
      EXPECT_EQ(g.add(a, g.negate(a)), g.zero());
      EXPECT_EQ(g.multiple(a, g.order_of(a)), g.zero());
      for (const auto& b : el) {
        EXPECT_EQ(g.add(a, b), g.add(b, a));
        for (const auto& c : el) EXPECT_EQ(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
      }
    }
  }
}

TEST(Davenport, KnownValues) {
  EXPECT_EQ(davenport(AbelianGroup{}), 1);
  EXPECT_EQ(davenport(AbelianGroup{2}), 2);
  EXPECT_EQ(davenport(AbelianGroup{3}), 3);
  EXPECT_EQ(davenport(AbelianGroup{2, 2}), 3);
  EXPECT_EQ(davenport(AbelianGroup{3, 3}), 5);
}

TEST(Davenport, MatchesPlainEnumeration) {
  for (const auto& g : {AbelianGroup{2}, AbelianGroup{3}, AbelianGroup{4}, AbelianGroup{5}, AbelianGroup{2, 2}, AbelianGroup{6}})
    EXPECT_EQ(davenport(g), brute_davenport(g)) << to_string(g.element_at(1));
}
