#include <gtest/gtest.h>

#include "support.hpp"

using namespace factorlab;
using namespace testing_support;

TEST(Predicates, PiBijective) {
  EXPECT_TRUE(pi_bijective(load("b_c3")));
  EXPECT_TRUE(pi_bijective(load("c2_one_mixed")));
  EXPECT_FALSE(pi_bijective(load("rank2_local")));
  EXPECT_FALSE(pi_bijective(load("c2_rank2_mixed")));
}

TEST(Predicates, VarthetaIso) {
  // E trivial: a single atom class
  EXPECT_TRUE(vartheta_iso(make_block_model(AbelianGroup{3}, {LocalComponent{1, {}, {}, {GroupElement{{2}}}}})));
  EXPECT_TRUE(vartheta_iso(load("c2_unmixed")));
  EXPECT_FALSE(vartheta_iso(load("c2_one_mixed")));
  EXPECT_FALSE(vartheta_iso(load("c3_mixed")));
  try {
    vartheta_iso(load("rank2_local"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankNotOne);
  }
}

TEST(Predicates, Mixing) {
  EXPECT_EQ(mixed_component_count(load("c2_two_mixed")), 2u);
  EXPECT_EQ(mixed_component_count(load("c2_unmixed")), 0u);
  EXPECT_TRUE(component_mixed(load("c2_rank2_mixed"), 0));
}

TEST(Classify, HalfFactorialDichotomy) {
  EXPECT_EQ(classify(load("b_c1")).half_factorial_predicted, true);
  EXPECT_EQ(classify(load("b_c2")).half_factorial_predicted, true);
  EXPECT_EQ(classify(load("c2_unmixed")).half_factorial_predicted, true);
  EXPECT_EQ(classify(load("b_c3")).half_factorial_predicted, false);
  EXPECT_EQ(classify(load("b_c2c2")).half_factorial_predicted, false);
  EXPECT_EQ(classify(load("c2_one_mixed")).half_factorial_predicted, false);
}

TEST(Classify, OrderTwoValues) {
  const auto one = classify(load("c2_one_mixed"));
  ASSERT_NE(one.find("catenary"), nullptr);
  EXPECT_EQ(one.find("catenary")->value, 3);
  EXPECT_EQ(one.find("omega")->value, 3);
  EXPECT_EQ(one.find("delta")->set, (std::vector<int>{1}));
  EXPECT_EQ(one.find("unions")->relation, Relation::Interval);
  EXPECT_EQ(one.applicable_transfer, Transfer::None);

  const auto two = classify(load("c2_two_mixed"));
  EXPECT_EQ(two.find("catenary")->value, 4);
  EXPECT_EQ(two.find("omega")->value, 4);
  EXPECT_EQ(two.find("delta")->set, (std::vector<int>{1, 2}));

  const auto r2 = classify(load("c2_rank2_mixed"));
  ASSERT_NE(r2.find("omega"), nullptr);
  EXPECT_EQ(r2.find("omega")->relation, Relation::Infinite);
  EXPECT_FALSE(r2.vartheta_iso.has_value());
  EXPECT_EQ(r2.find("catenary"), nullptr);
  // ambient predictions for the collapsed group
  ASSERT_NE(r2.find("catenary", true), nullptr);
  EXPECT_EQ(r2.find("catenary", true)->value, 3);
}

TEST(Classify, TrivialGroupCoproduct) {
  const auto one = classify(load("rank2_local"));
  EXPECT_EQ(one.find("catenary")->value, 3);
  EXPECT_EQ(one.find("catenary_adj")->value, 3);
  EXPECT_EQ(one.find("catenary_eq")->value, 2);
  EXPECT_EQ(one.find("catenary_mon")->value, 3);
  EXPECT_EQ(one.find("delta")->set, (std::vector<int>{1}));
  const auto two = classify(load("two_rank2_local"));
  EXPECT_EQ(two.find("catenary_eq")->value, 5);
  EXPECT_EQ(two.find("catenary_mon")->value, 5);
  const auto r1 = classify(load("rank1_units_local"));
  EXPECT_EQ(r1.find("catenary")->relation, Relation::AtMost);
  EXPECT_EQ(r1.find("catenary")->value, 2);
  EXPECT_TRUE(r1.find("half_factorial")->flag);
}

TEST(Classify, HigherRankLargerGroup) {
  // rank 2 over C3: only the shape of the unions is known
  LocalComponent c{2, {}, {}, {GroupElement{{1}}, GroupElement{{2}}}};
  const auto r = classify(make_block_model(AbelianGroup{3}, {c}));
  const auto* u = r.find("unions");
  ASSERT_NE(u, nullptr);
  EXPECT_EQ(u->relation, Relation::EllOrNext);
  EXPECT_EQ(r.find("omega"), nullptr);
  EXPECT_FALSE(r.notes.empty());
}

TEST(Classify, TransferKinds) {
  EXPECT_EQ(classify(load("c3_unmixed")).applicable_transfer, Transfer::Theta);
  EXPECT_EQ(classify(load("c3_mixed")).applicable_transfer, Transfer::None);
  const auto lab = make_labeled_block_model(AbelianGroup{2}, {LocalComponent{1, AbelianGroup{2}, {GroupElement{{1}}}, {GroupElement{{1}}}}},
                                            {GroupElement{{0}}, GroupElement{{1}}, GroupElement{{1}}});
  EXPECT_EQ(classify(lab).applicable_transfer, Transfer::Beta);
  // without a free prime in class 1 only ambient predictions remain
  const auto partial = make_block_model(AbelianGroup{2}, {LocalComponent{2, {}, {}, {GroupElement{{1}}, GroupElement{{0}}}}},
                                        std::vector<GroupElement>{GroupElement{{0}}});
  const auto pr = classify(partial);
  EXPECT_FALSE(pr.half_factorial_predicted.has_value());
  for (const auto& p : pr.predictions) EXPECT_TRUE(p.ambient) << p.clause;
}

TEST(Classify, ClauseIdsAreDescriptive) {
  for (const char* name : {"b_c2", "rank2_local", "c2_two_mixed", "c2_rank2_mixed", "c3_unmixed"})
    for (const auto& p : classify(load(name)).predictions) {
      EXPECT_FALSE(p.clause.empty());
      EXPECT_EQ(p.clause.find("Thm"), std::string::npos);
    }
}
