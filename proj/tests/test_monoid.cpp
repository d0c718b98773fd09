#include <gtest/gtest.h>

#include "support.hpp"

using namespace factorlab;
using testing_support::el;
using testing_support::load;

namespace {

LocalComponent rank1(int e_order, int unit_img, int q_img) {
  LocalComponent c;
  c.rank = 1;
  c.unit_group = e_order > 1 ? AbelianGroup{e_order} : AbelianGroup{};
  if (e_order > 1) c.unit_class_images = {GroupElement{{unit_img}}};
  c.prime_classes = {GroupElement{{q_img}}};
  return c;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(BlockModel, ZeroSumMonoid) {
  const auto m = make_block_model(AbelianGroup{2}, {});
  EXPECT_EQ(m.slot_count(), 2u);
  EXPECT_TRUE(m.every_class_has_free_prime());
  EXPECT_FALSE(m.has_labeled_primes());
  EXPECT_EQ(m, load("b_c2"));
}

TEST(BlockModel, Validation) {
  const AbelianGroup c2{2};
  // a class outside G
  auto bad_class = rank1(2, 1, 1);
  bad_class.prime_classes = {GroupElement{{0, 1}}};
  EXPECT_EQ(code_of([&] { make_block_model(c2, {bad_class}); }), ErrorCode::InvalidModel);
  // E = C2 cannot send its generator to an element of order 3
  EXPECT_EQ(code_of([&] { make_block_model(AbelianGroup{3}, {rank1(2, 1, 1)}); }), ErrorCode::InvalidModel);
  // rank and class count disagree
  auto bad_rank = rank1(1, 0, 1);
  bad_rank.rank = 2;
  EXPECT_EQ(code_of([&] { make_block_model(c2, {bad_rank}); }), ErrorCode::InvalidModel);
  EXPECT_EQ(code_of([&] { make_block_model(c2, {}, std::vector<GroupElement>{{{1}}, {{1}}}); }), ErrorCode::InvalidModel);
  // order 3 unit into C3 is fine
  EXPECT_NO_THROW(make_block_model(AbelianGroup{3}, {rank1(3, 1, 1)}));
}

TEST(BlockModel, ClassOfElements) {
  const auto b3 = load("b_c3");
  EXPECT_EQ(class_of(b3, ModelElement{{0, 2, 0}, {}}), GroupElement{{2}});
  EXPECT_EQ(class_of(b3, identity(b3)), GroupElement{{0}});
  const auto m = load("c2_one_mixed");
  // eps q with [eps] = [q] = g
  EXPECT_EQ(class_of(m, el(m, "c0: u=[1] q^[1]")), GroupElement{{0}});
  EXPECT_EQ(class_of(m, parse_ambient_element("c0: u=[0] q^[1]", m)), GroupElement{{1}});
}

TEST(BlockModel, Membership) {
  const auto b3 = load("b_c3");
  EXPECT_TRUE(contains(b3, ModelElement{{0, 3, 0}, {}}));
  EXPECT_FALSE(contains(b3, ModelElement{{0, 2, 0}, {}}));
  const auto r2 = load("rank2_local");
  for (const auto& x : enumerate_elements(r2, DegreeBound{0, 4, 0})) EXPECT_TRUE(contains(r2, x));
  EXPECT_EQ(code_of([&] { contains(b3, ModelElement{{0, 3}, {}}); }), ErrorCode::ElementModelMismatch);
  // exponent zero inside a non-identity part is not a local element
  EXPECT_EQ(code_of([&] { contains(r2, ModelElement{{0}, {LocalElement{0, {0, 2}}}}); }), ErrorCode::ElementModelMismatch);
}

TEST(BlockModel, Multiply) {
  const auto b3 = load("b_c3");
  const auto ambient_one = parse_ambient_element("free:[1]", b3);
  const auto ambient_two = parse_ambient_element("free:[2]", b3);
  EXPECT_EQ(multiply(b3, ambient_one, ambient_two), parse_ambient_element("free:[1,2]", b3));
  const auto r2 = load("rank2_local");
  EXPECT_EQ(multiply(r2, el(r2, "c0: q^[1,2]"), el(r2, "c0: q^[2,1]")), el(r2, "c0: q^[3,3]"));
  const auto x = el(r2, "free:[0] c0: q^[4,1]");
  EXPECT_EQ(multiply(r2, x, identity(r2)), x);
  const auto u = load("rank1_units_local");
  EXPECT_EQ(multiply(u, el(u, "c0: u=[1] q^[1]"), el(u, "c0: u=[1] q^[2]")), el(u, "c0: u=[0] q^[3]"));
  EXPECT_EQ(code_of([&] { multiply(r2, x, identity(b3)); }), ErrorCode::ElementModelMismatch);
}

TEST(BlockModel, Divisibility) {
  const auto r2 = load("rank2_local");
  EXPECT_TRUE(divides(r2, el(r2, "c0: q^[1,1]"), el(r2, "c0: q^[3,3]"), false));
  EXPECT_EQ(*divide_exact(r2, el(r2, "c0: q^[1,1]"), el(r2, "c0: q^[3,3]"), false), el(r2, "c0: q^[2,2]"));
  EXPECT_FALSE(divides(r2, el(r2, "c0: q^[1,2]"), el(r2, "c0: q^[2,2]"), false));
  EXPECT_FALSE(divide_exact(r2, el(r2, "c0: q^[1,2]"), el(r2, "c0: q^[2,2]"), false).has_value());
  const auto b2 = load("b_c2");
  const auto g = parse_ambient_element("free:[1]", b2);
  const auto gg = el(b2, "free:[1,1]");
  EXPECT_TRUE(divides(b2, g, gg, true));
  EXPECT_FALSE(divides(b2, g, gg, false));
}

TEST(BlockModel, DivisorsAgreeWithQuotients) {
  const auto m = load("c2_one_mixed");
  for (const auto& y : enumerate_elements(m, DegreeBound{3, 3, 0})) {
    const auto ds = model_divisors(m, y);
    for (const auto& x : enumerate_elements(m, DegreeBound{3, 3, 0})) {
      const bool listed = std::find(ds.begin(), ds.end(), x) != ds.end();
      const auto q = divide_exact(m, x, y, false);
      EXPECT_EQ(listed, q.has_value());
      if (q) EXPECT_EQ(multiply(m, x, *q), y);
    }
  }
}

TEST(Atoms, SmallCases) {
  const auto b3 = load("b_c3");
  EXPECT_TRUE(is_atom(b3, el(b3, "free:[1,1,1]")));
  EXPECT_EQ(code_of([&] { is_atom(b3, parse_ambient_element("free:[1,1]", b3)); }), ErrorCode::NotInMonoid);
  const auto r2 = load("rank2_local");
  EXPECT_FALSE(is_atom(r2, el(r2, "c0: q^[2,2]")));
  EXPECT_TRUE(is_atom(r2, el(r2, "c0: q^[1,3]")));
  EXPECT_FALSE(is_atom(r2, identity(r2)));
  const auto m = load("c2_one_mixed");
  // free g times the local atom q of class g
  EXPECT_TRUE(is_atom(m, el(m, "free:[1] c0: u=[0] q^[1]")));
  EXPECT_FALSE(is_atom(m, el(m, "free:[1,1] c0: u=[1] q^[1]")));
}

TEST(Atoms, AgreeWithDivisorScan) {
  for (const char* name : {"b_c2c2", "c2_one_mixed", "c3_mixed", "c2_rank2_mixed", "rank1_units_local"}) {
    const auto m = load(name);
    for (const auto& x : enumerate_elements(m, DegreeBound{4, 4, 0}))
      if (!x.is_identity()) EXPECT_EQ(is_atom(m, x), oracle_is_atom(m, x)) << name << " " << format_element(m, x);
  }
}

TEST(Atoms, Dividing) {
  const auto b3 = load("b_c3");
  const auto got = atoms_dividing(b3, el(b3, "free:[1,1,1,2,2,2]"));
  const std::vector<ModelElement> want{el(b3, "free:[1,2]"), el(b3, "free:[1,1,1]"), el(b3, "free:[2,2,2]")};
  EXPECT_EQ(std::set<ModelElement>(got.begin(), got.end()), std::set<ModelElement>(want.begin(), want.end()));
  EXPECT_TRUE(atoms_dividing(b3, identity(b3)).empty());
  const auto r2 = load("rank2_local");
  const auto l = atoms_dividing(r2, el(r2, "c0: q^[3,3]"));
  const std::vector<ModelElement> w2{el(r2, "c0: q^[1,1]"), el(r2, "c0: q^[1,2]"), el(r2, "c0: q^[2,1]")};
  EXPECT_EQ(std::set<ModelElement>(l.begin(), l.end()), std::set<ModelElement>(w2.begin(), w2.end()));
}

TEST(Atoms, Enumerate) {
  const auto b2 = enumerate_atoms(load("b_c2"), kDefaultBound);
  EXPECT_TRUE(b2.complete);
  EXPECT_EQ(b2.atoms.size(), 2u);
  const auto b3 = enumerate_atoms(load("b_c3"), kDefaultBound);
  EXPECT_TRUE(b3.complete);
  EXPECT_EQ(b3.atoms.size(), 4u);
  // rank one with E = C2: q and eps q
  const auto u = load("rank1_units_local");
  const auto a = enumerate_atoms(u, DegreeBound{1, 6, 0});
  EXPECT_TRUE(a.complete);
  const std::set<ModelElement> got(a.atoms.begin(), a.atoms.end());
  EXPECT_EQ(got, (std::set<ModelElement>{el(u, "free:[0]"), el(u, "c0: u=[0] q^[1]"), el(u, "c0: u=[1] q^[1]")}));
  // rank 2 atoms are unbounded in one coordinate
  EXPECT_FALSE(enumerate_atoms(load("rank2_local"), kDefaultBound).complete);
}

TEST(Elements, EnumerationCountsAndOrder) {
  const auto b3 = load("b_c3");
  const auto xs = enumerate_elements(b3, kDefaultBound);
  std::size_t want = 0;
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; a + b <= 8; ++b)
      for (int c = 0; a + b + c <= 8; ++c)
        if ((b + 2 * c) % 3 == 0) ++want;
  EXPECT_EQ(xs.size(), want);
  EXPECT_TRUE(std::is_sorted(xs.begin(), xs.end()));
  EXPECT_EQ(std::set<ModelElement>(xs.begin(), xs.end()).size(), xs.size());
  EXPECT_TRUE(xs.front().is_identity());
  // rank 2, trivial G: 9 free counts times (1 + 6*6) local parts
  EXPECT_EQ(enumerate_elements(load("rank2_local"), kDefaultBound).size(), 9u * 37u);
}

TEST(Elements, CanonicalOrder) {
  const auto b3 = load("b_c3");
  // shorter first, then more copies of an earlier slot first
  EXPECT_LT(el(b3, "free:[0]"), el(b3, "free:[1,2]"));
  EXPECT_LT(el(b3, "free:[1,1,1]"), el(b3, "free:[2,2,2]"));
  const auto r2 = load("rank2_local");
  EXPECT_LT(el(r2, "c0: q^[1,1]"), el(r2, "free:[0]"));
  EXPECT_LT(el(r2, "c0: q^[1,2]"), el(r2, "c0: q^[2,1]"));
}

TEST(Elements, FormatRoundTrip) {
  for (const char* name : {"b_c2c2", "c2_two_mixed", "c3_mixed", "two_rank2_local"}) {
    const auto m = load(name);
    for (const auto& x : enumerate_elements(m, DegreeBound{3, 2, 0})) EXPECT_EQ(el(m, format_element(m, x)), x) << name;
  }
  const auto m = load("c2_one_mixed");
  EXPECT_EQ(format_element(m, identity(m)), "1");
  EXPECT_EQ(format_element(m, el(m, "free:[1] c0: u=[0] q^[1]")), "free:[1] c0: u=[0] q^[1]");
}

TEST(Elements, Constructors) {
  const auto m = load("c2_one_mixed");
  const auto x = free_element(m, {GroupElement{{1}}, GroupElement{{1}}});
  EXPECT_EQ(x, el(m, "free:[1,1]"));
  const auto y = with_part(m, identity(m), 0, local_element(m, 0, GroupElement{{1}}, {1}));
  EXPECT_EQ(y, el(m, "c0: u=[1] q^[1]"));
  EXPECT_EQ(code_of([&] { local_element(m, 1, GroupElement{{0}}, {1}); }), ErrorCode::ElementModelMismatch);
  const auto lab = make_labeled_block_model(AbelianGroup{2}, {}, {GroupElement{{0}}});
  EXPECT_EQ(code_of([&] { free_element(lab, {GroupElement{{1}}}); }), ErrorCode::ElementModelMismatch);
}
