#include <gtest/gtest.h>

#include "decat/canon.hpp"
#include "decat/constructions.hpp"
#include "decat/enumerate.hpp"
#include "decat/errors.hpp"
#include "decat/hom_search.hpp"
#include "decat/ring.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace decat;
using namespace fixtures;

namespace {

DecClass single(const Instance& f) { return class_of(f); }

std::vector<DecClass> universe_classes(const char* bounds) {
  auto s = digraph_schema();
  std::vector<DecClass> out;
  for (const auto& e : enumerate_instances(s, Bounds::parse(*s, bounds))) {
    out.push_back(class_of(e.representative));
  }
  return out;
}

}  // namespace

TEST(Ring, ClassOfExamples) {
  EXPECT_TRUE(class_of(initial(digraph_schema())).empty());
  auto cc = class_of(sum(C3(), C3()));
  EXPECT_EQ(cc.support_size(), 1u);
  EXPECT_EQ(cc.coefficient(canonical_form(C3())), 2u);
  auto sq = class_of(product(A2(), A2()).product);
  EXPECT_EQ(sq.coefficient(canonical_form(A2())), 1u);
  EXPECT_EQ(sq.coefficient(canonical_form(K1())), 2u);
  EXPECT_EQ(sq.support_size(), 2u);
}

TEST(Ring, MulExamples) {
  auto s = digraph_schema();
  auto a2 = single(A2());
  EXPECT_EQ(mul(a2, zero(s)), zero(s));
  auto u = one(s);
  EXPECT_EQ(u.support_size(), 1u);
  EXPECT_EQ(u.coefficient(canonical_form(L1())), 1u);
  EXPECT_EQ(mul(a2, u), a2);
  EXPECT_EQ(mul(a2, a2), class_of(product(A2(), A2()).product));
}

TEST(Ring, MulMatchesProductClass) {
  auto s = digraph_schema();
  auto u = enumerate_instances(s, Bounds::parse(*s, "V=2,E=2"));
  for (const auto& f : u) {
    for (const auto& g : u) {
      ASSERT_EQ(mul(class_of(f.representative), class_of(g.representative)),
                class_of(product(f.representative, g.representative).product));
    }
  }
}

TEST(Ring, SemiringLaws) {
  auto s = digraph_schema();
  auto xs = universe_classes("V=2,E=1");
  for (const auto& x : xs) {
    EXPECT_EQ(add(x, zero(s)), x);
    EXPECT_EQ(mul(x, one(s)), x);
    for (const auto& y : xs) {
      EXPECT_EQ(add(x, y), add(y, x));
      EXPECT_EQ(mul(x, y), mul(y, x));
      for (const auto& z : xs) {
        EXPECT_EQ(add(add(x, y), z), add(x, add(y, z)));
        EXPECT_EQ(mul(mul(x, y), z), mul(x, mul(y, z)));
        EXPECT_EQ(mul(x, add(y, z)), add(mul(x, y), mul(x, z)));
      }
    }
  }
}

TEST(Ring, RealizeRoundTrip) {
  for (const auto& x : universe_classes("V=3,E=3")) EXPECT_EQ(class_of(realize(x)), x);
}

TEST(Ring, SchemaMismatch) {
  auto c2 = class_of(one_node("C2", 1, {{0}}));
  EXPECT_THROW(add(single(K1()), c2), SchemaMismatch);
  EXPECT_THROW(mul(single(K1()), c2), SchemaMismatch);
}

TEST(Grothendieck, Examples) {
  auto s = digraph_schema();
  for (const auto& x : universe_classes("V=3,E=3")) {
    auto r = to_ring(x);
    for (const auto& [form, term] : r.terms()) EXPECT_GT(term.coefficient, 0);
    EXPECT_TRUE(ring_add(r, ring_neg(r)).empty());
    auto back = to_dec(r);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, x);
  }
  auto a2 = to_ring(single(A2()));
  auto k1 = to_ring(single(K1()));
  auto lhs = ring_mul(ring_sub(a2, k1), k1);
  EXPECT_EQ(lhs, k1);
  EXPECT_FALSE(to_dec(ring_neg(k1)).has_value());
  EXPECT_EQ(ring_scale(k1, 3), ring_add(k1, ring_add(k1, k1)));
  EXPECT_TRUE(ring_scale(k1, 0).empty());
  EXPECT_EQ(ring_mul(a2, ring_one(s)), a2);
  EXPECT_TRUE(ring_mul(a2, ring_zero(s)).empty());
}

TEST(Grothendieck, ToRingIsInjectiveHomomorphism) {
  auto xs = universe_classes("V=2,E=2");
  for (const auto& x : xs) {
    for (const auto& y : xs) {
      EXPECT_EQ(to_ring(x) == to_ring(y), x == y);
      EXPECT_EQ(to_ring(add(x, y)), ring_add(to_ring(x), to_ring(y)));
      EXPECT_EQ(to_ring(mul(x, y)), ring_mul(to_ring(x), to_ring(y)));
    }
  }
}

TEST(Profile, BasisExamples) {
  auto s = digraph_schema();
  auto b = build_basis(s, Bounds::parse(*s, "V=1,E=1"));
  ASSERT_EQ(b.size(), 2u);
  std::multiset<CanonicalForm> forms{b.members[0].form, b.members[1].form};
  EXPECT_EQ(forms, (std::multiset<CanonicalForm>{canonical_form(K1()), canonical_form(L1())}));
  auto c2 = builtin_schema("C2");
  auto bc = build_basis(c2, Bounds::parse(*c2, "X=2"));
  EXPECT_EQ(bc.size(), 2u);
  EXPECT_EQ(build_basis(s, Bounds::uniform(*s, 0)).size(), 0u);
}

TEST(Profile, Examples) {
  auto s = digraph_schema();
  auto b = build_basis(s, Bounds::parse(*s, "V=1,E=1"));
  std::size_t k1 = b.members[0].form == canonical_form(K1()) ? 0 : 1;
  auto p = profile(single(C3()), b);
  EXPECT_EQ(p.values[k1], 3);
  EXPECT_EQ(p.values[1 - k1], 0);
  EXPECT_EQ(profile(zero(s), b).values, (std::vector<std::int64_t>{0, 0}));
}

TEST(Profile, HomomorphismAndDirectCounts) {
  auto s = digraph_schema();
  auto b = build_basis(s, Bounds::parse(*s, "V=3,E=3"));
  auto u = enumerate_instances(s, Bounds::parse(*s, "V=2,E=2"));
  for (const auto& f : u) {
    auto pf = profile(class_of(f.representative), b);
    ASSERT_EQ(pf, profile(f.representative, b));
    ASSERT_EQ(pf, ring_profile(to_ring(class_of(f.representative)), b));
    for (std::size_t i = 0; i < b.size(); ++i) {
      ASSERT_EQ(static_cast<std::uint64_t>(pf.values[i]),
                oracle::homs(b.members[i].representative, f.representative).size());
    }
    for (const auto& g : u) {
      auto x = class_of(f.representative), y = class_of(g.representative);
      auto pg = profile(y, b);
      auto sum_p = profile(add(x, y), b);
      auto prod_p = profile(mul(x, y), b);
      for (std::size_t i = 0; i < b.size(); ++i) {
        ASSERT_EQ(sum_p.values[i], pf.values[i] + pg.values[i]);
        ASSERT_EQ(prod_p.values[i], pf.values[i] * pg.values[i]);
      }
    }
  }
}

TEST(Marks, C2) {
  auto s = builtin_schema("C2");
  auto t = table_of_marks(s, Bounds::parse(*s, "X=2"));
  ASSERT_EQ(t.transitive.size(), 2u);
  EXPECT_EQ(t.transitive[0].representative.size(0), 2u);
  EXPECT_EQ(t.marks, (std::vector<std::vector<std::uint64_t>>{{2, 0}, {1, 1}}));
}

TEST(Marks, Trivial) {
  auto s = builtin_schema("trivial");
  auto t = table_of_marks(s, Bounds::parse(*s, "X=3"));
  EXPECT_EQ(t.marks, (std::vector<std::vector<std::uint64_t>>{{1}}));
}

TEST(Marks, S3AgainstOrbitOracle) {
  auto s = builtin_schema("S3");
  auto t = table_of_marks(s, Bounds::parse(*s, "X=6"));
  ASSERT_EQ(t.transitive.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_GT(t.marks[i][i], 0u);
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_EQ(t.marks[i][j],
                oracle::transitive_homs(t.transitive[j].representative, t.transitive[i].representative));
      if (j > i) EXPECT_EQ(t.marks[i][j], 0u);
    }
  }
  EXPECT_EQ(t.marks[0][0], 6u);
}

TEST(Marks, NonGroupThrows) {
  auto s = builtin_schema("endo");
  EXPECT_THROW(table_of_marks(s, Bounds::parse(*s, "X=2")), DomainError);
  auto c2 = builtin_schema("C2");
  EXPECT_TRUE(table_of_marks(c2, Bounds::parse(*c2, "X=0")).marks.empty());
}

TEST(Marks, GhostProfilesSeparate) {
  auto s = builtin_schema("C2");
  auto b = build_basis(s, Bounds::parse(*s, "X=2"));
  auto free1 = one_node("C2", 2, {{1, 0}});
  auto two_points = one_node("C2", 2, {{0, 1}});
  EXPECT_NE(profile(free1, b), profile(two_points, b));
}
