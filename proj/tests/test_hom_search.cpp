#include <gtest/gtest.h>

#include <set>

#include "decat/constructions.hpp"
#include "decat/enumerate.hpp"
#include "decat/errors.hpp"
#include "decat/hom_search.hpp"
#include "decat/rng.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace decat;
using namespace fixtures;

namespace {

std::vector<Instance> small_digraphs() {
  std::vector<Instance> out;
  for (const auto& e : enumerate_instances(digraph_schema(), Bounds::parse(*digraph_schema(), "V=3,E=3,total=5"))) {
    out.push_back(e.representative);
  }
  return out;
}

std::vector<ElemTable> library_homs(const Instance& x, const Instance& y) {
  std::vector<ElemTable> out;
  for_each_hom(x, y, [&](const ElemTable& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

}  // namespace

TEST(HomSearch, SpecExamples) {
  auto y1 = digraph(3, {{0, 1}, {0, 2}});
  auto y2 = digraph(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(count_homs(C3(), C3()), 3u);
  EXPECT_EQ(count_homs(P3(), y1), 0u);
  EXPECT_EQ(count_homs(P3(), y2), 1u);
  EXPECT_EQ(count_homs(K1(), sum(C3(), K1())), 4u);
  for (const auto& y : small_digraphs()) EXPECT_EQ(count_homs(K1(), y), y.size(0));
}

TEST(HomSearch, InitialAndIntoInitial) {
  auto z = initial(digraph_schema());
  for (const auto& y : small_digraphs()) {
    EXPECT_EQ(count_homs(z, y), 1u);
    if (y.total_size() > 0) EXPECT_EQ(count_homs(y, z), 0u);
  }
}

TEST(HomSearch, MatchesNaiveOracle) {
  auto all = small_digraphs();
  ASSERT_FALSE(all.empty());
  for (const auto& x : all) {
    for (const auto& y : all) {
      auto expected = oracle::homs(x, y);
      auto got = library_homs(x, y);
      std::set<ElemTable> unique(got.begin(), got.end());
      ASSERT_EQ(unique.size(), got.size());
      std::sort(got.begin(), got.end());
      ASSERT_EQ(got, expected);
      ASSERT_EQ(count_homs(x, y), expected.size());
    }
  }
}

TEST(HomSearch, OneNodeSchemasMatchOracle) {
  for (const char* name : {"C2", "C3", "S3", "endo"}) {
    auto s = builtin_schema(name);
    auto universe = enumerate_instances(s, Bounds::uniform(*s, 4));
    for (const auto& x : universe) {
      for (const auto& y : universe) {
        ASSERT_EQ(count_homs(x.representative, y.representative),
                  oracle::homs(x.representative, y.representative).size())
            << name;
      }
    }
  }
}

TEST(HomSearch, EnumerateHomsAreValid) {
  auto hs = enumerate_homs(C3(), sum(C3(), C3()));
  EXPECT_EQ(hs.count(), 6u);
  for (const auto& m : hs.morphisms) EXPECT_TRUE(validate_morphism(m).ok());
}

TEST(HomSearch, EarlyStop) {
  std::size_t seen = 0;
  for_each_hom(K1(), sum(C3(), C3()), [&](const ElemTable&) { return ++seen < 2; });
  EXPECT_EQ(seen, 2u);
}

TEST(HomSearch, SchemaMismatch) {
  auto c2 = one_node("C2", 1, {{0}});
  EXPECT_THROW(count_homs(K1(), c2), SchemaMismatch);
}

TEST(HomSearch, FindIso) {
  for (const auto& f : small_digraphs()) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto r = relabel(f, seed);
      auto iso = find_iso(f, r.instance);
      ASSERT_TRUE(iso.has_value());
      EXPECT_TRUE(is_iso(*iso));
      EXPECT_TRUE(validate_morphism(*iso).ok());
    }
  }
  EXPECT_FALSE(find_iso(sum(K1(), K1()), K1()).has_value());
  EXPECT_FALSE(find_iso(sum(L1(), K1()), A2()).has_value());
}

TEST(HomSearch, FindIsoAgreesWithOracle) {
  auto all = small_digraphs();
  for (const auto& f : all) {
    for (const auto& g : all) {
      ASSERT_EQ(find_iso(f, g).has_value(), oracle::isomorphic(f, g));
    }
  }
}

TEST(HomSearch, SampleHom) {
  auto x = K1(), y = sum(C3(), K1());
  std::set<ElemTable> seen;
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    auto m = sample_hom(x, y, rng);
    ASSERT_TRUE(m.has_value());
    EXPECT_TRUE(validate_morphism(*m).ok());
    seen.insert(m->components());
  }
  EXPECT_EQ(seen.size(), 4u);
  EXPECT_FALSE(sample_hom(L1(), C3(), rng).has_value());
  // Randomized descent path.
  auto big = sample_hom(K1(), sum(C3(), K1()), rng, 1);
  ASSERT_TRUE(big.has_value());
  EXPECT_TRUE(validate_morphism(*big).ok());
  Rng a(3), b(3);
  EXPECT_EQ(sample_hom(C3(), sum(C3(), C3()), a)->components(),
            sample_hom(C3(), sum(C3(), C3()), b)->components());
}

TEST(HomSearch, ConnBijectionExamples) {
  auto z = initial(digraph_schema());
  for (const auto& a : {K1(), C3(), L1()}) {
    for (const auto& b : {K1(), A2(), z}) {
      EXPECT_TRUE(check_conn_bijection(K1(), a, b));
      EXPECT_FALSE(check_conn_bijection(z, a, b));
    }
  }
  EXPECT_FALSE(check_conn_bijection(sum(K1(), K1()), K1(), K1()));
}

TEST(HomSearch, CyclesIntoCycleProducts) {
  // C_n x C_n is n disjoint n-cycles; each admits n rotations of C_n.
  for (std::size_t n : {3, 5, 12}) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < n; ++i) edges.emplace_back(int(i), int((i + 1) % n));
    auto c = digraph(n, edges);
    EXPECT_EQ(count_homs(c, product(c, c).product), n * n);
  }
}
