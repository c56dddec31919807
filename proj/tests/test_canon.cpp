#include <gtest/gtest.h>

#include <map>

#include "decat/canon.hpp"
#include "decat/constructions.hpp"
#include "decat/enumerate.hpp"
#include "decat/hom_search.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace decat;
using namespace fixtures;

namespace {

std::vector<Instance> universe(const std::string& schema, const std::string& bounds) {
  auto s = builtin_schema(schema);
  std::vector<Instance> out;
  for (const auto& e : enumerate_instances(s, Bounds::parse(*s, bounds))) out.push_back(e.representative);
  return out;
}

// Every digraph with the given carrier sizes, straight from the tables.
std::vector<Instance> raw_digraphs(std::size_t v, std::size_t e) {
  std::vector<Instance> out;
  if (v == 0 && e > 0) return out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < 2 * e; ++i) total *= v;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::pair<int, int>> edges;
    std::size_t c = code;
    for (std::size_t i = 0; i < e; ++i) {
      int s = static_cast<int>(c % v);
      c /= v;
      int t = static_cast<int>(c % v);
      c /= v;
      edges.emplace_back(s, t);
    }
    out.push_back(digraph(v, edges));
  }
  return out;
}

}  // namespace

TEST(Canon, MinimalOverAllLabelingsForConnected) {
  for (const auto& schema : {std::string("digraph"), std::string("endo"), std::string("S3")}) {
    const char* bounds = schema == "digraph" ? "V=3,E=3" : "X=5";
    for (const auto& f : universe(schema, bounds)) {
      if (!is_connected(f)) continue;
      auto lab = canonical_labeling(f);
      EXPECT_EQ(lab.form.bytes, oracle::min_encoding(f)) << schema;
      EXPECT_EQ(encode(f, lab.labels), lab.form.bytes);
    }
  }
}

TEST(Canon, EncodingAgreesWithOracleEncoder) {
  auto f = sum(C3(), P3());
  oracle::for_each_labeling(A2(), [&](const ElemTable& labels) {
    EXPECT_EQ(encode(A2(), labels), oracle::encode(A2(), labels));
  });
  auto lab = canonical_labeling(f);
  EXPECT_EQ(encode(f, lab.labels), oracle::encode(f, lab.labels));
}

TEST(Canon, FormEqualityIffIsomorphic) {
  std::vector<Instance> all;
  for (std::size_t v = 0; v <= 5; ++v) {
    for (std::size_t e = 0; v + e <= 5; ++e) {
      for (auto& g : raw_digraphs(v, e)) all.push_back(std::move(g));
    }
  }
  // Group by the oracle's global minimum, which is a complete invariant.
  std::map<std::string, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < all.size(); ++i) classes[oracle::min_encoding(all[i])].push_back(i);
  std::map<std::string, std::string> form_to_class;
  for (const auto& [key, members] : classes) {
    const auto form = canonical_form(all[members.front()]);
    for (std::size_t i : members) ASSERT_EQ(canonical_form(all[i]), form);
    ASSERT_TRUE(form_to_class.emplace(form.bytes, key).second) << "distinct classes share a form";
  }
  // Spot-check the oracle grouping itself against the isomorphism oracle.
  auto it = classes.begin();
  for (int k = 0; k < 20 && std::next(it) != classes.end(); ++k, ++it) {
    EXPECT_FALSE(oracle::isomorphic(all[it->second.front()], all[std::next(it)->second.front()]));
  }
}

TEST(Canon, RelabelInvariance) {
  for (const auto& f : universe("digraph", "V=3,E=3")) {
    const auto form = canonical_form(f);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      EXPECT_EQ(canonical_form(relabel(f, seed).instance), form);
    }
  }
}

TEST(Canon, DistinctExamples) {
  EXPECT_NE(canonical_form(sum(L1(), K1())), canonical_form(A2()));
  EXPECT_TRUE(canonical_form(initial(digraph_schema())).bytes.empty());
  EXPECT_EQ(canonical_form(initial(digraph_schema())).schema, "digraph");
  EXPECT_EQ(canonical_form(C3()), canonical_form(C3()));
  EXPECT_EQ(canonical_form(C3()).digest().size(), 16u);
}

TEST(Canon, CanonicalInstanceIsIso) {
  for (const auto& f : {C3(), sum(C3(), K1()), sum(A2(), sum(L1(), A2())), M2()}) {
    auto c = canonical_instance(f);
    EXPECT_TRUE(is_iso(c.iso));
    EXPECT_TRUE(validate_morphism(c.iso).ok());
    EXPECT_EQ(canonical_form(c.instance), c.form);
    EXPECT_EQ(canonical_instance(relabel(f, 9).instance).instance, c.instance);
  }
}

TEST(Canon, LargeSymmetricProducts) {
  auto p = product(sum(M2(), M2()), sum(M2(), L1())).product;
  auto form = canonical_form(p);
  EXPECT_EQ(canonical_form(relabel(p, 1).instance), form);
}

TEST(Decompose, Examples) {
  auto d = connected_components(sum(C3(), K1()));
  ASSERT_EQ(d.components.size(), 2u);
  std::multiset<CanonicalForm> got(d.forms.begin(), d.forms.end());
  std::multiset<CanonicalForm> want{canonical_form(C3()), canonical_form(K1())};
  EXPECT_EQ(got, want);
  EXPECT_TRUE(connected_components(initial(digraph_schema())).components.empty());

  auto sq = connected_components(product(A2(), A2()).product);
  std::multiset<CanonicalForm> sq_forms(sq.forms.begin(), sq.forms.end());
  EXPECT_EQ(sq_forms, (std::multiset<CanonicalForm>{canonical_form(A2()), canonical_form(K1()),
                                                    canonical_form(K1())}));
}

TEST(Decompose, WitnessAndOrdering) {
  for (const auto& f : universe("digraph", "V=3,E=3")) {
    auto d = connected_components(f);
    EXPECT_TRUE(validate_morphism(d.witness).ok());
    EXPECT_TRUE(is_iso(d.witness));
    EXPECT_EQ(d.witness.target(), f);
    for (std::size_t i = 0; i < d.components.size(); ++i) {
      EXPECT_TRUE(is_connected(d.components[i]));
      EXPECT_EQ(d.forms[i], canonical_form(d.components[i]));
      if (i) EXPECT_LE(d.forms[i - 1], d.forms[i]);
    }
    EXPECT_EQ(d.components.empty(), f.total_size() == 0);
  }
}

TEST(Decompose, IsConnected) {
  EXPECT_TRUE(is_connected(K1()));
  EXPECT_FALSE(is_connected(initial(digraph_schema())));
  EXPECT_FALSE(is_connected(sum(K1(), K1())));
  EXPECT_TRUE(is_connected(P3()));
}

TEST(Decompose, AgreesWithConnBijection) {
  auto all = universe("digraph", "V=2,E=2");
  for (const auto& c : all) {
    bool all_bijective = true;
    for (const auto& a : all) {
      for (const auto& b : all) all_bijective = all_bijective && check_conn_bijection(c, a, b);
    }
    EXPECT_EQ(is_connected(c), all_bijective);
  }
}
