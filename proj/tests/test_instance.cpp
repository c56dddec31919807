#include <gtest/gtest.h>

#include "decat/errors.hpp"
#include "decat/instance.hpp"
#include "support/fixtures.hpp"

using namespace decat;
using fixtures::one_node;

TEST(Instance, C2SwapIsValid) {
  auto f = one_node("C2", 2, {{1, 0}});
  EXPECT_TRUE(validate_instance(f).ok());
}

TEST(Instance, C2RelationViolationNamesElement) {
  auto f = one_node("C2", 2, {{1, 1}});
  auto r = validate_instance(f);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].kind, "relation");
  EXPECT_EQ(r.violations[0].witness, "x0");
}

TEST(Instance, RelationFreeSchemaAcceptsAnyTypedAction) {
  EXPECT_TRUE(validate_instance(fixtures::digraph(3, {{0, 2}, {2, 2}, {1, 0}})).ok());
  EXPECT_TRUE(validate_instance(one_node("endo", 3, {{1, 1, 0}})).ok());
}

TEST(Instance, IllTypedAction) {
  auto f = Instance::from_maps(builtin_schema("endo"), {{"X", {"a", "b"}}}, {{"f", {{"a", "b"}}}});
  auto r = validate_instance(f);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].kind, "ill-typed-action");
}

TEST(Instance, CarriersAreSortedById) {
  auto f = Instance(builtin_schema("endo"), {{"b", "a"}}, {{0, 0}});
  EXPECT_EQ(f.carrier(0), (std::vector<std::string>{"a", "b"}));
  // Both map to "b", which now sits at position 1.
  EXPECT_EQ(f.apply(0, 0), 1u);
  EXPECT_EQ(f.apply(0, 1), 1u);
  EXPECT_EQ(f.find(0, "a"), 0u);
  EXPECT_EQ(f.find(0, "z"), kNoElem);
}

TEST(Instance, DuplicateIdsThrow) {
  EXPECT_THROW(Instance(builtin_schema("endo"), {std::vector<std::string>{"a", "a"}}, {{0, 1}}), std::invalid_argument);
}

TEST(Instance, EvalPath) {
  auto g = fixtures::digraph(2, {{0, 1}});
  EXPECT_EQ(eval_path(g, Path{"V", {}}, "v0"), "v0");
  EXPECT_EQ(eval_path(g, Path{"E", {"s"}}, "e0"), "v0");
  EXPECT_EQ(eval_path(g, Path{"E", {"t"}}, "e0"), "v1");
  auto swap = one_node("C2", 2, {{1, 0}});
  EXPECT_EQ(eval_path(swap, Path{"X", {"a", "a"}}, "x0"), "x0");
  EXPECT_EQ(eval_path(swap, Path{"X", {"a"}}, Elem{0}), 1u);
  EXPECT_THROW(eval_path(swap, Path{"X", {"a"}}, Elem{7}), DomainError);
}

TEST(Instance, IndexIdsSortNumerically) {
  auto ids = index_ids(12);
  ASSERT_EQ(ids.size(), 12u);
  EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
  EXPECT_TRUE(index_ids(0).empty());
}

TEST(Instance, Equality) {
  EXPECT_EQ(fixtures::C3(), fixtures::C3());
  EXPECT_FALSE(fixtures::C3() == fixtures::P3());
  EXPECT_EQ(fixtures::C3().total_size(), 6u);
}
