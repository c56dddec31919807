#include <gtest/gtest.h>

#include "decat/errors.hpp"
#include "decat/presets.hpp"
#include "decat/schema.hpp"

using namespace decat;

namespace {

bool has_kind(const ValidationResult& r, const std::string& kind) {
  for (const auto& v : r.violations) {
    if (v.kind == kind) return true;
  }
  return false;
}

}  // namespace

TEST(Schema, BuiltinsAreValid) {
  for (const auto& name : builtin_schema_names()) {
    auto s = builtin_schema(name);
    ASSERT_NE(s, nullptr) << name;
    EXPECT_TRUE(validate_schema(*s).ok()) << name;
  }
  EXPECT_EQ(builtin_schema("nope"), nullptr);
  EXPECT_EQ(builtin_schema("digraph"), builtin_schema("digraph"));
}

TEST(Schema, DigraphShape) {
  auto s = builtin_schema("digraph");
  EXPECT_EQ(s->node_count(), 2u);
  EXPECT_EQ(s->arrow_count(), 2u);
  EXPECT_EQ(s->node_index("V"), 0u);
  EXPECT_EQ(s->arrow_index("t"), 1u);
  EXPECT_EQ(s->source(0), 1u);
  EXPECT_EQ(s->target(0), 0u);
  EXPECT_EQ(s->out_arrows(1).size(), 2u);
  EXPECT_TRUE(s->out_arrows(0).empty());
  EXPECT_EQ(s->in_arrows(0).size(), 2u);
}

TEST(Schema, DanglingEndpoint) {
  Schema s("bad", {"V"}, {{"s", "E", "V"}});
  auto r = validate_schema(s);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_kind(r, "dangling-endpoint"));
  EXPECT_THROW(require_valid(s), std::invalid_argument);
}

TEST(Schema, DuplicateIdentifier) {
  Schema s("dup", {"V", "V"}, {});
  EXPECT_TRUE(has_kind(validate_schema(s), "duplicate-identifier"));
  Schema t("dup", {"V"}, {{"a", "V", "V"}, {"a", "V", "V"}});
  EXPECT_TRUE(has_kind(validate_schema(t), "duplicate-identifier"));
}

TEST(Schema, UnknownArrowInRelation) {
  Schema s("x", {"X"}, {{"a", "X", "X"}}, {{{"X", {"b"}}, {"X", {}}}});
  EXPECT_TRUE(has_kind(validate_schema(s), "unknown-arrow"));
}

TEST(Schema, NonComposablePath) {
  Schema s("x", {"A", "B"}, {{"f", "A", "B"}}, {{{"A", {"f", "f"}}, {"A", {"f"}}}});
  EXPECT_TRUE(has_kind(validate_schema(s), "non-composable-path"));
}

TEST(Schema, NonParallelRelation) {
  Schema s("x", {"A", "B"}, {{"f", "A", "B"}}, {{{"A", {"f"}}, {"A", {}}}});
  EXPECT_TRUE(has_kind(validate_schema(s), "non-parallel-relation"));
}

TEST(Schema, ResolvePath) {
  auto s = builtin_schema("S3");
  auto p = resolve_path(*s, Path{"X", {"r", "s"}});
  EXPECT_EQ(p.arrows, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(p.start, 0u);
  EXPECT_EQ(p.end, 0u);
  EXPECT_THROW(resolve_path(*s, Path{"X", {"q"}}), std::invalid_argument);
  EXPECT_EQ(to_string(Path{"X", {"r", "s"}}), "r.s");
  EXPECT_EQ(to_string(Path{"X", {}}), "id@X");
}

TEST(Schema, SameSchema) {
  auto a = builtin_schema("C2");
  auto b = make_schema("C2", {"X"}, {{"a", "X", "X"}},
                       {{Path{"X", {"a", "a"}}, Path{"X", {}}}});
  EXPECT_TRUE(same_schema(a, b));
  EXPECT_FALSE(same_schema(a, builtin_schema("C3")));
  EXPECT_NO_THROW(require_same_schema(a, b, "test"));
  EXPECT_THROW(require_same_schema(a, builtin_schema("C3"), "test"), SchemaMismatch);
}
