#include <gtest/gtest.h>

#include <filesystem>

#include "decat/constructions.hpp"
#include "decat/format.hpp"
#include "support/fixtures.hpp"

using namespace decat;
using namespace fixtures;

TEST(Format, ParseInstance) {
  auto doc = parse_document(R"(
    # comment
    instance G : digraph {
      V = {a, b};
      E = {e};
      s = {e->a};
      t = {e->b};
    }
  )");
  ASSERT_EQ(doc.instances.size(), 1u);
  EXPECT_EQ(doc.instances[0].name, "G");
  const auto& g = doc.instances[0].instance;
  EXPECT_TRUE(validate_instance(g).ok());
  EXPECT_EQ(eval_path(g, Path{"E", {"t"}}, "e"), "b");
  EXPECT_NE(doc.find_instance("G"), nullptr);
  EXPECT_EQ(doc.find_instance("H"), nullptr);
}

TEST(Format, ParseSchemaAndUseIt) {
  auto doc = parse_document(R"(
    schema Z4 {
      node X;
      arrow a: X -> X;
      relation a.a.a.a = id@X;
    }
    instance R : Z4 {
      X = {0, 1, 2, 3};
      a = {0->1, 1->2, 2->3, 3->0};
    }
  )");
  ASSERT_EQ(doc.schemas.size(), 1u);
  EXPECT_TRUE(doc.schemas[0]->valid());
  ASSERT_EQ(doc.instances.size(), 1u);
  EXPECT_TRUE(validate_instance(doc.instances[0].instance).ok());
}

TEST(Format, InvalidInstanceParsesButFailsValidation) {
  auto doc = parse_document("instance B : C2 { X = {1, 2}; a = {1->2, 2->2}; }");
  auto r = validate_instance(doc.instances[0].instance);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].kind, "relation");
  EXPECT_EQ(r.violations[0].witness, "1");
}

TEST(Format, ErrorsCarryPosition) {
  try {
    parse_document("instance G : digraph {\n  V = {a, b;\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
  EXPECT_THROW(parse_document("instance G : nosuch { }"), ParseError);
  EXPECT_THROW(parse_document("blob"), ParseError);
}

TEST(Format, PrintRoundTrip) {
  for (const auto& f : {K1(), L1(), C3(), sum(C3(), K1()), product(A2(), M2()).product}) {
    auto text = print_instance(f, "F");
    auto doc = parse_document(text);
    ASSERT_EQ(doc.instances.size(), 1u) << text;
    EXPECT_EQ(doc.instances[0].instance, f) << text;
    EXPECT_EQ(print_instance(doc.instances[0].instance, "F"), text);
  }
  auto s = builtin_schema("S3");
  auto doc = parse_document(print_schema(*s));
  ASSERT_EQ(doc.schemas.size(), 1u);
  EXPECT_EQ(*doc.schemas[0], *s);
}

TEST(Format, MorphismRoundTrip) {
  auto s = coproduct(C3(), K1());
  auto text = print_instance(C3(), "A") + print_instance(s.sum, "B") +
              print_morphism(s.left, "i", "A", "B");
  auto doc = parse_document(text);
  ASSERT_EQ(doc.morphisms.size(), 1u);
  const auto& m = doc.morphisms[0];
  EXPECT_EQ(m.source, "A");
  EXPECT_EQ(m.target, "B");
  EXPECT_EQ(m.morphism, s.left);
  EXPECT_TRUE(validate_morphism(m.morphism).ok());
}

TEST(Format, CorpusFilesLoadAndValidate) {
  const std::filesystem::path root = std::filesystem::path(DECAT_TEST_SOURCE_DIR) / ".." / "corpus";
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (entry.path().extension() != ".inst") continue;
    auto doc = load_document(entry.path());
    ++files;
    for (const auto& ni : doc.instances) EXPECT_TRUE(validate_instance(ni.instance).ok()) << entry.path();
  }
  EXPECT_GT(files, 10u);
  EXPECT_THROW(load_document(root / "missing.inst"), std::runtime_error);
}
