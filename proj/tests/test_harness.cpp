#include <gtest/gtest.h>

#include <cstdlib>

#include "decat/harness.hpp"
#include "decat/presets.hpp"

using namespace decat;

namespace {

Bounds bounds(const char* schema, const char* text) {
  return Bounds::parse(*builtin_schema(schema), text);
}

SuiteOptions options(std::size_t trials, std::uint64_t seed = 0) {
  SuiteOptions o;
  o.trials = trials;
  o.seed = seed;
  return o;
}

SuiteOptions corrupted(std::size_t trials) {
  SuiteOptions o = options(trials);
  o.coproduct = corrupted_coproduct;
  return o;
}

}  // namespace

TEST(Harness, SuitesPassOnSmallUniverses) {
  for (const auto& name : suite_names()) {
    if (name == "burnside") continue;
    auto r = run_suite(name, builtin_schema("digraph"), bounds("digraph", "V=2,E=2"), options(10));
    EXPECT_EQ(r.status(), Status::Pass) << name << "\n" << report_text(r);
    EXPECT_GT(r.checks, 0u) << name;
    EXPECT_EQ(r.universe_size, 13u);
  }
  for (const char* schema : {"C2", "C3", "S3"}) {
    auto b = bounds(schema, "X=3");
    for (const auto& name : suite_names()) {
      auto r = run_suite(name, builtin_schema(schema), b, options(10));
      EXPECT_EQ(r.status(), Status::Pass) << schema << " " << name << "\n" << report_text(r);
    }
  }
}

TEST(Harness, BurnsideRejectsNonGroup) {
  auto r = suite_burnside(builtin_schema("endo"), bounds("endo", "X=2"), options(5));
  EXPECT_EQ(r.status(), Status::Fail);
  EXPECT_FALSE(presents_group(builtin_schema("endo"), bounds("endo", "X=2")));
  EXPECT_TRUE(presents_group(builtin_schema("C2"), bounds("C2", "X=4")));
}

TEST(Harness, UnknownSuiteThrows) {
  EXPECT_THROW(run_suite("nope", builtin_schema("C2"), bounds("C2", "X=2"), options(1)),
               std::invalid_argument);
}

TEST(Harness, CorruptedCoproductIsCaught) {
  auto s = builtin_schema("digraph");
  auto b = bounds("digraph", "V=2,E=2");
  for (const char* name : {"extensive", "decomposition", "connectedness", "hom-morphism"}) {
    auto r = run_suite(name, s, b, corrupted(10));
    EXPECT_EQ(r.status(), Status::Fail) << name;
    ASSERT_FALSE(r.failures.empty()) << name;
    EXPECT_LE(r.failures.size(), r.failed_checks);
  }
}

TEST(Harness, WitnessesReplayFromTheirDocument) {
  auto s = builtin_schema("digraph");
  auto r = suite_extensive(s, bounds("digraph", "V=2,E=2"), corrupted(10));
  ASSERT_FALSE(r.failures.empty());
  std::size_t replayed = 0;
  for (const auto& w : r.failures) {
    EXPECT_TRUE(replay(w, corrupted(10)).has_value()) << w.property;
    auto back = parse_witness(w.property, w.detail, w.seed, w.bounds, w.document());
    EXPECT_EQ(back.document(), w.document());
    EXPECT_TRUE(replay(back, corrupted(10)).has_value()) << w.property << "\n" << w.document();
    // With the sound coproduct the same inputs pass.
    EXPECT_FALSE(replay(back, options(10)).has_value()) << w.property;
    ++replayed;
  }
  EXPECT_GT(replayed, 0u);
}

TEST(Harness, WitnessCapPerProperty) {
  auto r = suite_decomposition(builtin_schema("digraph"), bounds("digraph", "V=3,E=3"), corrupted(5));
  std::map<std::string, std::size_t> per;
  for (const auto& w : r.failures) ++per[w.property];
  for (const auto& [p, n] : per) EXPECT_LE(n, kWitnessesPerProperty) << p;
}

TEST(Harness, DeterministicAcrossRunsAndThreads) {
  auto s = builtin_schema("digraph");
  auto b = bounds("digraph", "V=2,E=2");
  std::string first;
  for (const char* threads : {"1", "3", "1"}) {
    ::setenv("DECAT_THREADS", threads, 1);
    std::string all;
    for (const auto& name : suite_names()) {
      if (name == "burnside") continue;
      all += report_json(run_suite(name, s, b, options(8, 42)));
      all += report_text(run_suite(name, s, b, corrupted(8)));
    }
    if (first.empty()) first = all;
    EXPECT_EQ(all, first) << "threads=" << threads;
  }
  ::unsetenv("DECAT_THREADS");
}

TEST(Harness, SeedsChangeSampling) {
  auto s = builtin_schema("digraph");
  auto b = bounds("digraph", "V=2,E=2");
  auto a = suite_extensive(s, b, corrupted(10));
  auto c = suite_extensive(s, b, options(10, 99));
  EXPECT_EQ(a.seed, 0u);
  EXPECT_EQ(c.seed, 99u);
}

TEST(Harness, ReportFormats) {
  auto r = suite_combinatorial(builtin_schema("C2"), bounds("C2", "X=3"), options(1));
  auto text = report_text(r);
  EXPECT_NE(text.find("suite: combinatorial"), std::string::npos) << text;
  EXPECT_NE(text.find("status: PASS"), std::string::npos) << text;
  EXPECT_EQ(text.find("elapsed"), std::string::npos);
  EXPECT_NE(report_text(r, true).find("elapsed"), std::string::npos);
  auto json = report_json(r);
  EXPECT_NE(json.find("\"suite\""), std::string::npos);
  EXPECT_EQ(json.find("elapsed"), std::string::npos);
  EXPECT_EQ(to_string(Status::Finding), "FINDING");
}
