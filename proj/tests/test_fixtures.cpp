#include "shiftlab/commands.hpp"
#include "shiftlab/fixtures.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace shiftlab;

TEST(Registry, Contents) {
  const std::vector<Fixture> reg = registry();
  std::vector<std::string> names;
  for (const Fixture& f : reg) names.push_back(f.name);
  EXPECT_EQ(names, (std::vector<std::string>{"context-free", "even-shift", "example-3.4", "full-2",
                                             "golden-mean", "golden-mean-forbidden", "period-2-sofic",
                                             "random-walk-z", "remark-3.6"}));
  EXPECT_THROW(fixture(reg, "nope"), InvalidArgument);
}

TEST(Registry, FactsAreWellFormed) {
  for (const Fixture& f : registry()) {
    EXPECT_FALSE(f.facts.empty()) << f.name;
    for (const Fact& fact : f.facts) {
      EXPECT_TRUE(fact.source == "published" || fact.source == "trivial" || fact.source == "derived") << f.name;
      if (fact.source == "derived") EXPECT_FALSE(fact.oracle.empty()) << f.name << " " << fact.key;
      EXPECT_GE(fact.tolerance, 0.0);
    }
  }
}

TEST(Registry, Lookup) {
  const std::vector<Fixture> reg = registry();
  const Fixture& star = fixture(reg, "example-3.4");
  ASSERT_NE(star.find("lambda"), nullptr);
  EXPECT_NEAR(star.find("lambda")->value.get<double>(), std::sqrt(3.0), 1e-12);
  ASSERT_NE(star.find("measure", "1"), nullptr);
  EXPECT_EQ(star.find("measure", "zzz"), nullptr);
  EXPECT_GE(fixture(reg, "golden-mean").all("census_words").size(), 10u);
}

TEST(Registry, EnvironmentOverride) {
  ASSERT_EQ(setenv("SHIFTLAB_FIXTURES", "/nonexistent-fixture-dir", 1), 0);
  EXPECT_EQ(default_fixture_dir(), "/nonexistent-fixture-dir");
  unsetenv("SHIFTLAB_FIXTURES");
  EXPECT_EQ(default_fixture_dir(), SHIFTLAB_FIXTURE_DIR);
}

TEST(Facts, RejectDerivedWithoutOracle) {
  const nlohmann::json bad = nlohmann::json::parse(R"([{"key":"lambda","value":1,"source":"derived","tolerance":0}])");
  EXPECT_THROW(facts_from_json(bad), ValidationError);
  const nlohmann::json unknown = nlohmann::json::parse(R"([{"key":"lambda","value":1,"source":"guess","tolerance":0}])");
  EXPECT_THROW(facts_from_json(unknown), ValidationError);
}

class EveryFixture : public ::testing::TestWithParam<std::string> {};

TEST_P(EveryFixture, VerifyPasses) {
  const std::vector<Fixture> reg = registry();
  const Fixture& f = fixture(reg, GetParam());
  CommandOptions o;
  o.n_max = 10;
  o.window_max = 10;
  const CommandOutcome out = run_command("verify", f.path, o);
  EXPECT_EQ(out.exit_code, 0) << render(out.document["results"]);
  EXPECT_EQ(out.document["results"]["facts_failed"], 0);
  EXPECT_GT(out.document["results"]["checks"].get<int>(), 0);
}

INSTANTIATE_TEST_SUITE_P(Fixtures, EveryFixture,
                         ::testing::Values("context-free", "even-shift", "example-3.4", "full-2", "golden-mean",
                                           "golden-mean-forbidden", "period-2-sofic", "random-walk-z", "remark-3.6"),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& c : s)
                             if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
                           return s;
                         });
