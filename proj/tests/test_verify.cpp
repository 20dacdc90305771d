#include <gtest/gtest.h>

#include "atomcharge/verify.hpp"

using namespace atomcharge;

namespace {

// Moves the weight of one zero-weight element so the dump no longer describes
// a crystal.
Crystal corrupt(const Crystal& c) {
  nlohmann::json j = c.to_json();
  for (auto& el : j["elements"])
    if (el["weight"] == std::vector<int>{1, 1, 1}) {
      el["weight"] = std::vector<int>{2, 1, 0};
      break;
    }
  return Crystal::from_json(j);
}

}  // namespace

TEST(Verify, SweepShapes) {
  EXPECT_EQ(sweep_shapes(Rank(1), 0).size(), 1u);
  EXPECT_EQ(sweep_shapes(Rank(1), 4).size(), 9u);  // 1 + 1 + 2 + 2 + 3
  EXPECT_EQ(sweep_shapes(Rank(2), 3).size(), 7u);  // 1 + 1 + 2 + 3
  EXPECT_EQ(sweep_shapes(Rank(2), 3).back().parts(), (std::vector<int>{1, 1, 1}));
}

TEST(Verify, AllSuitesPassOnSmallBounds) {
  SweepBounds b = SweepBounds::up_to(2, 4);
  b.rank_and_max_weight.emplace_back(3, 3);
  auto reports = run_verify("all", b);
  ASSERT_EQ(reports.size(), suite_table().size());
  for (const auto& rep : reports) {
    EXPECT_TRUE(rep.ok()) << rep.to_text();
    EXPECT_GT(rep.cases, 0) << rep.suite;
  }
}

TEST(Verify, SingleSuiteAndUnknownName) {
  auto reports = run_verify("gammam", SweepBounds::up_to(2, 3));
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].suite, "gammam");
  EXPECT_THROW(run_verify("nonsense", SweepBounds::up_to(1, 1)), InvalidInput);
}

TEST(Verify, CorruptedCrystalIsReported) {
  CrystalProvider bad = [](const Shape& s, Rank r) {
    Crystal c = generate(s, r);
    if (s.parts() == std::vector<int>{2, 1, 0}) return corrupt(c);
    return c;
  };
  for (const std::string suite : {"atoms", "oracles", "strings"}) {
    auto reports = run_verify(suite, SweepBounds::up_to(2, 3), bad);
    ASSERT_EQ(reports.size(), 1u);
    EXPECT_FALSE(reports[0].ok()) << suite;
  }
}

TEST(Verify, ReportFormats) {
  VerifyReport r{"demo", 0, {}};
  r.expect_eq(1, 1, "one");
  r.expect_eq(2, 3, "two");
  EXPECT_EQ(r.cases, 2);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].expected, "3");
  EXPECT_EQ(r.failures[0].actual, "2");
  auto j = r.to_json();
  EXPECT_EQ(j["suite"], "demo");
  EXPECT_NE(r.to_text().find("two"), std::string::npos);
}
