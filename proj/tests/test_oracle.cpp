#include "shiftlab/oracle.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace shiftlab;
using namespace shiftlab::testing;

TEST(Enumerate, GoldenMeanThreeWords) {
  const Alphabet a = Alphabet::numbered(2);
  std::vector<std::string> got;
  for (const Word& w : enumerate_words(SystemHandle::sft(golden()), 3)) got.push_back(a.format(w, ""));
  EXPECT_EQ(got, (std::vector<std::string>{"111", "112", "121", "211", "212"}));
}

TEST(Enumerate, FullShiftTwoWords) { EXPECT_EQ(enumerate_words(SystemHandle::sft(full2()), 2).size(), 4u); }

TEST(Enumerate, ContextFreeFactorRule) {
  const ForbiddenSetShift cf = context_free_shift();
  const Alphabet& a = cf.alphabet;
  EXPECT_FALSE(cf.admissible(a.parse("abcca")));
  EXPECT_TRUE(cf.admissible(a.parse("abca")));
  EXPECT_TRUE(cf.admissible(a.parse("abbc")));
  EXPECT_FALSE(cf.admissible(a.parse("aba")));
  EXPECT_TRUE(cf.admissible(a.parse("aa")));
  bool has_abbc = false, has_aba = false;
  for (const Word& w : enumerate_words(SystemHandle::forbidden_set(cf), 4)) {
    has_abbc |= a.format(w, "") == "abbc";
    has_aba |= a.format(w, "").find("aba") != std::string::npos;
  }
  EXPECT_TRUE(has_abbc);
  EXPECT_FALSE(has_aba);
}

TEST(Enumerate, HorizonRefusesLongQueries) {
  const SystemHandle h = SystemHandle::forbidden_set(context_free_shift(6));
  EXPECT_NO_THROW(count_words(h, 6));
  EXPECT_THROW(count_words(h, 7), HorizonExceeded);
}

TEST(Enumerate, BlowUpGuard) {
  OracleOptions tight;
  tight.max_work = 1000;
  EXPECT_THROW(count_words(SystemHandle::sft(full2()), 12, tight), OracleLimitExceeded);
}

TEST(Enumerate, EnvironmentOverridesGuard) {
  ::setenv("SHIFTLAB_MAX_WORK", "123", 1);
  EXPECT_EQ(OracleOptions::from_env().max_work, 123u);
  ::unsetenv("SHIFTLAB_MAX_WORK");
  EXPECT_EQ(OracleOptions::from_env().max_work, OracleOptions{}.max_work);
}

TEST(Cylinder, GoldenMeanMiddleOne) {
  EXPECT_EQ(count_cylinder(SystemHandle::sft(golden()), {{0}, 1, 1}), 4);
}

TEST(Cylinder, FullShiftFreeMargins) {
  EXPECT_EQ(count_cylinder(SystemHandle::sft(full2()), {{1, 0}, 1, 1}), 4);
}

TEST(Cylinder, StarAgreesWithHandCount) {
  // Centre at position 2 of a 5-word forces centre, leaf, centre, leaf, centre: 3 * 3 words.
  EXPECT_EQ(count_cylinder(SystemHandle::sft(star4()), {{0}, 2, 2}), 9);
}

TEST(Periodic, Examples) {
  EXPECT_EQ(count_periodic(SystemHandle::sft(golden()), 4), 7);
  EXPECT_EQ(count_periodic(SystemHandle::sft(full2()), 3), 8);
  // aaaa, bbbb and the four rotations of aabb.
  EXPECT_EQ(count_periodic(SystemHandle::sofic(even_shift()), 4), 6);
}

TEST(RatioSeries, FullShiftConstant) {
  const auto cells = ratio_series(SystemHandle::sft(full2()), {0, 1, 1}, {{0, 0}, {1, 2}, {3, 3}});
  for (const auto& c : cells) EXPECT_EQ(c.ratio, Rational(1, 8));
}

TEST(RatioSeries, GoldenMeanApproachesStationary) {
  const auto cells = ratio_series(SystemHandle::sft(golden()), {0}, {{2, 2}, {6, 6}, {12, 12}});
  const double target = (5 + std::sqrt(5.0)) / 10;
  EXPECT_GT(std::abs(to_double(cells[0].ratio) - target), std::abs(to_double(cells[2].ratio) - target));
  EXPECT_NEAR(to_double(cells[2].ratio), target, 1e-5);
}

TEST(RatioSeries, StarOddEvenWindowsOscillate) {
  const auto cells = ratio_series(SystemHandle::sft(star4()), {0}, {{4, 4}, {4, 5}, {5, 5}});
  // Odd windows centred on a fixed position differ from even ones.
  EXPECT_NE(cells[0].ratio, cells[1].ratio);
}

TEST(CylinderTable, PartitionsCensus) {
  const SystemHandle h = SystemHandle::sft(star4());
  const CylinderTable t(h, 7);
  for (int n = 1; n <= 3; ++n)
    for (long k = 0; k + n <= 7; ++k) {
      Rational total = 0;
      for (const Word& w : enumerate_words(h, n)) total += t.ratio(w, k);
      EXPECT_EQ(total, 1);
    }
  EXPECT_EQ(t.total(), entry_sum(mat_power(star4(), 6)));
}

TEST(Oracle, SoficCountsMatchLabelSequences) {
  // Even shift: admissible words are those whose maximal inner b-runs are even.
  const SystemHandle h = SystemHandle::sofic(even_shift());
  const std::vector<long long> expect{2, 4, 7, 12, 20, 33, 54, 88};
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(count_words(h, n), expect[n - 1]);
}

TEST(Oracle, TruncatedCountsWeightPaths) {
  const NonnegMatrix a = NonnegMatrix::from_rows({{0, 2}, {1, 0}});
  const SystemHandle h = SystemHandle::truncated(a);
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(count_words(h, n), entry_sum(mat_power(a, n - 1)));
}
