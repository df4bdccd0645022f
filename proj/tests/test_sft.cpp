#include "shiftlab/oracle.hpp"
#include "shiftlab/sft.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace shiftlab;
using namespace shiftlab::testing;

namespace {

const double kGoldenP1 = (5.0 + std::sqrt(5.0)) / 10.0;

std::vector<NonnegMatrix> irreducible_fixtures() { return {full2(), golden(), star4()}; }

}  // namespace

TEST(SftAdmissible, Examples) {
  const SftSystem g(golden());
  EXPECT_TRUE(is_admissible(g, {0, 1, 0}));
  EXPECT_FALSE(is_admissible(g, {1, 1}));
  EXPECT_TRUE(is_admissible(SftSystem(star4()), {0, 1}));
  EXPECT_THROW(is_admissible(g, {0, 2}), InvalidArgument);
}

TEST(Parry, Examples) {
  EXPECT_NEAR(parry_measure(SftSystem(full2()), {0, 1, 1}).value, 0.125, 1e-12);
  const SftSystem h(star4());
  EXPECT_NEAR(parry_measure(h, {0}).value, 0.5, 1e-10);
  EXPECT_NEAR(parry_measure(h, {0, 1}).value, 1.0 / 6, 1e-10);
}

TEST(Parry, InadmissibleIsFlaggedZero) {
  const MeasureResult r = parry_measure(SftSystem(golden()), {1, 1});
  EXPECT_FALSE(r.admissible);
  EXPECT_EQ(r.value, 0.0);
}

TEST(Parry, ReducibleRejected) { EXPECT_THROW(parry_measure(SftSystem(upper_pair()), {0}), ReducibleMatrix); }

TEST(NaturalRatio, MatchesOracleExactly) {
  for (const NonnegMatrix& a : irreducible_fixtures()) {
    const SftSystem sys(a);
    const SystemHandle h = SystemHandle::sft(a);
    for (int m = 1; m <= 11; ++m) {
      const CylinderTable t(h, m);
      for (int n = 1; n <= std::min(m, 3); ++n)
        for (const Word& w : all_words(a.dim(), n))
          for (long k = 0; k + n <= m; ++k)
            EXPECT_EQ(natural_measure_ratio(sys, w, k, m - n - k), t.ratio(w, k));
    }
  }
}

TEST(NaturalRatio, FullShiftExact) {
  const SftSystem sys(full2());
  for (long k = 0; k < 5; ++k) EXPECT_EQ(natural_measure_ratio(sys, {1, 0}, k, 4 - k), Rational(1, 4));
}

TEST(NaturalRatio, StarOddEvenDiffer) {
  const SftSystem sys(star4());
  EXPECT_NE(natural_measure_ratio(sys, {0}, 10, 10), natural_measure_ratio(sys, {0}, 10, 11));
}

TEST(NaturalMeasure, GoldenMean) {
  const MeasureResult r = natural_measure(SftSystem(golden()), {0});
  EXPECT_NEAR(r.value, kGoldenP1, 1e-8);
  EXPECT_EQ(r.method, MeasureMethod::Limit);
  EXPECT_FALSE(r.diagnostics.empty());
}

TEST(NaturalMeasure, StarUsesAveraging) {
  const MeasureResult r = natural_measure(SftSystem(star4()), {0});
  EXPECT_EQ(r.method, MeasureMethod::PeriodicLimit);
  EXPECT_NEAR(r.value, 0.5, 1e-9);
}

TEST(NaturalMeasure, FullShift) { EXPECT_NEAR(natural_measure(SftSystem(full2()), {0, 1}).value, 0.25, 1e-12); }

TEST(NaturalMeasure, NonConvergenceReported) {
  LimitOptions o;
  o.tol = 1e-30;
  o.max_window = 16;
  EXPECT_THROW(natural_measure(SftSystem(golden()), {0}, o), NotConverged);
}

TEST(NaturalMeasure, AgreesWithParryOnRandomMatrices) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const NonnegMatrix a = random_irreducible(rng, 2 + static_cast<int>(rng() % 4), 0.4, trial % 3 != 0);
    const SftSystem sys(a);
    for (const Word& w : enumerate_words(SystemHandle::sft(a), 2))
      EXPECT_NEAR(natural_measure(sys, w).value, parry_measure(sys, w).value, 1e-8);
  }
}

TEST(Reducible, DominantBlock) {
  // Golden-mean block {0,1} feeding a loop at 2.
  const SftSystem sys(NonnegMatrix::from_rows({{1, 1, 1}, {1, 0, 0}, {0, 0, 1}}));
  const MeasureResult inside = reducible_natural_measure(sys, {0});
  EXPECT_NEAR(inside.value, kGoldenP1, 1e-9);
  // Long-window census ratio agrees.
  EXPECT_NEAR(to_double(natural_measure_ratio(sys, {0}, 60, 60)), kGoldenP1, 1e-6);
  EXPECT_EQ(reducible_natural_measure(sys, {2}).value, 0.0);
  EXPECT_THROW(reducible_natural_measure(SftSystem(upper_pair()), {0}), NoNaturalMeasure);
}

TEST(ShiftAverage, UpperPairLimits) {
  const SftSystem sys(upper_pair(), Alphabet({"0", "1"}));
  EXPECT_NEAR(shift_averaged_measure(sys, {0}, 5000, 5000), 0.5, 1e-3);
  EXPECT_NEAR(shift_averaged_measure(sys, {1}, 5000, 5000), 0.5, 1e-3);
  EXPECT_NEAR(shift_averaged_measure(sys, {0, 1}, 5000, 5000), 0.0, 1e-3);
  // The plain census ratio of symbol 0 at the centre does not settle to a measure.
  EXPECT_GT(std::abs(to_double(natural_measure_ratio(sys, {0}, 50, 50)) -
                     to_double(natural_measure_ratio(sys, {0}, 50, 10))),
            0.1);
}

TEST(ShiftAverage, IrreducibleAgreesWithNaturalMeasure) {
  // Cesaro averages: the error shrinks like 1 / window.
  const SftSystem sys(golden());
  const double e200 = std::abs(shift_averaged_measure(sys, {0}, 200, 200) - kGoldenP1);
  const double e400 = std::abs(shift_averaged_measure(sys, {0}, 400, 400) - kGoldenP1);
  EXPECT_LT(e400, 1e-3);
  EXPECT_NEAR(e200 / e400, 2.0, 0.05);
}

TEST(Periodic, Examples) {
  EXPECT_NEAR(periodic_natural_measure(SftSystem(golden()), {0}).value, kGoldenP1, 1e-6);
  EXPECT_NEAR(periodic_natural_measure(SftSystem(full2()), {0}).value, 0.5, 1e-12);
  EXPECT_NEAR(periodic_natural_measure(SftSystem(star4()), {0}).value, 0.5, 1e-9);
}

TEST(Periodic, RatioMatchesCycleEnumeration) {
  const SftSystem sys(golden());
  const SystemHandle h = SystemHandle::sft(golden());
  for (int m = 2; m <= 10; ++m) {
    // Periodic points of period m whose first symbols read w, by brute force.
    for (const Word& w : all_words(2, 2)) {
      BigInt hits = 0;
      for (const Word& x : all_words(2, m)) {
        bool ok = true;
        for (int i = 0; i < m && ok; ++i) ok = !(x[i] == 1 && x[(i + 1) % m] == 1);
        if (ok && x[0] == w[0] && x[1] == w[1]) ++hits;
      }
      const long k = 0, l = m + 1 - 2;
      EXPECT_EQ(periodic_ratio(sys, w, k, l), Rational(hits, count_periodic(h, m)));
    }
  }
}

TEST(Entropy, Examples) {
  EXPECT_NEAR(entropy(SftSystem(full2())), std::log(2.0), 1e-12);
  EXPECT_NEAR(entropy(SftSystem(golden())), std::log((1 + std::sqrt(5.0)) / 2), 1e-10);
  EXPECT_NEAR(entropy(SftSystem(star4())), 0.5 * std::log(3.0), 1e-10);
}

TEST(Entropy, PartialSumsApproachTopological) {
  const SftSystem sys(golden());
  const double h = entropy(sys);
  double prev = measure_entropy_partial(sys, 1);
  for (int n = 2; n <= 10; ++n) {
    const double cur = measure_entropy_partial(sys, n);
    EXPECT_LE(std::abs(cur - h), std::abs(prev - h) + 1e-12);
    prev = cur;
  }
  EXPECT_NEAR(prev, h, 0.05);
}

TEST(Sample, DeterministicAndStationary) {
  const SftSystem sys(full2());
  const Word a = sample_orbit(sys, 1'000'000, 99), b = sample_orbit(sys, 1'000'000, 99);
  EXPECT_EQ(a, b);
  const double freq = static_cast<double>(std::count(a.begin(), a.end(), 0)) / a.size();
  EXPECT_NEAR(freq, 0.5, 3 * 0.0005);
  const Word g = sample_orbit(SftSystem(golden()), 1'000'000, 5);
  for (std::size_t i = 0; i + 1 < g.size(); ++i) ASSERT_FALSE(g[i] == 1 && g[i + 1] == 1);
}

TEST(Properties, AdditivityAndShiftInvariance) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    const NonnegMatrix a = random_irreducible(rng, 2 + static_cast<int>(rng() % 4), 0.4, trial % 2 == 0);
    const SftSystem sys(a);
    const SystemHandle h = SystemHandle::sft(a);
    for (int n = 1; n <= 3; ++n)
      for (const Word& w : enumerate_words(h, n)) {
        const double mu = parry_measure(sys, w).value;
        double right = 0.0, left = 0.0;
        for (int s = 0; s < a.dim(); ++s) {
          Word ws = w, sw{s};
          ws.push_back(s);
          sw.insert(sw.end(), w.begin(), w.end());
          right += parry_measure(sys, ws).value;
          left += parry_measure(sys, sw).value;
        }
        EXPECT_NEAR(right, mu, 1e-12);
        EXPECT_NEAR(left, mu, 1e-12);
      }
  }
}

TEST(Properties, Normalization) {
  for (const NonnegMatrix& a : irreducible_fixtures()) {
    const SftSystem sys(a);
    for (int n = 1; n <= 10; ++n) {
      double total = 0.0;
      for (const Word& w : enumerate_words(SystemHandle::sft(a), n)) total += parry_measure(sys, w).value;
      EXPECT_NEAR(total, 1.0, 1e-10);
    }
  }
}

TEST(Properties, MixingDefectDecays) {
  for (const NonnegMatrix& a : {full2(), golden()}) {
    const SftSystem sys(a);
    const SystemHandle h = SystemHandle::sft(a);
    for (int n1 = 1; n1 <= 3; ++n1)
      for (const Word& w1 : enumerate_words(h, n1))
        for (const Word& w2 : enumerate_words(h, 2)) {
          EXPECT_LE(mixing_defect(sys, w1, w2, 50), 1e-6);
          EXPECT_LE(mixing_defect(sys, w1, w2, 30), mixing_defect(sys, w1, w2, 5) + 1e-15);
        }
  }
}

TEST(Properties, UniformBounds) {
  for (const NonnegMatrix& a : irreducible_fixtures()) {
    const SftSystem sys(a);
    const SftUniformBounds b = sft_uniform_bounds(sys);
    const double lambda = sys.spectral().lambda;
    for (int n = 1; n <= 10; ++n)
      for (const Word& w : enumerate_words(SystemHandle::sft(a), n)) {
        const double scaled = parry_measure(sys, w).value * std::pow(lambda, n);
        EXPECT_GE(scaled, b.alpha - 1e-9);
        EXPECT_LE(scaled, b.beta + 1e-9);
      }
  }
}

TEST(Properties, ConstantsWithoutLambdaAreTooSmall) {
  // With alpha = min u_i v_j and beta = max u_i v_j, the upper inequality fails
  // for one-symbol words of the golden mean: mu(1) lambda > max u_i v_j.
  const SftSystem sys(golden());
  const auto& sd = sys.spectral();
  double hi = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) hi = std::max(hi, sd.left[i] * sd.right[j]);
  EXPECT_GT(parry_measure(sys, {0}).value * sd.lambda, hi);
}
