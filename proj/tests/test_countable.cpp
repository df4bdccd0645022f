#include "shiftlab/countable.hpp"
#include "shiftlab/sft.hpp"
#include "shiftlab/sofic.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace shiftlab;
using namespace shiftlab::testing;

namespace {

const double kPhi = (1 + std::sqrt(5.0)) / 2;

// Closed walks of length n from 0 back to 0 on Z, and first returns, by direct recursion over positions.
std::pair<BigInt, BigInt> walk_counts(int n) {
  std::map<long, BigInt> all{{0, 1}}, taboo{{0, 1}};
  for (int step = 0; step < n; ++step) {
    std::map<long, BigInt> a2, t2;
    for (const auto& [x, c] : all) {
      a2[x + 1] += c;
      a2[x - 1] += c;
    }
    for (const auto& [x, c] : taboo) {
      if (x == 0 && step > 0) continue;
      t2[x + 1] += c;
      t2[x - 1] += c;
    }
    all = std::move(a2);
    taboo = std::move(t2);
  }
  return {all[0], taboo[0]};
}

// Number of ±1 paths of length `len` from a to b.
BigInt walk_paths(long a, long b, long len) {
  const long d = std::abs(b - a);
  if (d > len || (len - d) % 2) return 0;
  return binomial(len, (len + d) / 2);
}

}  // namespace

TEST(Stencil, Successors) {
  const CountableMatrixSpec rw = random_walk_spec();
  EXPECT_EQ(rw.entry(0, 1), 1);
  EXPECT_EQ(rw.entry(0, -1), 1);
  EXPECT_EQ(rw.entry(0, 2), 0);
  const CountableMatrixSpec half = stencil_spec("half", {1, -1}, {1, 1}, 0, 0);
  EXPECT_EQ(half.entry(0, -1), 0);
  EXPECT_EQ(half.entry(3, 2), 1);
  const CountableMatrixSpec weighted = stencil_spec("w", {1, 0, -1}, {2, 3, 1});
  EXPECT_EQ(weighted.entry(5, 6), 2);
  EXPECT_EQ(weighted.entry(5, 5), 3);
}

TEST(Truncation, BreadthFirstBall) {
  const Truncation t = truncate(random_walk_spec(), 5);
  EXPECT_EQ(t.states, (std::vector<StateId>{0, 1, -1, 2, -2}));
  EXPECT_EQ(t.depth, (std::vector<int>{0, 1, 1, 2, 2}));
  EXPECT_EQ(t.matrix(0, 1), 1);
  EXPECT_EQ(t.matrix(3, 1), 1);
  EXPECT_EQ(t.matrix(3, 4), 0);
  EXPECT_EQ(t.position(7), -1);
}

TEST(Truncation, FiniteSpecReproducesMatrix) {
  EXPECT_EQ(truncate(finite_spec(golden()), 10).matrix, golden());
  EXPECT_EQ(truncate(finite_spec(star4()), 4).matrix, star4());
}

TEST(ApproxPerron, FiniteConvergesExactly) {
  const TruncationResult r = approx_perron(finite_spec(golden()));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.lambda, kPhi, 1e-10);
  EXPECT_NEAR(r.last().right[0], 1.0, 1e-15);
}

TEST(ApproxPerron, RandomWalkPathEigenvalues) {
  ApproxPerronOptions o;
  o.max_size = 256;
  const TruncationResult r = approx_perron(random_walk_spec(), o);
  EXPECT_FALSE(r.converged);
  double prev = 0.0;
  for (const TruncationStep& s : r.steps) {
    ASSERT_TRUE(s.used);
    EXPECT_NEAR(s.lambda, 2 * std::cos(std::numbers::pi / (s.size + 1)), 1e-9) << s.size;
    EXPECT_GT(s.lambda, prev);
    prev = s.lambda;
  }
  EXPECT_LT(r.lambda, 2.0);
}

TEST(ApproxPerron, ExplicitSizes) {
  ApproxPerronOptions o;
  o.sizes = {3, 7, 15};
  const TruncationResult r = approx_perron(random_walk_spec(), o);
  ASSERT_EQ(r.steps.size(), 3u);
  EXPECT_EQ(r.steps[1].size, 7);
}

TEST(ConstantEigenvector, Examples) {
  EXPECT_EQ(constant_eigenvector_evidence(random_walk_spec(), 64), std::optional<double>(2.0));
  EXPECT_EQ(constant_eigenvector_evidence(stencil_spec("w", {1, 0, -1}, {1, 1, 1}), 64), std::optional<double>(3.0));
  EXPECT_FALSE(constant_eigenvector_evidence(stencil_spec("half", {1, -1}, {1, 1}, 0, 0), 64).has_value());
}

TEST(Recurrence, RandomWalkIsNullRecurrent) {
  const RecurrenceReport rep = classify_recurrence(random_walk_spec(), 2.0, 400);
  EXPECT_EQ(rep.cls, RecurrenceClass::NullRecurrent) << rep.evidence;
  for (int n = 0; n <= 30; ++n) {
    const auto [t, l] = walk_counts(n);
    EXPECT_EQ(rep.t[n], t) << n;
    if (n > 0) EXPECT_EQ(rep.l[n], l) << n;
  }
  EXPECT_EQ(rep.t[400], binomial(400, 200));
}

TEST(Recurrence, FiniteIsPositiveRecurrent) {
  const RecurrenceReport rep = classify_recurrence(finite_spec(golden()), kPhi, 200);
  EXPECT_EQ(rep.cls, RecurrenceClass::PositiveRecurrent) << rep.evidence;
  // Golden mean: returns to state 0 follow Fibonacci numbers.
  for (int n = 1; n <= 20; ++n) EXPECT_EQ(rep.t[n], fib(n + 1));
}

TEST(Recurrence, ArgumentChecks) {
  EXPECT_THROW(classify_recurrence(random_walk_spec(), 2.0, 5), InvalidArgument);
  EXPECT_THROW(classify_recurrence(random_walk_spec(), 0.0, 100), InvalidArgument);
}

TEST(MarkovMeasure, FiniteAgreesWithParry) {
  const CountableMatrixSpec spec = finite_spec(golden());
  const Truncation t = truncate(spec, 2);
  const TruncationStep ts = truncation_step(spec, 2);
  const RecurrenceReport rep = classify_recurrence(spec, ts.lambda, 200);
  const SftSystem sys(golden());
  for (const Word& w : std::vector<Word>{{0}, {1}, {0, 1}, {0, 0, 1, 0}}) {
    const std::vector<StateId> states(w.begin(), w.end());
    const CountableMeasure m = markov_measure(ts, t, states, rep);
    EXPECT_NEAR(m.result.value, parry_measure(sys, w).value, 1e-12);
    EXPECT_NEAR(m.closed_form, m.result.value, 1e-12);
  }
  EXPECT_FALSE(markov_measure(ts, t, {1, 1}, rep).result.admissible);
}

TEST(MarkovMeasure, StochasticAndPrintedForms) {
  const CountableMatrixSpec spec = finite_spec(golden());
  const Truncation t = truncate(spec, 2);
  const TruncationStep ts = truncation_step(spec, 2);
  const std::vector<double> p = markov_matrix(ts, t), q = markov_matrix_as_printed(ts, t);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(p[2 * i] + p[2 * i + 1], 1.0, 1e-12);
  // Row 0 of the printed placement sums to 1/phi + 1 = phi.
  EXPECT_NEAR(q[0] + q[1], kPhi, 1e-12);
}

TEST(MarkovMeasure, NullRecurrentRefused) {
  const CountableMatrixSpec spec = random_walk_spec();
  const Truncation t = truncate(spec, 9);
  const TruncationStep ts = truncation_step(spec, 9);
  const RecurrenceReport rep = classify_recurrence(spec, 2.0, 400);
  EXPECT_THROW(markov_measure(ts, t, {0}, rep), NotPositiveRecurrent);
  EXPECT_THROW(natural_measure_sft(spec, {0}, {{0, 0}}, rep), NotPositiveRecurrent);
}

TEST(NaturalMeasure, FiniteSftAnchors) {
  const CountableMatrixSpec spec = finite_spec(golden());
  const TruncationStep ts = truncation_step(spec, 2);
  const RecurrenceReport rep = classify_recurrence(spec, ts.lambda, 200);
  const CountableMeasure m = natural_measure_sft(spec, {0}, {{0, 0}, {0, 1}, {1, 0}}, rep, {}, &ts);
  EXPECT_NEAR(m.result.value, (5 + std::sqrt(5.0)) / 10, 1e-8);
  EXPECT_NEAR(m.closed_form, m.result.value, 1e-8);
}

TEST(NaturalMeasure, FiniteSoficAnchors) {
  const CountableMatrixSpec spec = finite_labeled_spec(even_shift());
  const TruncationStep ts = truncation_step(spec, 2);
  const RecurrenceReport rep = classify_recurrence(spec, ts.lambda, 200);
  const CountableMeasure m = natural_measure_sofic(spec, {0}, {{0, 0}, {0, 1}}, rep, {}, &ts);
  EXPECT_NEAR(m.result.value, 1 / std::sqrt(5.0), 1e-8);
  EXPECT_NEAR(sofic_closed_form(spec, ts, {0, 1}), natural_measure(even_shift(), {0, 1}).value, 1e-10);
}

TEST(Ratios, CountableSftMatchesFiniteSft) {
  const CountableMatrixSpec spec = finite_spec(golden());
  for (long k = 0; k <= 6; ++k)
    for (long l = 0; l <= 6; ++l) {
      // Anchored at (0,0): first symbol 0 after k steps, last symbol back to 0.
      BigInt num = 0, den = 0;
      for (const Word& x : all_words(2, static_cast<int>(k + l + 2))) {
        bool ok = x.front() == 0 && x.back() == 0;
        for (std::size_t i = 0; ok && i + 1 < x.size(); ++i) ok = !(x[i] == 1 && x[i + 1] == 1);
        if (!ok) continue;
        ++den;
        if (x[k] == 0 && x[k + 1] == 1) ++num;
      }
      EXPECT_EQ(countable_sft_ratio(spec, {0, 1}, 0, 0, k, l), Rational(num, den)) << k << "," << l;
    }
}

TEST(Ratios, RandomWalkMatchesPathCounts) {
  const CountableMatrixSpec rw = random_walk_spec();
  for (long k = 0; k <= 4; ++k)
    for (long l = 0; k + l <= 4; ++l) {
      const Rational direct(walk_paths(0, 0, 2 * k) * walk_paths(0, 0, 2 * l), walk_paths(0, 0, 2 * (k + l)));
      EXPECT_EQ(countable_sft_ratio(rw, {0}, 0, 0, 2 * k, 2 * l), direct);
      EXPECT_EQ(random_walk_ratio(k, l), direct);
    }
  EXPECT_EQ(random_walk_ratio(1, 1), Rational(2, 3));
}

TEST(Ratios, RandomWalkDiagnostic) {
  const auto cells = random_walk_diagnostic(200);
  ASSERT_EQ(cells.size(), 200u);
  for (std::size_t i = 1; i < cells.size(); ++i) EXPECT_LT(cells[i].value, cells[i - 1].value);
  EXPECT_LT(cells[49].value, 0.12);
  EXPECT_GE(cells[199].stirling_scaled, 0.98);
  EXPECT_LE(cells[199].stirling_scaled, 1.02);
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(10, 3), 120);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(60, 30), BigInt("118264581564861424"));
}
