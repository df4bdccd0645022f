#include "shiftlab/countable.hpp"
#include "shiftlab/oracle.hpp"
#include "shiftlab/sft.hpp"
#include "shiftlab/sofic.hpp"
#include "shiftlab/system_file.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace shiftlab;
using namespace shiftlab::testing;

namespace {

constexpr int kTrials = 25;

}  // namespace

TEST(Properties, SftCensusMatchesOracle) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < kTrials; ++t) {
    const NonnegMatrix a = random_irreducible(rng, 2 + static_cast<int>(rng() % 4), 0.35, t % 2 == 0);
    const SystemHandle h = SystemHandle::sft(a);
    const SftSystem sys(a);
    for (int n = 1; n <= 8; ++n) {
      EXPECT_EQ(entry_sum(sys.power(n - 1)), count_words(h, n));
      EXPECT_EQ(trace(sys.power(n)), count_periodic(h, n));
    }
  }
}

TEST(Properties, SftAsSoficSameMeasure) {
  std::mt19937_64 rng(102);
  for (int t = 0; t < kTrials; ++t) {
    const NonnegMatrix a = random_irreducible(rng, 2 + static_cast<int>(rng() % 4), 0.35);
    const SftSystem sys(a);
    const LabeledGraph g = sft_as_sofic(a, Alphabet::numbered(a.dim()));
    for (const Word& w : enumerate_words(SystemHandle::sft(a), 3))
      EXPECT_NEAR(natural_measure(g, w).value, parry_measure(sys, w).value, 1e-10);
  }
}

TEST(Properties, SoficMeasureIsShiftInvariantAndNormalized) {
  std::mt19937_64 rng(103);
  for (int t = 0; t < kTrials; ++t) {
    const LabeledGraph g = random_right_resolving(rng, 2 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 2));
    const int k = g.alphabet.size();
    for (int n = 1; n <= 3; ++n) {
      double total = 0.0;
      for (const Word& w : all_words(k, n)) {
        const double mu = natural_measure(g, w).value;
        total += mu;
        double left = 0.0, right = 0.0;
        for (int s = 0; s < k; ++s) {
          Word ws = w, sw{s};
          ws.push_back(s);
          sw.insert(sw.end(), w.begin(), w.end());
          right += natural_measure(g, ws).value;
          left += natural_measure(g, sw).value;
        }
        EXPECT_NEAR(left, mu, 1e-10);
        EXPECT_NEAR(right, mu, 1e-10);
      }
      EXPECT_NEAR(total, 1.0, 1e-10);
    }
  }
}

TEST(Properties, SoficClosedFormMatchesEdgeShift) {
  std::mt19937_64 rng(104);
  for (int t = 0; t < kTrials; ++t) {
    const LabeledGraph g = random_right_resolving(rng, 2 + static_cast<int>(rng() % 3), 2);
    for (const Word& w : enumerate_words(SystemHandle::sofic(g), 2))
      EXPECT_NEAR(edge_shift_measure(g, w).value, natural_measure(g, w).value, 1e-6);
  }
}

TEST(Properties, MinimalPresentationKeepsLanguage) {
  std::mt19937_64 rng(105);
  for (int t = 0; t < kTrials; ++t) {
    const LabeledGraph g = random_right_resolving(rng, 2 + static_cast<int>(rng() % 4), 2);
    const LabeledGraph m = minimal_right_resolving(g);
    EXPECT_LE(m.vertices, g.vertices);
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(count_words(m, n), count_words(g, n));
  }
}

TEST(Properties, StencilReturnsMatchDenseTruncation) {
  std::mt19937_64 rng(106);
  std::uniform_int_distribution<int> weight(0, 3);
  for (int t = 0; t < 10; ++t) {
    const std::vector<long long> offsets{1, 0, -1, 2};
    std::vector<long long> values{1 + weight(rng), weight(rng), 1 + weight(rng), weight(rng)};
    const CountableMatrixSpec spec = stencil_spec("s", offsets, values);
    const int terms = 12;
    const RecurrenceReport rep = classify_recurrence(spec, 1.0 + values[0] + values[1] + values[2] + values[3], terms);
    // The ball of radius 2 * terms contains every state a return path visits.
    const Truncation tr = truncate(spec, 4 * terms + 5);
    const int root = tr.position(spec.root);
    for (int n = 1; n <= terms; ++n) EXPECT_EQ(mat_power(tr.matrix, n)(root, root), rep.t[n]) << n;
  }
}

TEST(Properties, SystemFileRoundTrip) {
  std::mt19937_64 rng(107);
  for (int t = 0; t < kTrials; ++t) {
    SystemFile s;
    s.type = SystemType::Sft;
    s.matrix = random_irreducible(rng, 1 + static_cast<int>(rng() % 5), 0.5);
    s.alphabet = Alphabet::numbered(s.matrix.dim());
    const std::string text = dump_system(s);
    const SystemFile back = parse_system(text);
    EXPECT_EQ(back.matrix, s.matrix);
    EXPECT_EQ(dump_system(back), text);
  }
}

TEST(Properties, AlphabetParseFormat) {
  std::mt19937_64 rng(108);
  const Alphabet a({"x", "yy", "z1"});
  for (int t = 0; t < kTrials; ++t) {
    Word w(1 + rng() % 8);
    for (int& s : w) s = static_cast<int>(rng() % 3);
    EXPECT_EQ(a.parse(a.format(w)), w);
  }
}
