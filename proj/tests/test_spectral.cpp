#include "shiftlab/spectral.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace shiftlab;
using namespace shiftlab::testing;

namespace {

double residual(const NonnegMatrix& a, const std::vector<double>& v, double lambda, bool left) {
  const int n = a.dim();
  const auto d = a.to_double();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += left ? v[j] * d[j * n + i] : d[i * n + j] * v[j];
    worst = std::max(worst, std::abs(s - lambda * v[i]));
  }
  return worst;
}

NonnegMatrix cyclic3x2() {
  // Classes {0,1} -> {2,3} -> {4,5} -> {0,1}.
  NonnegMatrix a(6);
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (i + j != 2) a.set(2 * c + i, (2 * c + 2 + j) % 6, 1);
  return a;
}

}  // namespace

TEST(Irreducible, Examples) {
  EXPECT_TRUE(is_irreducible(full2()));
  EXPECT_FALSE(is_irreducible(upper_pair()));
  EXPECT_TRUE(is_irreducible(star4()));
}

TEST(Period, Examples) {
  EXPECT_EQ(period(golden()), 1);
  EXPECT_EQ(period(star4()), 2);
  EXPECT_EQ(period(NonnegMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})), 3);
  EXPECT_EQ(period(cyclic3x2()), 3);
  EXPECT_THROW(period(upper_pair()), ReducibleMatrix);
}

TEST(Perron, FullShift) {
  const SpectralData sd = perron(full2());
  EXPECT_NEAR(sd.lambda, 2.0, 1e-12);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(sd.left[i] * sd.right[i], 0.5, 1e-12);
}

TEST(Perron, StarEigenvectors) {
  const SpectralData sd = perron(star4());
  const double r3 = std::sqrt(3.0);
  EXPECT_NEAR(sd.lambda, r3, 1e-10);
  EXPECT_EQ(sd.period, 2);
  // Right vector proportional to (sqrt3, 1, 1, 1), max entry 1.
  EXPECT_NEAR(sd.right[0], 1.0, 1e-12);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(sd.right[i], 1.0 / r3, 1e-10);
  // Symmetric matrix: U proportional to V, UV = 1.
  const double uv = std::inner_product(sd.left.begin(), sd.left.end(), sd.right.begin(), 0.0);
  EXPECT_NEAR(uv, 1.0, 1e-12);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(sd.left[i] / sd.right[i], sd.left[0] / sd.right[0], 1e-10);
}

TEST(Perron, GoldenMeanAgainstBisection) {
  const double root = bisect([](double x) { return x * x - x - 1.0; }, 1.0, 2.0);
  EXPECT_NEAR(perron(golden()).lambda, root, 1e-10);
}

TEST(Perron, ReducibleRejected) { EXPECT_THROW(perron(upper_pair()), ReducibleMatrix); }

TEST(Perron, ResidualsAndCharacteristicRootOnRandomMatrices) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const bool aperiodic = trial % 3 != 0;
    const NonnegMatrix a = random_irreducible(rng, n, aperiodic ? 0.35 : 0.0, aperiodic);
    const SpectralData sd = perron(a);
    EXPECT_LE(residual(a, sd.right, sd.lambda, false), 1e-9 * sd.lambda);
    EXPECT_LE(residual(a, sd.left, sd.lambda, true), 1e-9 * sd.lambda);
    EXPECT_NEAR(std::inner_product(sd.left.begin(), sd.left.end(), sd.right.begin(), 0.0), 1.0, 1e-9);
    for (int i = 0; i < n; ++i) {
      EXPECT_GT(sd.right[i], 0.0);
      EXPECT_GT(sd.left[i], 0.0);
    }
    EXPECT_NEAR(sd.lambda, largest_char_root(a), 1e-8) << a.to_string();
  }
}

TEST(Period, DividesSampledCycleLengths) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const NonnegMatrix a = random_irreducible(rng, 2 + static_cast<int>(rng() % 5), 0.15, trial % 2 == 0);
    const int p = period(a);
    for (int walk = 0; walk < 20; ++walk) {
      int v = 0;
      for (int len = 1; len <= 60; ++len) {
        std::vector<int> succ;
        for (int j = 0; j < a.dim(); ++j)
          if (!a(v, j).is_zero()) succ.push_back(j);
        v = succ[rng() % succ.size()];
        if (v == 0) EXPECT_EQ(len % p, 0);
      }
    }
  }
}

TEST(CyclicDecomposition, StarClasses) {
  const CyclicDecomposition cd = cyclic_decomposition(star4());
  ASSERT_EQ(cd.blocks.size(), 2u);
  EXPECT_EQ(cd.blocks[0], (std::vector<int>{0}));
  EXPECT_EQ(cd.blocks[1], (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(cd.block_matrices[0](0, 0), 3);
}

TEST(CyclicDecomposition, TwoCycleAndThreeClasses) {
  const CyclicDecomposition two = cyclic_decomposition(NonnegMatrix::from_rows({{0, 1}, {1, 0}}));
  EXPECT_EQ(two.blocks, (std::vector<std::vector<int>>{{0}, {1}}));
  const NonnegMatrix a = cyclic3x2();
  const CyclicDecomposition cd = cyclic_decomposition(a);
  ASSERT_EQ(cd.blocks.size(), 3u);
  for (const auto& b : cd.blocks) EXPECT_EQ(b.size(), 2u);
  // Zero except class c -> class c+1.
  std::vector<int> cls(6);
  for (int c = 0; c < 3; ++c)
    for (int v : cd.blocks[c]) cls[v] = c;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (!a(i, j).is_zero()) EXPECT_EQ(cls[j], (cls[i] + 1) % 3);
  for (const auto& b : cd.block_matrices) {
    EXPECT_TRUE(is_irreducible(b));
    EXPECT_EQ(period(b), 1);
  }
}

TEST(CyclicDecomposition, AperiodicGivesOneClass) {
  EXPECT_EQ(cyclic_decomposition(golden()).blocks.size(), 1u);
}

TEST(RotatedEigenvectors, StarSecondEigenvector) {
  const SpectralData sd = perron(star4());
  const RotatedPair rp = rotated_eigenvectors(star4(), sd, 2);
  EXPECT_NEAR(rp.eigenvalue.real(), -std::sqrt(3.0), 1e-10);
  EXPECT_NEAR(rp.eigenvalue.imag(), 0.0, 1e-10);
  const double scale = rp.right[0].real() / std::sqrt(3.0);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(rp.right[i].real(), -scale, 1e-10);
  EXPECT_LE(rp.residual, 1e-9);
  EXPECT_THROW(rotated_eigenvectors(star4(), sd, 3), InvalidArgument);
}

TEST(RotatedEigenvectors, TwoCycleAndThreeClassResiduals) {
  const NonnegMatrix c2 = NonnegMatrix::from_rows({{0, 1}, {1, 0}});
  const RotatedPair rp = rotated_eigenvectors(c2, perron(c2), 2);
  EXPECT_NEAR(rp.right[0].real(), -rp.right[1].real(), 1e-12);
  const NonnegMatrix a = cyclic3x2();
  const SpectralData sd = perron(a);
  for (int j = 2; j <= 3; ++j) EXPECT_LE(rotated_eigenvectors(a, sd, j).residual, 1e-9);
}

TEST(LimitMatrix, FullShiftAndGoldenMean) {
  const auto lm = limit_matrix(full2(), perron(full2()), LimitMode::Power);
  for (double x : lm) EXPECT_NEAR(x, 0.5, 1e-12);
  const SpectralData sd = perron(golden());
  EXPECT_LE(limit_deviation(golden(), sd, LimitMode::Power, 40), 1e-8);
  EXPECT_LT(limit_deviation(golden(), sd, LimitMode::Power, 20), limit_deviation(golden(), sd, LimitMode::Power, 10));
}

TEST(LimitMatrix, StarCesaro) {
  const SpectralData sd = perron(star4());
  const auto lm = limit_matrix(star4(), sd, LimitMode::Cesaro);
  EXPECT_NEAR(lm[0], 0.5, 1e-10);
  EXPECT_LE(limit_deviation(star4(), sd, LimitMode::Cesaro, 30), 1e-9);
  EXPECT_THROW(limit_matrix(star4(), sd, LimitMode::Power), InvalidArgument);
}

TEST(Stochasticize, StarVectorAndRow) {
  const Stochastic st = stochasticize(star4(), perron(star4()));
  const std::vector<double> p{0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(st.p[i], p[i], 1e-10);
  const std::vector<double> row{0, 1.0 / 3, 1.0 / 3, 1.0 / 3};
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(st.P[j], row[j], 1e-12);
}

TEST(Stochasticize, FullShiftAndGoldenMean) {
  const Stochastic f = stochasticize(full2(), perron(full2()));
  for (double x : f.P) EXPECT_NEAR(x, 0.5, 1e-12);
  // Stationary vector of the golden-mean chain, from the quadratic pP = p.
  const Stochastic g = stochasticize(golden(), perron(golden()));
  EXPECT_NEAR(g.p[0], (5.0 + std::sqrt(5.0)) / 10.0, 1e-10);
  // Long-window cross-check: fraction of 41-words whose middle symbol is 0.
  const NonnegMatrix a20 = mat_power(golden(), 20);
  const BigInt middle = col_sums(a20)[0] * row_sums(a20)[0];
  EXPECT_NEAR(g.p[0], to_double(Rational(middle, entry_sum(mat_power(golden(), 40)))), 1e-8);
}

TEST(Stochasticize, RowSumsAndStationarityOnRandomMatrices) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const NonnegMatrix a = random_irreducible(rng, n, 0.4, trial % 2 == 0);
    const Stochastic st = stochasticize(a, perron(a));
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += st.P[i * n + j];
      EXPECT_NEAR(row, 1.0, 1e-10);
      total += st.p[i];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += st.p[i] * st.P[i * n + j];
      EXPECT_NEAR(s, st.p[j], 1e-10);
    }
  }
}

TEST(BlockTriangularize, UpperPairHasNoDominantBlock) {
  const BlockTriangularForm t = block_triangularize(upper_pair());
  EXPECT_EQ(t.blocks.size(), 2u);
  EXPECT_FALSE(t.dominant_block_index.has_value());
  EXPECT_NEAR(t.rho, 1.0, 1e-12);
}

TEST(BlockTriangularize, IrreducibleIsOneDominantBlock) {
  const BlockTriangularForm t = block_triangularize(golden());
  ASSERT_EQ(t.blocks.size(), 1u);
  EXPECT_EQ(t.dominant_block_index, 0);
}

TEST(BlockTriangularize, GoldenBlockDominatesLoop) {
  const NonnegMatrix a = NonnegMatrix::from_rows({{1, 1, 1}, {1, 0, 0}, {0, 0, 1}});
  const BlockTriangularForm t = block_triangularize(a);
  ASSERT_TRUE(t.dominant_block_index.has_value());
  auto idx = t.blocks[*t.dominant_block_index].indices;
  std::sort(idx.begin(), idx.end());
  EXPECT_EQ(idx, (std::vector<int>{0, 1}));
  EXPECT_NEAR(t.rho, (1 + std::sqrt(5.0)) / 2, 1e-10);
  // Edges run forward in the block order.
  std::vector<int> block_of(3);
  for (std::size_t b = 0; b < t.blocks.size(); ++b)
    for (int v : t.blocks[b].indices) block_of[v] = static_cast<int>(b);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!a(i, j).is_zero()) EXPECT_LE(block_of[i], block_of[j]);
}
