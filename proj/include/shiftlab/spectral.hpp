#pragma once

#include "shiftlab/core.hpp"
#include "shiftlab/kernels.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace shiftlab {

struct PerronOptions {
  double tol = 1e-12;
  long max_iter = 1'000'000;
};

struct SpectralData {
  double lambda = 0.0;
  std::vector<double> right;  // max entry 1
  std::vector<double> left;   // scaled so left . right = 1
  int period = 1;
  // classes[0] contains vertex 0; edges run from classes[c] to classes[c+1 mod p].
  std::vector<std::vector<int>> classes;
  long iterations = 0;
  double residual_right = 0.0;
  double residual_left = 0.0;
};

struct CyclicDecomposition {
  std::vector<int> permutation;
  std::vector<std::vector<int>> blocks;
  std::vector<NonnegMatrix> block_matrices;  // A^p restricted to each block
};

struct TriangularBlock {
  std::vector<int> indices;
  bool zero = false;  // 1x1 zero block
  double rho = 0.0;
};

struct BlockTriangularForm {
  std::vector<int> permutation;
  std::vector<TriangularBlock> blocks;  // topological order: edges go forward only
  std::optional<int> dominant_block_index;
  double rho = 0.0;
};

bool is_irreducible(const NonnegMatrix& a);
// gcd of cycle lengths; requires irreducible input.
int period(const NonnegMatrix& a);
std::vector<std::vector<int>> cyclic_classes(const NonnegMatrix& a, int p);

SpectralData perron(const NonnegMatrix& a, const PerronOptions& opt = {});
// Sparse entry point shared with the countable truncations.
SpectralData perron_csr(const kernels::Csr& a, const PerronOptions& opt = {});

CyclicDecomposition cyclic_decomposition(const NonnegMatrix& a);

struct RotatedPair {
  std::complex<double> eigenvalue;
  std::vector<std::complex<double>> right;
  std::vector<std::complex<double>> left;
  double residual = 0.0;
};
// j in [2, p]: eigenvalue lambda * omega^(j-1), omega = exp(2 pi i / p).
RotatedPair rotated_eigenvectors(const NonnegMatrix& a, const SpectralData& sd, int j);

enum class LimitMode { Power, Cesaro };
std::vector<double> limit_matrix(const NonnegMatrix& a, const SpectralData& sd, LimitMode mode);
// max-norm distance between A^k/lambda^k (Cesaro: averaged over p shifts) and [v_i u_j].
double limit_deviation(const NonnegMatrix& a, const SpectralData& sd, LimitMode mode, long k);

struct Stochastic {
  std::vector<double> p;
  std::vector<double> P;  // row-major N x N
};
Stochastic stochasticize(const NonnegMatrix& a, const SpectralData& sd);

BlockTriangularForm block_triangularize(const NonnegMatrix& a, const PerronOptions& opt = {});

// Spectral radius of an arbitrary nonnegative matrix: max over strongly connected blocks.
double spectral_radius(const NonnegMatrix& a, const PerronOptions& opt = {});

}  // namespace shiftlab
