#pragma once

#include "shiftlab/core.hpp"

#include <vector>

// Hot loops, each with a serial reference and an OpenMP version. The parallel
// versions partition by output row, so results are bitwise identical to the
// serial ones regardless of thread count.
namespace shiftlab::kernels {

struct Csr {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_start;  // size rows+1
  std::vector<int> col;
  std::vector<double> val;

  static Csr from_dense(const NonnegMatrix& a);
  static Csr from_triplets(int rows, int cols, std::vector<int> r, std::vector<int> c, std::vector<double> v);
  Csr transposed() const;
};

void matvec_serial(const Csr& a, const std::vector<double>& x, std::vector<double>& y);
void matvec_parallel(const Csr& a, const std::vector<double>& x, std::vector<double>& y);

// c = a * b for dense dim x dim big-integer matrices stored row-major.
void bigmul_serial(int dim, const std::vector<BigInt>& a, const std::vector<BigInt>& b, std::vector<BigInt>& c);
void bigmul_parallel(int dim, const std::vector<BigInt>& a, const std::vector<BigInt>& b, std::vector<BigInt>& c);

// Rows above this size use the parallel kernels from library code.
inline constexpr int kParallelThreshold = 64;

}  // namespace shiftlab::kernels
