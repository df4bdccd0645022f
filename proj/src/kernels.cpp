#include "shiftlab/kernels.hpp"

#include <algorithm>
#include <numeric>

namespace shiftlab::kernels {

Csr Csr::from_dense(const NonnegMatrix& a) {
  Csr m;
  m.rows = m.cols = a.dim();
  m.row_start.assign(m.rows + 1, 0);
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      if (!a(i, j).is_zero()) {
        m.col.push_back(j);
        m.val.push_back(to_double(a(i, j)));
      }
    }
    m.row_start[i + 1] = static_cast<int>(m.col.size());
  }
  return m;
}

Csr Csr::from_triplets(int rows, int cols, std::vector<int> r, std::vector<int> c, std::vector<double> v) {
  std::vector<std::size_t> order(r.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return std::pair(r[x], c[x]) < std::pair(r[y], c[y]); });
  Csr m;
  m.rows = rows;
  m.cols = cols;
  m.row_start.assign(rows + 1, 0);
  int last_r = -1, last_c = -1;
  for (std::size_t idx : order) {
    if (r[idx] == last_r && c[idx] == last_c) {
      m.val.back() += v[idx];
      continue;
    }
    m.col.push_back(c[idx]);
    m.val.push_back(v[idx]);
    ++m.row_start[r[idx] + 1];
    last_r = r[idx];
    last_c = c[idx];
  }
  for (int i = 0; i < rows; ++i) m.row_start[i + 1] += m.row_start[i];
  return m;
}

Csr Csr::transposed() const {
  std::vector<int> r, c;
  std::vector<double> v;
  for (int i = 0; i < rows; ++i) {
    for (int e = row_start[i]; e < row_start[i + 1]; ++e) {
      r.push_back(col[e]);
      c.push_back(i);
      v.push_back(val[e]);
    }
  }
  return from_triplets(cols, rows, std::move(r), std::move(c), std::move(v));
}

void matvec_serial(const Csr& a, const std::vector<double>& x, std::vector<double>& y) {
  y.assign(a.rows, 0.0);
  for (int i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (int e = a.row_start[i]; e < a.row_start[i + 1]; ++e) s += a.val[e] * x[a.col[e]];
    y[i] = s;
  }
}

void matvec_parallel(const Csr& a, const std::vector<double>& x, std::vector<double>& y) {
  y.assign(a.rows, 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (int e = a.row_start[i]; e < a.row_start[i + 1]; ++e) s += a.val[e] * x[a.col[e]];
    y[i] = s;
  }
}

namespace {

void bigmul_row(int dim, int i, const std::vector<BigInt>& a, const std::vector<BigInt>& b, std::vector<BigInt>& c) {
  const std::size_t n = static_cast<std::size_t>(dim);
  for (std::size_t j = 0; j < n; ++j) c[i * n + j] = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const BigInt& aik = a[i * n + k];
    if (aik.is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const BigInt& bkj = b[k * n + j];
      if (!bkj.is_zero()) c[i * n + j] += aik * bkj;
    }
  }
}

}  // namespace

void bigmul_serial(int dim, const std::vector<BigInt>& a, const std::vector<BigInt>& b, std::vector<BigInt>& c) {
  c.assign(static_cast<std::size_t>(dim) * dim, BigInt(0));
  for (int i = 0; i < dim; ++i) bigmul_row(dim, i, a, b, c);
}

void bigmul_parallel(int dim, const std::vector<BigInt>& a, const std::vector<BigInt>& b, std::vector<BigInt>& c) {
  c.assign(static_cast<std::size_t>(dim) * dim, BigInt(0));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < dim; ++i) bigmul_row(dim, i, a, b, c);
}

}  // namespace shiftlab::kernels
