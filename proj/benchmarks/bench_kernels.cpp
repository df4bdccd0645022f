#include "shiftlab/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace shiftlab;

kernels::Csr banded(int n) {
  std::vector<int> r, c;
  std::vector<double> v;
  for (int i = 0; i < n; ++i)
    for (int d = -2; d <= 2; ++d)
      if (i + d >= 0 && i + d < n) {
        r.push_back(i);
        c.push_back(i + d);
        v.push_back(1.0);
      }
  return kernels::Csr::from_triplets(n, n, r, c, v);
}

std::vector<BigInt> random_big(int dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<BigInt> out(static_cast<std::size_t>(dim) * dim);
  for (auto& x : out) {
    x = rng();
    x <<= 64;
    x += rng();
  }
  return out;
}

template <void (*Kernel)(const kernels::Csr&, const std::vector<double>&, std::vector<double>&)>
void BM_matvec(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const kernels::Csr a = banded(n);
  std::vector<double> x(n, 1.0), y(n);
  for (auto _ : state) {
    Kernel(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(a.val.size()));
}

template <void (*Kernel)(int, const std::vector<BigInt>&, const std::vector<BigInt>&, std::vector<BigInt>&)>
void BM_bigmul(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto a = random_big(dim, 1), b = random_big(dim, 2);
  std::vector<BigInt> c;
  for (auto _ : state) {
    Kernel(dim, a, b, c);
    benchmark::DoNotOptimize(c.data());
  }
}

BENCHMARK(BM_matvec<kernels::matvec_serial>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_matvec<kernels::matvec_parallel>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_bigmul<kernels::bigmul_serial>)->Arg(16)->Arg(48);
BENCHMARK(BM_bigmul<kernels::bigmul_parallel>)->Arg(16)->Arg(48);

}  // namespace

BENCHMARK_MAIN();
