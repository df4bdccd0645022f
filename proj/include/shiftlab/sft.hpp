#pragma once

#include "shiftlab/core.hpp"
#include "shiftlab/spectral.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>

namespace shiftlab {

// Shift of finite type given by a 0-1 matrix. Spectral data and matrix powers
// are computed lazily, once, and shared read-only between copies.
class SftSystem {
 public:
  explicit SftSystem(NonnegMatrix a, Alphabet alphabet = {}, PerronOptions opt = {});

  const NonnegMatrix& matrix() const { return state_->a; }
  const Alphabet& alphabet() const { return state_->alphabet; }
  int size() const { return state_->a.dim(); }
  bool irreducible() const;
  const SpectralData& spectral() const;
  const BlockTriangularForm& triangular() const;
  const CyclicDecomposition& cyclic() const;
  // Exact A^n, cached.
  const NonnegMatrix& power(std::uint64_t n) const;

 private:
  struct State {
    NonnegMatrix a;
    Alphabet alphabet;
    PerronOptions opt;
    std::once_flag irr_once, spec_once, tri_once, cyc_once;
    bool irreducible = false;
    std::unique_ptr<SpectralData> spectral;
    std::unique_ptr<BlockTriangularForm> triangular;
    std::unique_ptr<CyclicDecomposition> cyclic;
    std::mutex power_mu;
    std::map<std::uint64_t, std::unique_ptr<NonnegMatrix>> powers;
  };
  std::shared_ptr<State> state_;
};

bool is_admissible(const SftSystem& sys, const Word& w);
BigInt path_weight(const SftSystem& sys, const Word& w);

MeasureResult parry_measure(const SftSystem& sys, const Word& w);
// |C_{k,l}(w)| and |B_{n+k+l}|, exact.
BigInt cylinder_count(const SftSystem& sys, const Word& w, long k, long l);
Rational natural_measure_ratio(const SftSystem& sys, const Word& w, long k, long l);
// Averages the p shifted windows C_{k-j,l+j}, j = 0..p-1.
Rational averaged_ratio(const SftSystem& sys, const Word& w, long k, long l, int p);

struct LimitOptions {
  double tol = 1e-9;
  long max_window = 1024;
  long first_window = 8;
};
MeasureResult natural_measure(const SftSystem& sys, const Word& w, const LimitOptions& opt = {});
MeasureResult reducible_natural_measure(const SftSystem& sys, const Word& w);
Rational shift_averaged_ratio(const SftSystem& sys, const Word& w, long k, long l);
double shift_averaged_measure(const SftSystem& sys, const Word& w, long k, long l);
// |C^{(p)}_{k,l}(w)| = prod a * (A^{k+l})_{i_n,i_1}; denominator tr(A^{n+k+l-1}).
Rational periodic_ratio(const SftSystem& sys, const Word& w, long k, long l);
MeasureResult periodic_natural_measure(const SftSystem& sys, const Word& w, const LimitOptions& opt = {});

double entropy(const SftSystem& sys);
double measure_entropy_partial(const SftSystem& sys, int n);

Word sample_orbit(const SftSystem& sys, std::size_t length, std::uint64_t seed);

// |mu(w2 . gap . w1) - mu(w1) mu(w2)| with `gap` free symbols between the two cylinders.
double mixing_defect(const SftSystem& sys, const Word& w1, const Word& w2, long gap);

struct SftUniformBounds {
  double alpha = 0.0;
  double beta = 0.0;
};
// alpha/lambda^n <= mu(w) <= beta/lambda^n for every admissible n-word.
SftUniformBounds sft_uniform_bounds(const SftSystem& sys);

}  // namespace shiftlab
