#include "shiftlab/sft.hpp"

#include "shiftlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace shiftlab {

SftSystem::SftSystem(NonnegMatrix a, Alphabet alphabet, PerronOptions opt) : state_(std::make_shared<State>()) {
  if (a.dim() <= 0) throw InvalidArgument("sft: empty matrix");
  if (!a.is_zero_one()) throw InvalidArgument("sft: matrix entries must be 0 or 1");
  if (alphabet.size() == 0) alphabet = Alphabet::numbered(a.dim());
  if (alphabet.size() != a.dim()) throw DimensionMismatch("sft: alphabet size differs from matrix dimension");
  state_->a = std::move(a);
  state_->alphabet = std::move(alphabet);
  state_->opt = opt;
}

bool SftSystem::irreducible() const {
  std::call_once(state_->irr_once, [&] { state_->irreducible = is_irreducible(state_->a); });
  return state_->irreducible;
}

const SpectralData& SftSystem::spectral() const {
  if (!irreducible()) throw ReducibleMatrix("sft: spectral data requires an irreducible matrix");
  std::call_once(state_->spec_once,
                 [&] { state_->spectral = std::make_unique<SpectralData>(perron(state_->a, state_->opt)); });
  return *state_->spectral;
}

const BlockTriangularForm& SftSystem::triangular() const {
  std::call_once(state_->tri_once, [&] {
    state_->triangular = std::make_unique<BlockTriangularForm>(block_triangularize(state_->a, state_->opt));
  });
  return *state_->triangular;
}

const CyclicDecomposition& SftSystem::cyclic() const {
  std::call_once(state_->cyc_once,
                 [&] { state_->cyclic = std::make_unique<CyclicDecomposition>(cyclic_decomposition(state_->a)); });
  return *state_->cyclic;
}

const NonnegMatrix& SftSystem::power(std::uint64_t n) const {
  std::lock_guard<std::mutex> lock(state_->power_mu);
  auto& slot = state_->powers[n];
  if (!slot) {
    auto below = state_->powers.lower_bound(n);
    if (below != state_->powers.begin()) {
      --below;
      if (below->second) {
        slot = std::make_unique<NonnegMatrix>(mat_mul(*below->second, mat_power(state_->a, n - below->first)));
        return *slot;
      }
    }
    slot = std::make_unique<NonnegMatrix>(mat_power(state_->a, n));
  }
  return *slot;
}

namespace {

void check_word(const SftSystem& sys, const Word& w) {
  if (w.empty()) throw InvalidArgument("word must be nonempty");
  for (int s : w)
    if (s < 0 || s >= sys.size()) throw InvalidArgument("symbol out of range");
}

MeasureResult inadmissible(const Word& w, MeasureMethod m) {
  MeasureResult r;
  r.word = w;
  r.value = 0.0;
  r.method = m;
  r.admissible = false;
  r.exact = Rational(0);
  return r;
}

BigInt col_sum_at(const NonnegMatrix& m, int j) {
  BigInt s = 0;
  for (int i = 0; i < m.dim(); ++i) s += m(i, j);
  return s;
}

BigInt row_sum_at(const NonnegMatrix& m, int i) {
  BigInt s = 0;
  for (int j = 0; j < m.dim(); ++j) s += m(i, j);
  return s;
}

}  // namespace

bool is_admissible(const SftSystem& sys, const Word& w) {
  check_word(sys, w);
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (sys.matrix()(w[i], w[i + 1]).is_zero()) return false;
  return true;
}

BigInt path_weight(const SftSystem& sys, const Word& w) {
  check_word(sys, w);
  BigInt p = 1;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) p *= sys.matrix()(w[i], w[i + 1]);
  return p;
}

MeasureResult parry_measure(const SftSystem& sys, const Word& w) {
  check_word(sys, w);
  if (!is_admissible(sys, w)) return inadmissible(w, MeasureMethod::ClosedForm);
  const auto& sd = sys.spectral();
  const double n = static_cast<double>(w.size());
  MeasureResult r;
  r.word = w;
  r.method = MeasureMethod::ClosedForm;
  r.value = sd.left[w.front()] * sd.right[w.back()] / std::pow(sd.lambda, n - 1.0);
  return r;
}

BigInt cylinder_count(const SftSystem& sys, const Word& w, long k, long l) {
  check_word(sys, w);
  if (k < 0 || l < 0) throw InvalidArgument("cylinder margins must be nonnegative");
  const BigInt inner = path_weight(sys, w);
  if (inner.is_zero()) return 0;
  return col_sum_at(sys.power(static_cast<std::uint64_t>(k)), w.front()) * inner *
         row_sum_at(sys.power(static_cast<std::uint64_t>(l)), w.back());
}

Rational natural_measure_ratio(const SftSystem& sys, const Word& w, long k, long l) {
  const BigInt c = cylinder_count(sys, w, k, l);
  const BigInt b = entry_sum(sys.power(static_cast<std::uint64_t>(static_cast<long>(w.size()) + k + l - 1)));
  return b.is_zero() ? Rational(0) : Rational(c, b);
}

Rational averaged_ratio(const SftSystem& sys, const Word& w, long k, long l, int p) {
  if (p < 1 || k < p - 1) throw InvalidArgument("averaged_ratio: need k >= p - 1");
  BigInt c = 0;
  for (int j = 0; j < p; ++j) c += cylinder_count(sys, w, k - j, l + j);
  const BigInt b = entry_sum(sys.power(static_cast<std::uint64_t>(static_cast<long>(w.size()) + k + l - 1)));
  return b.is_zero() ? Rational(0) : Rational(c, b * p);
}

MeasureResult natural_measure(const SftSystem& sys, const Word& w, const LimitOptions& opt) {
  check_word(sys, w);
  if (!sys.irreducible()) throw ReducibleMatrix("natural_measure: matrix is reducible; use reducible_natural_measure");
  const int p = sys.spectral().period;
  MeasureResult r;
  r.word = w;
  r.method = p == 1 ? MeasureMethod::Limit : MeasureMethod::PeriodicLimit;
  if (!is_admissible(sys, w)) return inadmissible(w, r.method);
  std::optional<Rational> prev;
  for (long k = std::max<long>(opt.first_window, p); k <= opt.max_window; k *= 2) {
    Rational q = averaged_ratio(sys, w, k, k, p);
    r.diagnostics.push_back({k, k, to_double(q)});
    if (prev && std::abs(to_double(q) - to_double(*prev)) < opt.tol) {
      r.exact = q;
      r.value = to_double(q);
      const double closed = parry_measure(sys, w).value;
      if (std::abs(r.value - closed) > 10.0 * opt.tol + 1e-12)
        throw Error("natural_measure: limit " + std::to_string(r.value) + " disagrees with closed form " +
                    std::to_string(closed));
      return r;
    }
    prev = q;
  }
  throw NotConverged("natural_measure: window ratios did not settle within max_window " +
                     std::to_string(opt.max_window) + " (last " +
                     (r.diagnostics.empty() ? std::string("n/a") : std::to_string(r.diagnostics.back().ratio)) + ")");
}

MeasureResult reducible_natural_measure(const SftSystem& sys, const Word& w) {
  check_word(sys, w);
  MeasureResult r;
  r.word = w;
  r.method = MeasureMethod::ClosedForm;
  if (!is_admissible(sys, w)) return inadmissible(w, r.method);
  const auto& tri = sys.triangular();
  if (!tri.dominant_block_index)
    throw NoNaturalMeasure(
        "no diagonal block strictly dominates the spectral radius; finite window averages do not converge "
        "(shift_averaged_measure gives a non-ergodic substitute)");
  const auto& block = tri.blocks[*tri.dominant_block_index].indices;
  std::vector<int> local(sys.size(), -1);
  for (std::size_t i = 0; i < block.size(); ++i) local[block[i]] = static_cast<int>(i);
  for (int s : w)
    if (local[s] < 0) {
      r.value = 0.0;
      r.exact = Rational(0);
      return r;
    }
  const NonnegMatrix sub = sys.matrix().submatrix(block);
  const SpectralData sd = perron(sub);
  r.value = sd.left[local[w.front()]] * sd.right[local[w.back()]] /
            std::pow(sd.lambda, static_cast<double>(w.size()) - 1.0);
  return r;
}

Rational shift_averaged_ratio(const SftSystem& sys, const Word& w, long k, long l) {
  check_word(sys, w);
  if (k < 0 || l < 0) throw InvalidArgument("shift_averaged_ratio: margins must be nonnegative");
  const BigInt inner = path_weight(sys, w);
  if (inner.is_zero()) return 0;
  const int n = sys.size();
  const long m = k + l;
  // c[t] = column sums of A^t, r[t] = row sums of A^t
  std::vector<std::vector<BigInt>> c(m + 1), rs(m + 1);
  c[0].assign(n, BigInt(1));
  rs[0].assign(n, BigInt(1));
  const auto& a = sys.matrix();
  for (long t = 1; t <= m; ++t) {
    c[t].assign(n, BigInt(0));
    rs[t].assign(n, BigInt(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!a(i, j).is_zero()) {
          c[t][j] += c[t - 1][i];
          rs[t][i] += rs[t - 1][j];
        }
  }
  BigInt num = 0;
  for (long j = -l; j <= k; ++j) num += c[k - j][w.front()] * rs[l + j][w.back()];
  num *= inner;
  const BigInt b = entry_sum(sys.power(static_cast<std::uint64_t>(static_cast<long>(w.size()) + m - 1)));
  return b.is_zero() ? Rational(0) : Rational(num, b * (m + 1));
}

double shift_averaged_measure(const SftSystem& sys, const Word& w, long k, long l) {
  return to_double(shift_averaged_ratio(sys, w, k, l));
}

Rational periodic_ratio(const SftSystem& sys, const Word& w, long k, long l) {
  check_word(sys, w);
  if (k < 0 || l < 0 || k + l < 1) throw InvalidArgument("periodic_ratio: need k, l >= 0 and k + l >= 1");
  const BigInt inner = path_weight(sys, w);
  const BigInt den = trace(sys.power(static_cast<std::uint64_t>(static_cast<long>(w.size()) + k + l - 1)));
  if (den.is_zero()) return 0;
  const BigInt num = inner * sys.power(static_cast<std::uint64_t>(k + l))(w.back(), w.front());
  return Rational(num, den);
}

MeasureResult periodic_natural_measure(const SftSystem& sys, const Word& w, const LimitOptions& opt) {
  check_word(sys, w);
  if (!sys.irreducible()) throw ReducibleMatrix("periodic_natural_measure: matrix is reducible");
  const int p = sys.spectral().period;
  MeasureResult r;
  r.word = w;
  r.method = MeasureMethod::PeriodicLimit;
  if (!is_admissible(sys, w)) return inadmissible(w, r.method);
  const long n = static_cast<long>(w.size());
  std::optional<double> prev;
  for (long k = std::max<long>(opt.first_window, p); k <= opt.max_window; k *= 2) {
    // l chosen so that the period n+k+l-1 is a multiple of p
    const long l = k + ((p - (n + 2 * k - 1) % p) % p);
    // every shifted window C^{(p)}_{k-j,l+j} has the same count, so the p-average is one term
    Rational q = periodic_ratio(sys, w, k, l);
    const double v = to_double(q);
    r.diagnostics.push_back({k, l, v});
    if (prev && std::abs(v - *prev) < opt.tol) {
      r.exact = q;
      r.value = v;
      const double closed = parry_measure(sys, w).value;
      if (std::abs(v - closed) > 10.0 * opt.tol + 1e-12)
        throw Error("periodic_natural_measure: limit disagrees with closed form");
      return r;
    }
    prev = v;
  }
  throw NotConverged("periodic_natural_measure: ratios did not settle within max_window " +
                     std::to_string(opt.max_window));
}

double entropy(const SftSystem& sys) { return std::log(sys.spectral().lambda); }

double measure_entropy_partial(const SftSystem& sys, int n) {
  if (n < 1) throw InvalidArgument("measure_entropy_partial: n must be >= 1");
  double h = 0.0;
  for (const auto& w : enumerate_words(SystemHandle::sft(sys.matrix()), n)) {
    const double mu = parry_measure(sys, w).value;
    if (mu > 0.0) h -= mu * std::log(mu);
  }
  return h / n;
}

Word sample_orbit(const SftSystem& sys, std::size_t length, std::uint64_t seed) {
  const auto st = stochasticize(sys.matrix(), sys.spectral());
  const int n = sys.size();
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto draw = [&](const double* probs) {
    const double u = uniform();
    double acc = 0.0;
    int last = -1;
    for (int i = 0; i < n; ++i) {
      if (probs[i] <= 0.0) continue;
      acc += probs[i];
      last = i;
      if (u < acc) return i;
    }
    return last;
  };
  Word out;
  out.reserve(length);
  if (length == 0) return out;
  out.push_back(draw(st.p.data()));
  while (out.size() < length) out.push_back(draw(st.P.data() + static_cast<std::size_t>(out.back()) * n));
  return out;
}

double mixing_defect(const SftSystem& sys, const Word& w1, const Word& w2, long gap) {
  if (gap < 0) throw InvalidArgument("mixing_defect: gap must be nonnegative");
  const auto& sd = sys.spectral();
  const double m1 = parry_measure(sys, w1).value;
  const double m2 = parry_measure(sys, w2).value;
  const BigInt inner = path_weight(sys, w1) * path_weight(sys, w2);
  double joint = 0.0;
  if (!inner.is_zero()) {
    const BigInt bridge = sys.power(static_cast<std::uint64_t>(gap + 1))(w2.back(), w1.front());
    const long total = static_cast<long>(w1.size() + w2.size()) + gap;
    if (!bridge.is_zero())
      joint = sd.left[w2.front()] * sd.right[w1.back()] * scaled_ratio(bridge * inner, sd.lambda, total - 1);
  }
  return std::abs(joint - m1 * m2);
}

SftUniformBounds sft_uniform_bounds(const SftSystem& sys) {
  const auto& sd = sys.spectral();
  double lo = INFINITY, hi = 0.0;
  for (int i = 0; i < sys.size(); ++i)
    for (int j = 0; j < sys.size(); ++j) {
      lo = std::min(lo, sd.left[i] * sd.right[j]);
      hi = std::max(hi, sd.left[i] * sd.right[j]);
    }
  // mu(w) = lambda * u_i v_j / lambda^n
  return {sd.lambda * lo, sd.lambda * hi};
}

}  // namespace shiftlab
