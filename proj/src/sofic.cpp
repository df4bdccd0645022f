#include "shiftlab/sofic.hpp"

#include "shiftlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace shiftlab {

namespace {

constexpr int kMaxSubsetVertices = 20;

// succ[v * K + s] = target of the unique s-edge out of v, or -1.
std::vector<int> successor_table(const LabeledGraph& g) {
  const int k = g.alphabet.size();
  std::vector<int> succ(static_cast<std::size_t>(g.vertices) * k, -1);
  for (const auto& e : g.edges) {
    int& slot = succ[static_cast<std::size_t>(e.from) * k + e.label];
    if (slot != -1) throw NotRightResolving("vertex " + std::to_string(e.from) + " has two out-edges labeled " +
                                            g.alphabet.token(e.label));
    slot = e.to;
  }
  return succ;
}

void require_right_resolving(const LabeledGraph& g) {
  g.validate();
  if (!is_right_resolving(g)) throw NotRightResolving("presentation is not right-resolving");
}

void check_word(const LabeledGraph& g, const Word& w) {
  if (w.empty()) throw InvalidArgument("word must be nonempty");
  for (int s : w)
    if (s < 0 || s >= g.alphabet.size()) throw InvalidArgument("symbol out of range");
}

NonnegMatrix require_irreducible(const LabeledGraph& g) {
  NonnegMatrix a = g.adjacency();
  if (!is_irreducible(a)) throw ReducibleMatrix("presentation graph is reducible");
  return a;
}

MeasureResult inadmissible(const Word& w, MeasureMethod m) {
  MeasureResult r;
  r.word = w;
  r.method = m;
  r.admissible = false;
  r.exact = Rational(0);
  return r;
}

// Subset-indexed vector, layer[k][index] for 1 <= k <= N.
using Layer = std::vector<std::vector<BigInt>>;

Layer signed_start(const SubsetMatrices& sm) {
  Layer x(sm.vertices() + 1);
  for (int k = 1; k <= sm.vertices(); ++k) x[k].assign(sm.subsets(k).size(), BigInt(k % 2 == 1 ? 1 : -1));
  return x;
}

Layer advance(const SubsetMatrices& sm, const Layer& x, int symbol, bool diagonal_only) {
  Layer y(x.size());
  for (int k = 1; k <= sm.vertices(); ++k) y[k].assign(sm.subsets(k).size(), BigInt(0));
  const int s_lo = symbol < 0 ? 0 : symbol;
  const int s_hi = symbol < 0 ? sm.symbols() : symbol + 1;
  for (int k = 1; k <= sm.vertices(); ++k)
    for (std::size_t i = 0; i < x[k].size(); ++i) {
      if (x[k][i].is_zero()) continue;
      for (int s = s_lo; s < s_hi; ++s) {
        const auto& t = sm.step(k, static_cast<int>(i), s);
        if (t.size == 0 || (diagonal_only && t.size != k)) continue;
        y[t.size][t.index] += x[k][i];
      }
    }
  return y;
}

BigInt layer_sum(const Layer& x) {
  BigInt s = 0;
  for (const auto& v : x)
    for (const auto& e : v) s += e;
  return s;
}

BigInt subset_census(const LabeledGraph& g, const Word& w, long k, long l, bool diagonal_only) {
  require_right_resolving(g);
  const SubsetMatrices sm(g);
  Layer x = signed_start(sm);
  for (long t = 0; t < k; ++t) x = advance(sm, x, -1, diagonal_only);
  for (int s : w) x = advance(sm, x, s, diagonal_only);
  for (long t = 0; t < l; ++t) x = advance(sm, x, -1, diagonal_only);
  return layer_sum(x);
}

SignedMatrix signed_zero(int dim) { return {dim, std::vector<BigInt>(static_cast<std::size_t>(dim) * dim, BigInt(0))}; }

SignedMatrix signed_identity(int dim) {
  SignedMatrix m = signed_zero(dim);
  for (int i = 0; i < dim; ++i) m.data[static_cast<std::size_t>(i) * dim + i] = 1;
  return m;
}

SignedMatrix signed_power(SignedMatrix base, std::uint64_t n) {
  SignedMatrix r = signed_identity(base.dim);
  while (n > 0) {
    if (n & 1U) r = signed_mul(r, base);
    n >>= 1U;
    if (n > 0) base = signed_mul(base, base);
  }
  return r;
}

std::vector<BigInt> ones_times_power(const NonnegMatrix& a, long k) {
  const int n = a.dim();
  std::vector<BigInt> x(n, BigInt(1));
  for (long t = 0; t < k; ++t) {
    std::vector<BigInt> y(n, BigInt(0));
    for (int i = 0; i < n; ++i)
      if (!x[i].is_zero())
        for (int j = 0; j < n; ++j)
          if (!a(i, j).is_zero()) y[j] += x[i] * a(i, j);
    x = std::move(y);
  }
  return x;
}

std::vector<BigInt> power_times_ones(const NonnegMatrix& a, long l) {
  const int n = a.dim();
  std::vector<BigInt> x(n, BigInt(1));
  for (long t = 0; t < l; ++t) {
    std::vector<BigInt> y(n, BigInt(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!a(i, j).is_zero()) y[i] += a(i, j) * x[j];
    x = std::move(y);
  }
  return x;
}

// |A^k A_w A^l|
BigInt edge_cylinder(const NonnegMatrix& a, const LetterMatrices& lm, const Word& w, long k, long l) {
  std::vector<BigInt> x = ones_times_power(a, k);
  const int n = a.dim();
  for (int s : w) {
    std::vector<BigInt> y(n, BigInt(0));
    const auto& m = lm.per_symbol[s];
    for (int i = 0; i < n; ++i)
      if (!x[i].is_zero())
        for (int j = 0; j < n; ++j)
          if (!m(i, j).is_zero()) y[j] += x[i] * m(i, j);
    x = std::move(y);
  }
  const std::vector<BigInt> r = power_times_ones(a, l);
  BigInt s = 0;
  for (int i = 0; i < n; ++i) s += x[i] * r[i];
  return s;
}

double closed_form_value(const LetterMatrices& lm, const SpectralData& sd, const Word& w) {
  const int n = lm.total.dim();
  std::vector<double> x = sd.left;
  for (int s : w) {
    std::vector<double> y(n, 0.0);
    const auto& m = lm.per_symbol[s];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!m(i, j).is_zero()) y[j] += x[i];
    x = std::move(y);
  }
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += x[i] * sd.right[i];
  return s / std::pow(sd.lambda, static_cast<double>(w.size()));
}

std::string last_ratio(const MeasureResult& r) {
  return r.diagnostics.empty() ? std::string("n/a") : std::to_string(r.diagnostics.back().ratio);
}

}  // namespace

bool is_right_resolving(const LabeledGraph& g) {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : g.edges)
    if (!seen.insert({e.from, e.label}).second) return false;
  return true;
}

bool is_left_resolving(const LabeledGraph& g) {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : g.edges)
    if (!seen.insert({e.to, e.label}).second) return false;
  return true;
}

LetterMatrices letter_matrices(const LabeledGraph& g) {
  g.validate();
  LetterMatrices lm;
  lm.per_symbol.assign(g.alphabet.size(), NonnegMatrix(g.vertices));
  lm.total = NonnegMatrix(g.vertices);
  for (const auto& e : g.edges) {
    lm.per_symbol[e.label].add(e.from, e.to, 1);
    lm.total.add(e.from, e.to, 1);
  }
  return lm;
}

SubsetMatrices::SubsetMatrices(const LabeledGraph& g) : n_(g.vertices), symbols_(g.alphabet.size()) {
  require_right_resolving(g);
  if (n_ > kMaxSubsetVertices)
    throw InvalidArgument("subset construction limited to " + std::to_string(kMaxSubsetVertices) + " vertices");
  const std::vector<int> succ = successor_table(g);
  subsets_.resize(n_ + 1);
  step_.resize(n_ + 1);
  std::vector<std::pair<int, int>> where(std::size_t{1} << n_, {0, -1});
  for (int k = 1; k <= n_; ++k) {
    // lexicographic k-combinations of 0..N-1
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    while (true) {
      unsigned mask = 0;
      for (int v : c) mask |= 1U << v;
      where[mask] = {k, static_cast<int>(subsets_[k].size())};
      subsets_[k].push_back(c);
      int i = k - 1;
      while (i >= 0 && c[i] == n_ - k + i) --i;
      if (i < 0) break;
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
  }
  for (int k = 1; k <= n_; ++k) {
    step_[k].resize(subsets_[k].size() * symbols_);
    for (std::size_t idx = 0; idx < subsets_[k].size(); ++idx) {
      const auto& members = subsets_[k][idx];
      for (int s = 0; s < symbols_; ++s) {
        std::vector<int> image;
        image.reserve(k);
        bool defined = true;
        for (int v : members) {
          const int t = succ[static_cast<std::size_t>(v) * symbols_ + s];
          if (t < 0) {
            defined = false;
            break;
          }
          image.push_back(t);
        }
        if (!defined) continue;
        unsigned mask = 0;
        for (int t : image) mask |= 1U << t;
        Target& tg = step_[k][idx * symbols_ + s];
        tg.size = where[mask].first;
        tg.index = where[mask].second;
        if (tg.size < k) {
          tg.parity = 0;
        } else {
          int inversions = 0;
          for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
              if (image[i] > image[j]) ++inversions;
          tg.parity = inversions % 2 == 0 ? 1 : -1;
        }
      }
    }
  }
}

std::vector<std::vector<int>> SubsetMatrices::block(int k, int l, int symbol) const {
  if (k < 1 || k > n_ || l < 1 || l > n_) throw InvalidArgument("subset block index out of range");
  std::vector<std::vector<int>> m(subsets_[k].size(), std::vector<int>(subsets_[l].size(), 0));
  for (std::size_t i = 0; i < subsets_[k].size(); ++i)
    for (int s = 0; s < symbols_; ++s) {
      if (symbol >= 0 && s != symbol) continue;
      const auto& t = step(k, static_cast<int>(i), s);
      if (t.size == l) m[i][t.index] += 1;
    }
  return m;
}

NonnegMatrix SubsetMatrices::diagonal_block(int k) const {
  const auto b = block(k, k);
  NonnegMatrix m(static_cast<int>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[i][j] != 0) m.set(static_cast<int>(i), static_cast<int>(j), b[i][j]);
  return m;
}

SignedMatrix signed_mul(const SignedMatrix& a, const SignedMatrix& b) {
  if (a.dim != b.dim) throw DimensionMismatch("signed_mul: dimension mismatch");
  const int n = a.dim;
  SignedMatrix c = signed_zero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const BigInt& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!b(k, j).is_zero()) c.data[static_cast<std::size_t>(i) * n + j] += x * b(k, j);
    }
  return c;
}

BigInt signed_trace(const SignedMatrix& a) {
  BigInt t = 0;
  for (int i = 0; i < a.dim; ++i) t += a(i, i);
  return t;
}

SignedMatrices signed_matrices(const LabeledGraph& g) {
  const SubsetMatrices sm(g);
  SignedMatrices out;
  for (int j = 1; j <= sm.vertices(); ++j) {
    const int dim = static_cast<int>(sm.subsets(j).size());
    SignedMatrix total = signed_zero(dim);
    std::vector<SignedMatrix> per(sm.symbols(), signed_zero(dim));
    for (int i = 0; i < dim; ++i)
      for (int s = 0; s < sm.symbols(); ++s) {
        const auto& t = sm.step(j, i, s);
        if (t.size != j) continue;
        const std::size_t at = static_cast<std::size_t>(i) * dim + t.index;
        total.data[at] += t.parity;
        per[s].data[at] += t.parity;
      }
    out.total.push_back(std::move(total));
    out.per_symbol.push_back(std::move(per));
  }
  return out;
}

BigInt count_words(const LabeledGraph& g, int n) {
  if (n < 1) throw InvalidArgument("count_words: n must be >= 1");
  return subset_census(g, {}, n, 0, false);
}

BigInt count_words_diagonal(const LabeledGraph& g, int n) {
  if (n < 1) throw InvalidArgument("count_words_diagonal: n must be >= 1");
  return subset_census(g, {}, n, 0, true);
}

BigInt count_cylinder(const LabeledGraph& g, const Word& w, long k, long l) {
  check_word(g, w);
  if (k < 0 || l < 0) throw InvalidArgument("cylinder margins must be nonnegative");
  return subset_census(g, w, k, l, false);
}

BigInt count_periodic(const LabeledGraph& g, int n) {
  if (n < 1) throw InvalidArgument("count_periodic: n must be >= 1");
  const SignedMatrices sg = signed_matrices(g);
  BigInt c = 0;
  for (std::size_t j = 0; j < sg.total.size(); ++j) {
    const BigInt t = signed_trace(signed_power(sg.total[j], static_cast<std::uint64_t>(n)));
    c += (j % 2 == 0) ? t : BigInt(-t);
  }
  return c;
}

BigInt count_periodic_cylinder(const LabeledGraph& g, const Word& w, long k, long l) {
  check_word(g, w);
  if (k < 0 || l < 0 || k + l < 1) throw InvalidArgument("periodic cylinder: need k, l >= 0 and k + l >= 1");
  const SignedMatrices sg = signed_matrices(g);
  BigInt c = 0;
  for (std::size_t j = 0; j < sg.total.size(); ++j) {
    SignedMatrix m = signed_identity(sg.total[j].dim);
    for (int s : w) m = signed_mul(m, sg.per_symbol[j][s]);
    m = signed_mul(m, signed_power(sg.total[j], static_cast<std::uint64_t>(k + l - 1)));
    const BigInt t = signed_trace(m);
    c += (j % 2 == 0) ? t : BigInt(-t);
  }
  return c;
}

bool is_admissible(const LabeledGraph& g, const Word& w) {
  check_word(g, w);
  require_right_resolving(g);
  const std::vector<int> succ = successor_table(g);
  const int k = g.alphabet.size();
  // right-resolving: A_w != 0 iff some start vertex follows w
  for (int v = 0; v < g.vertices; ++v) {
    int at = v;
    for (int s : w) {
      at = succ[static_cast<std::size_t>(at) * k + s];
      if (at < 0) break;
    }
    if (at >= 0) return true;
  }
  return false;
}

MeasureResult natural_measure(const LabeledGraph& g, const Word& w, const PerronOptions& popt) {
  check_word(g, w);
  require_right_resolving(g);
  const NonnegMatrix a = require_irreducible(g);
  if (!is_admissible(g, w)) return inadmissible(w, MeasureMethod::ClosedForm);
  const SpectralData sd = perron(a, popt);
  MeasureResult r;
  r.word = w;
  r.method = MeasureMethod::ClosedForm;
  r.value = closed_form_value(letter_matrices(g), sd, w);
  return r;
}

MeasureResult natural_measure_limit(const LabeledGraph& g, const Word& w, const LimitOptions& opt) {
  check_word(g, w);
  require_right_resolving(g);
  const NonnegMatrix a = require_irreducible(g);
  const int p = period(a);
  MeasureResult r;
  r.word = w;
  r.method = p == 1 ? MeasureMethod::Limit : MeasureMethod::PeriodicLimit;
  if (!is_admissible(g, w)) return inadmissible(w, r.method);
  const long n = static_cast<long>(w.size());
  std::optional<double> prev;
  for (long k = std::max<long>(opt.first_window, p); k <= opt.max_window; k *= 2) {
    BigInt num = 0;
    for (int j = 0; j < p; ++j) num += count_cylinder(g, w, k - j, k + j);
    const BigInt den = count_words(g, static_cast<int>(n + 2 * k));
    const Rational q(num, den * p);
    const double v = to_double(q);
    r.diagnostics.push_back({k, k, v});
    if (prev && std::abs(v - *prev) < opt.tol) {
      r.exact = q;
      r.value = v;
      return r;
    }
    prev = v;
  }
  throw NotConverged("natural_measure_limit: census ratios did not settle within max_window " +
                     std::to_string(opt.max_window) + " (last " + last_ratio(r) + ")");
}

MeasureResult edge_shift_measure(const LabeledGraph& g, const Word& w, const LimitOptions& opt) {
  check_word(g, w);
  require_right_resolving(g);
  const NonnegMatrix a = require_irreducible(g);
  const int p = period(a);
  MeasureResult r;
  r.word = w;
  r.method = p == 1 ? MeasureMethod::Limit : MeasureMethod::PeriodicLimit;
  if (!is_admissible(g, w)) return inadmissible(w, r.method);
  const LetterMatrices lm = letter_matrices(g);
  const long n = static_cast<long>(w.size());
  std::optional<double> prev;
  for (long k = std::max<long>(opt.first_window, p); k <= opt.max_window; k *= 2) {
    BigInt num = 0;
    for (int j = 0; j < p; ++j) num += edge_cylinder(a, lm, w, k - j, k + j);
    const BigInt den = entry_sum(mat_power(a, static_cast<std::uint64_t>(n + 2 * k)));
    const Rational q(num, den * p);
    const double v = to_double(q);
    r.diagnostics.push_back({k, k, v});
    if (prev && std::abs(v - *prev) < opt.tol) {
      r.exact = q;
      r.value = v;
      const double closed = closed_form_value(lm, perron(a), w);
      if (std::abs(v - closed) > 10.0 * opt.tol + 1e-12)
        throw Error("edge_shift_measure: limit " + std::to_string(v) + " disagrees with closed form " +
                    std::to_string(closed));
      return r;
    }
    prev = v;
  }
  throw NotConverged("edge_shift_measure: ratios did not settle within max_window " + std::to_string(opt.max_window) +
                     " (last " + last_ratio(r) + ")");
}

MeasureResult periodic_natural_measure(const LabeledGraph& g, const Word& w, const LimitOptions& opt) {
  check_word(g, w);
  require_right_resolving(g);
  const NonnegMatrix a = require_irreducible(g);
  const int p = period(a);
  MeasureResult r;
  r.word = w;
  r.method = MeasureMethod::PeriodicLimit;
  if (!is_admissible(g, w)) return inadmissible(w, r.method);
  const SignedMatrices sg = signed_matrices(g);
  const long n = static_cast<long>(w.size());
  std::optional<double> prev;
  for (long k = std::max<long>(opt.first_window, p); k <= opt.max_window; k *= 2) {
    // period m = n+k+l-1 is a multiple of p; the count depends on k+l only
    const long l = k + ((p - (n + 2 * k - 1) % p) % p);
    const long m = n + k + l - 1;
    BigInt num = 0, den = 0;
    for (std::size_t j = 0; j < sg.total.size(); ++j) {
      const SignedMatrix tail = signed_power(sg.total[j], static_cast<std::uint64_t>(k + l - 1));
      SignedMatrix head = signed_identity(sg.total[j].dim);
      for (int s : w) head = signed_mul(head, sg.per_symbol[j][s]);
      const BigInt c = signed_trace(signed_mul(head, tail));
      const BigInt d = signed_trace(signed_mul(tail, signed_power(sg.total[j], static_cast<std::uint64_t>(n))));
      num += (j % 2 == 0) ? c : BigInt(-c);
      den += (j % 2 == 0) ? d : BigInt(-d);
    }
    if (den.is_zero()) throw Error("periodic_natural_measure: no periodic points of period " + std::to_string(m));
    const Rational q(num, den);
    const double v = to_double(q);
    r.diagnostics.push_back({k, l, v});
    if (prev && std::abs(v - *prev) < opt.tol) {
      r.exact = q;
      r.value = v;
      const double closed = closed_form_value(letter_matrices(g), perron(a), w);
      if (std::abs(v - closed) > 10.0 * opt.tol + 1e-12)
        throw Error("periodic_natural_measure: limit " + std::to_string(v) + " disagrees with closed form " +
                    std::to_string(closed));
      return r;
    }
    prev = v;
  }
  throw NotConverged("periodic_natural_measure: ratios did not settle within max_window " +
                     std::to_string(opt.max_window) + " (last " + last_ratio(r) + ")");
}

LabeledGraph minimal_right_resolving(const LabeledGraph& g) {
  require_right_resolving(g);
  const std::vector<int> succ = successor_table(g);
  const int n = g.vertices;
  const int k = g.alphabet.size();
  // Moore refinement: block ids are renumbered by first member, so a stable
  // partition reproduces the same ids.
  std::vector<int> block(n, 0);
  while (true) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> sig{block[v]};
      for (int s = 0; s < k; ++s) {
        const int t = succ[static_cast<std::size_t>(v) * k + s];
        sig.push_back(t < 0 ? -1 : block[t]);
      }
      auto [it, fresh] = ids.emplace(std::move(sig), static_cast<int>(ids.size()));
      next[v] = it->second;
    }
    if (next == block) break;
    block = std::move(next);
  }
  int blocks = *std::max_element(block.begin(), block.end()) + 1;
  LabeledGraph out;
  out.vertices = blocks;
  out.alphabet = g.alphabet;
  std::vector<bool> done(blocks, false);
  for (int v = 0; v < n; ++v) {
    if (done[block[v]]) continue;
    done[block[v]] = true;
    for (int s = 0; s < k; ++s) {
      const int t = succ[static_cast<std::size_t>(v) * k + s];
      if (t >= 0) out.edges.push_back({block[v], block[t], s});
    }
  }
  return out;
}

bool spectral_gap_check(const LabeledGraph& g) {
  const SubsetMatrices sm(g);
  const double lambda = spectral_radius(g.adjacency());
  for (int j = 2; j <= sm.vertices(); ++j)
    if (spectral_radius(sm.diagonal_block(j)) >= lambda * (1.0 - 1e-9)) return false;
  return true;
}

UniformBounds uniform_bounds(const LabeledGraph& g) {
  require_right_resolving(g);
  const NonnegMatrix a = require_irreducible(g);
  const SpectralData sd = perron(a);
  const int n = g.vertices;
  const int k = g.alphabet.size();
  const std::vector<int> succ = successor_table(g);
  // A product of right-resolving letter matrices has at most one 1 per row,
  // so it is the partial map f with f[i] = column of row i's 1, or -1.
  std::vector<std::vector<int>> gens(k, std::vector<int>(n));
  for (int s = 0; s < k; ++s)
    for (int i = 0; i < n; ++i) gens[s][i] = succ[static_cast<std::size_t>(i) * k + s];
  double cap = std::pow(static_cast<double>(n + 1), static_cast<double>(n));
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  for (const auto& m : gens)
    if (seen.insert(m).second) queue.push_back(m);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& gen : gens) {
      std::vector<int> prod(n);
      for (int i = 0; i < n; ++i) prod[i] = queue[head][i] < 0 ? -1 : gen[queue[head][i]];
      if (seen.insert(prod).second) {
        if (static_cast<double>(seen.size()) > cap) throw Error("uniform_bounds: semigroup closure exceeds (N+1)^N");
        queue.push_back(std::move(prod));
      }
    }
  }
  UniformBounds ub;
  ub.semigroup_size = seen.size();
  ub.alpha = INFINITY;
  for (const auto& m : seen) {
    double umv = 0.0;
    bool nonzero = false;
    for (int i = 0; i < n; ++i)
      if (m[i] >= 0) {
        nonzero = true;
        umv += sd.left[i] * sd.right[m[i]];
      }
    if (!nonzero) continue;
    ++ub.nonzero_products;
    ub.alpha = std::min(ub.alpha, umv);
    ub.beta = std::max(ub.beta, umv);
  }
  ub.within_nn_bound = static_cast<double>(ub.semigroup_size) <= std::pow(static_cast<double>(n), n);
  return ub;
}

SftSystem edge_shift(const LabeledGraph& g) {
  g.validate();
  const int m = static_cast<int>(g.edges.size());
  if (m == 0) throw InvalidArgument("edge_shift: graph has no edges");
  NonnegMatrix e(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (g.edges[i].to == g.edges[j].from) e.set(i, j, 1);
  return SftSystem(std::move(e));
}

HiddenMarkovReport hidden_markov_check(const LabeledGraph& g, int n, double tol) {
  require_right_resolving(g);
  const NonnegMatrix a = require_irreducible(g);
  const SpectralData sd = perron(a);
  const LetterMatrices lm = letter_matrices(g);
  const SftSystem es = edge_shift(g);
  const auto& esd = es.spectral();
  const int m = static_cast<int>(g.edges.size());
  HiddenMarkovReport rep;
  for (int len = 1; len <= n; ++len) {
    // push the edge-shift Parry measure forward along every edge path
    std::map<Word, double> pushed;
    std::vector<int> path;
    auto dfs = [&](auto&& self) -> void {
      if (static_cast<int>(path.size()) == len) {
        Word w(len);
        for (int i = 0; i < len; ++i) w[i] = g.edges[path[i]].label;
        pushed[w] += esd.left[path.front()] * esd.right[path.back()] / std::pow(esd.lambda, len - 1.0);
        return;
      }
      for (int e = 0; e < m; ++e)
        if (path.empty() || g.edges[path.back()].to == g.edges[e].from) {
          path.push_back(e);
          self(self);
          path.pop_back();
        }
    };
    dfs(dfs);
    for (const auto& w : enumerate_words(SystemHandle::sofic(g), len)) {
      const double mu = closed_form_value(lm, sd, w);
      auto it = pushed.find(w);
      const double hm = it == pushed.end() ? 0.0 : it->second;
      rep.max_deviation = std::max(rep.max_deviation, std::abs(mu - hm));
      ++rep.words_checked;
    }
  }
  rep.ok = rep.max_deviation <= tol;
  return rep;
}

Word sample_labels(const LabeledGraph& g, std::size_t length, std::uint64_t seed) {
  const SftSystem es = edge_shift(g);
  const Word edges = sample_orbit(es, length, seed);
  Word out(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) out[i] = g.edges[edges[i]].label;
  return out;
}

double sofic_measure_entropy_partial(const LabeledGraph& g, int n) {
  if (n < 1) throw InvalidArgument("measure entropy: n must be >= 1");
  require_right_resolving(g);
  const SpectralData sd = perron(require_irreducible(g));
  const LetterMatrices lm = letter_matrices(g);
  double h = 0.0;
  for (const auto& w : enumerate_words(SystemHandle::sofic(g), n)) {
    const double mu = closed_form_value(lm, sd, w);
    if (mu > 0.0) h -= mu * std::log(mu);
  }
  return h / n;
}

LabeledGraph sft_as_sofic(const NonnegMatrix& a, const Alphabet& alphabet) {
  if (!a.is_zero_one()) throw InvalidArgument("sft_as_sofic: matrix entries must be 0 or 1");
  LabeledGraph g;
  g.vertices = a.dim();
  g.alphabet = alphabet.size() == 0 ? Alphabet::numbered(a.dim()) : alphabet;
  if (g.alphabet.size() != a.dim()) throw DimensionMismatch("sft_as_sofic: alphabet size differs from dimension");
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (!a(i, j).is_zero()) g.edges.push_back({i, j, j});
  return g;
}

}  // namespace shiftlab
