#include "shiftlab/countable.hpp"

#include "shiftlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

namespace shiftlab {

namespace {

using SparseVec = std::unordered_map<StateId, BigInt>;

SparseVec unit(StateId s) { return SparseVec{{s, BigInt(1)}}; }

// x -> x T; label >= 0 follows only edges carrying that label.
SparseVec step(const CountableMatrixSpec& spec, const SparseVec& x, int label = -1) {
  SparseVec y;
  for (const auto& [i, v] : x) {
    if (v.is_zero()) continue;
    for (const auto& s : spec.successors(i)) {
      if (label >= 0 && s.label != label) continue;
      y[s.to] += v * s.weight;
    }
  }
  return y;
}

SparseVec steps(const CountableMatrixSpec& spec, SparseVec x, long n) {
  for (long t = 0; t < n; ++t) x = step(spec, x);
  return x;
}

BigInt at(const SparseVec& x, StateId s) {
  auto it = x.find(s);
  return it == x.end() ? BigInt(0) : it->second;
}

double increment_ratio(const std::vector<PartialSum>& s) {
  const double d0 = s[1].value - s[0].value;
  const double d1 = s[2].value - s[1].value;
  if (d0 <= 0.0) return d1 <= 0.0 ? 0.0 : INFINITY;
  return d1 / d0;
}

void require_positive(const RecurrenceReport& rep, const char* what) {
  if (rep.cls != RecurrenceClass::PositiveRecurrent)
    throw NotPositiveRecurrent(std::string(what) + ": recurrence evidence is " + to_string(rep.cls) + " (" +
                               rep.evidence + ")");
}

// l scaled so that l . r = 1 over the truncation.
std::vector<double> normalized_left(const TruncationStep& ts) {
  double s = 0.0;
  for (std::size_t i = 0; i < ts.left.size(); ++i) s += ts.left[i] * ts.right[i];
  std::vector<double> l = ts.left;
  for (double& x : l) x /= s;
  return l;
}

template <class Ratio>
double settle(Ratio&& ratio, const CountableLimitOptions& opt, std::vector<ConvergencePoint>& diag,
              std::optional<Rational>& exact) {
  std::optional<double> prev;
  for (long k = opt.first_window; k <= opt.max_window; k *= 2) {
    Rational q = ratio(k);
    const double v = to_double(q);
    diag.push_back({k, k, v});
    if (prev && std::abs(v - *prev) < opt.tol) {
      exact = q;
      return v;
    }
    prev = v;
  }
  throw NotConverged("countable natural measure: ratios did not settle within max_window " +
                     std::to_string(opt.max_window) +
                     (diag.empty() ? std::string() : " (last " + std::to_string(diag.back().ratio) + ")"));
}

}  // namespace

long long CountableMatrixSpec::entry(StateId i, StateId j) const {
  long long e = 0;
  for (const auto& s : successors(i))
    if (s.to == j) e += s.weight;
  return e;
}

std::string CountableMatrixSpec::name_of(StateId s) const { return display ? display(s) : std::to_string(s); }

CountableMatrixSpec stencil_spec(std::string name, std::vector<long long> offsets, std::vector<long long> values,
                                 StateId root, std::optional<StateId> min_index) {
  if (offsets.empty() || offsets.size() != values.size())
    throw InvalidArgument("stencil: offsets and values must be nonempty and of equal length");
  for (long long v : values)
    if (v < 0) throw InvalidArgument("stencil: values must be nonnegative");
  if (min_index && root < *min_index) throw InvalidArgument("stencil: root below min_index");
  CountableMatrixSpec spec;
  spec.name = std::move(name);
  spec.root = root;
  spec.successors = [offsets, values, min_index](StateId i) {
    std::vector<CountableSuccessor> out;
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      const StateId j = i + offsets[k];
      if (values[k] == 0 || (min_index && j < *min_index)) continue;
      out.push_back({j, values[k], -1});
    }
    return out;
  };
  spec.display = [](StateId s) { return std::to_string(s); };
  return spec;
}

CountableMatrixSpec random_walk_spec() { return stencil_spec("random-walk-z", {1, -1}, {1, 1}); }

CountableMatrixSpec finite_spec(const NonnegMatrix& a, std::string name) {
  if (a.dim() <= 0) throw InvalidArgument("finite_spec: empty matrix");
  CountableMatrixSpec spec;
  spec.name = std::move(name);
  spec.root = 0;
  std::vector<std::vector<CountableSuccessor>> rows(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (!a(i, j).is_zero()) rows[i].push_back({j, static_cast<long long>(a(i, j)), -1});
  spec.successors = [rows](StateId i) {
    if (i < 0 || i >= static_cast<StateId>(rows.size())) return std::vector<CountableSuccessor>{};
    return rows[static_cast<std::size_t>(i)];
  };
  spec.display = [](StateId s) { return std::to_string(s); };
  return spec;
}

CountableMatrixSpec finite_labeled_spec(const LabeledGraph& g, std::string name) {
  g.validate();
  CountableMatrixSpec spec;
  spec.name = std::move(name);
  spec.root = 0;
  spec.labels = g.alphabet;
  std::vector<std::vector<CountableSuccessor>> rows(g.vertices);
  for (const auto& e : g.edges) rows[e.from].push_back({e.to, 1, e.label});
  spec.successors = [rows](StateId i) {
    if (i < 0 || i >= static_cast<StateId>(rows.size())) return std::vector<CountableSuccessor>{};
    return rows[static_cast<std::size_t>(i)];
  };
  spec.display = [](StateId s) { return std::to_string(s); };
  return spec;
}

int Truncation::position(StateId s) const {
  auto it = index.find(s);
  return it == index.end() ? -1 : it->second;
}

Truncation truncate(const CountableMatrixSpec& spec, int size) {
  if (size < 1) throw InvalidArgument("truncate: size must be >= 1");
  if (!spec.successors) throw InvalidArgument("truncate: spec has no successor function");
  Truncation t;
  auto add = [&](StateId s) {
    if (t.index.count(s)) return false;
    t.index[s] = static_cast<int>(t.states.size());
    t.states.push_back(s);
    return true;
  };
  if (spec.canonical) {
    for (int r = 0; r < size; ++r)
      if (!add(spec.canonical(static_cast<std::size_t>(r))))
        throw InvalidArgument("truncate: canonical order repeats a state");
    if (t.states.front() != spec.root) throw InvalidArgument("truncate: canonical order must start at the root");
  } else {
    std::deque<StateId> queue{spec.root};
    add(spec.root);
    while (!queue.empty() && static_cast<int>(t.states.size()) < size) {
      const StateId s = queue.front();
      queue.pop_front();
      for (const auto& succ : spec.successors(s)) {
        if (static_cast<int>(t.states.size()) >= size) break;
        if (add(succ.to)) queue.push_back(succ.to);
      }
    }
  }
  const int n = static_cast<int>(t.states.size());
  t.matrix = NonnegMatrix(n);
  for (int i = 0; i < n; ++i)
    for (const auto& succ : spec.successors(t.states[i])) {
      const int j = t.position(succ.to);
      if (j >= 0) t.matrix.add(i, j, succ.weight);
    }
  // depth inside the truncation
  t.depth.assign(n, -1);
  std::deque<int> queue{0};
  t.depth[0] = 0;
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    for (int j = 0; j < n; ++j)
      if (!t.matrix(i, j).is_zero() && t.depth[j] < 0) {
        t.depth[j] = t.depth[i] + 1;
        queue.push_back(j);
      }
  }
  return t;
}

const TruncationStep& TruncationResult::last() const {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it)
    if (it->used) return *it;
  throw NotConverged("approx_perron: no usable truncation");
}

TruncationStep truncation_step(const CountableMatrixSpec& spec, int size, const PerronOptions& popt) {
  const Truncation t = truncate(spec, size);
  TruncationStep st;
  st.size = static_cast<int>(t.states.size());
  st.states = t.states;
  if (!is_irreducible(t.matrix)) {
    st.skipped = "reducible";
    return st;
  }
  std::vector<int> rows, cols;
  std::vector<double> vals;
  for (int i = 0; i < st.size; ++i)
    for (int j = 0; j < st.size; ++j)
      if (!t.matrix(i, j).is_zero()) {
        rows.push_back(i);
        cols.push_back(j);
        vals.push_back(to_double(t.matrix(i, j)));
      }
  const SpectralData sd =
      perron_csr(kernels::Csr::from_triplets(st.size, st.size, std::move(rows), std::move(cols), std::move(vals)), popt);
  st.used = true;
  st.lambda = sd.lambda;
  st.period = sd.period;
  const int r = t.position(spec.root);
  st.left = sd.left;
  st.right = sd.right;
  const double l0 = st.left[r], r0 = st.right[r];
  for (double& x : st.left) x /= l0;
  for (double& x : st.right) x /= r0;
  return st;
}

TruncationResult approx_perron(const CountableMatrixSpec& spec, const ApproxPerronOptions& opt) {
  std::vector<int> sizes = opt.sizes;
  if (sizes.empty())
    for (int s = std::max(1, opt.first_size); s <= opt.max_size; s *= 2) sizes.push_back(s);
  TruncationResult res;
  std::optional<double> prev;
  for (int requested : sizes) {
    TruncationStep st = truncation_step(spec, requested, opt.perron);
    // nearest irreducible size just above a reducible one
    for (int bump = 1; !st.used && opt.sizes.empty() && bump <= 3 && requested + bump <= opt.max_size; ++bump)
      st = truncation_step(spec, requested + bump, opt.perron);
    const bool exhausted = st.size < requested;
    res.steps.push_back(st);
    if (!st.used) continue;
    if (prev && st.lambda < *prev - 1e-9 * *prev)
      throw Error("approx_perron: truncated Perron values decreased");
    if (prev) res.error_bound = std::abs(st.lambda - *prev);
    res.lambda = st.lambda;
    if ((prev && res.error_bound < opt.tol) || exhausted) {
      res.converged = true;
      if (exhausted) res.error_bound = 0.0;
      break;
    }
    prev = st.lambda;
  }
  return res;
}

std::string to_string(RecurrenceClass c) {
  switch (c) {
    case RecurrenceClass::Transient: return "transient";
    case RecurrenceClass::NullRecurrent: return "null-recurrent";
    case RecurrenceClass::PositiveRecurrent: return "positive-recurrent";
    case RecurrenceClass::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::optional<double> constant_eigenvector_evidence(const CountableMatrixSpec& spec, int size) {
  const Truncation t = truncate(spec, size);
  const int n = static_cast<int>(t.states.size());
  const int max_depth = *std::max_element(t.depth.begin(), t.depth.end());
  std::optional<double> c;
  int checked = 0;
  for (int i = 0; i < n; ++i) {
    if (t.depth[i] < 0 || t.depth[i] > max_depth - 2) continue;
    double row = 0.0;
    for (const auto& s : spec.successors(t.states[i])) row += static_cast<double>(s.weight);
    double col = 0.0;
    for (int k = 0; k < n; ++k) col += to_double(t.matrix(k, i));
    if (!c) c = row;
    if (row != *c || col != *c) return std::nullopt;
    ++checked;
  }
  if (checked == 0) return std::nullopt;
  return c;
}

RecurrenceReport classify_recurrence(const CountableMatrixSpec& spec, double lambda, int n_terms,
                                     const TruncationResult* trunc) {
  if (n_terms < 10) throw InvalidArgument("classify_recurrence: n_terms must be >= 10");
  if (!(lambda > 0.0)) throw InvalidArgument("classify_recurrence: lambda must be positive");
  RecurrenceReport rep;
  rep.lambda = lambda;
  rep.terms = n_terms;
  rep.t.assign(n_terms + 1, BigInt(0));
  rep.l.assign(n_terms + 1, BigInt(0));
  rep.t[0] = 1;
  SparseVec x = unit(spec.root);
  SparseVec taboo = unit(spec.root);
  for (int n = 1; n <= n_terms; ++n) {
    x = step(spec, x);
    rep.t[n] = at(x, spec.root);
    taboo = step(spec, taboo);
    rep.l[n] = at(taboo, spec.root);
    taboo.erase(spec.root);
  }
  const std::vector<int> marks{n_terms / 4, n_terms / 2, n_terms};
  double st = 0.0, snl = 0.0;
  std::size_t mark = 0;
  for (int n = 1; n <= n_terms; ++n) {
    st += scaled_ratio(rep.t[n], lambda, n);
    snl += n * scaled_ratio(rep.l[n], lambda, n);
    while (mark < marks.size() && marks[mark] == n) {
      rep.t_partial.push_back({n, st});
      rep.nl_partial.push_back({n, snl});
      ++mark;
    }
  }
  rep.t_increment_ratio = increment_ratio(rep.t_partial);
  rep.nl_increment_ratio = increment_ratio(rep.nl_partial);
  if (trunc)
    for (const auto& s : trunc->steps)
      if (s.used) {
        double lr = 0.0;
        for (std::size_t i = 0; i < s.left.size(); ++i) lr += s.left[i] * s.right[i];
        rep.lr_partial.push_back({s.size, lr});
      }
  rep.constant_eigenvalue = constant_eigenvector_evidence(spec, std::max(16, std::min(n_terms, 256)));

  const bool t_conv = rep.t_increment_ratio < 0.9, t_div = rep.t_increment_ratio > 1.1;
  const bool nl_conv = rep.nl_increment_ratio < 0.9, nl_div = rep.nl_increment_ratio > 1.1;
  std::ostringstream ev;
  ev << "sum t/lambda^n increment ratio " << rep.t_increment_ratio << ", sum n l/lambda^n increment ratio "
     << rep.nl_increment_ratio;
  if (rep.constant_eigenvalue) ev << ", all-ones eigenvector with eigenvalue " << *rep.constant_eigenvalue;
  if (!rep.lr_partial.empty()) ev << ", l.r partial sum " << rep.lr_partial.back().value;
  if (t_conv)
    rep.cls = RecurrenceClass::Transient;
  else if (t_div && nl_conv)
    rep.cls = RecurrenceClass::PositiveRecurrent;
  else if (t_div && nl_div)
    rep.cls = RecurrenceClass::NullRecurrent;
  else
    rep.cls = RecurrenceClass::Inconclusive;
  rep.evidence = ev.str();
  return rep;
}

std::vector<double> markov_matrix(const TruncationStep& ts, const Truncation& t) {
  const int n = static_cast<int>(ts.right.size());
  std::vector<double> p(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!t.matrix(i, j).is_zero())
        p[static_cast<std::size_t>(i) * n + j] = to_double(t.matrix(i, j)) * ts.right[j] / (ts.lambda * ts.right[i]);
  return p;
}

std::vector<double> markov_matrix_as_printed(const TruncationStep& ts, const Truncation& t) {
  const int n = static_cast<int>(ts.right.size());
  std::vector<double> p(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!t.matrix(i, j).is_zero())
        p[static_cast<std::size_t>(i) * n + j] = to_double(t.matrix(i, j)) * ts.right[i] / (ts.lambda * ts.right[j]);
  return p;
}

CountableMeasure markov_measure(const TruncationStep& ts, const Truncation& t, const std::vector<StateId>& word,
                                const RecurrenceReport& rep) {
  require_positive(rep, "markov_measure");
  if (word.empty()) throw InvalidArgument("markov_measure: word must be nonempty");
  if (!ts.used || ts.states != t.states) throw InvalidArgument("markov_measure: truncation step does not match");
  std::vector<int> pos;
  for (StateId s : word) {
    const int p = t.position(s);
    if (p < 0) throw InvalidArgument("markov_measure: state outside the truncation");
    pos.push_back(p);
  }
  CountableMeasure out;
  out.result.word.assign(word.begin(), word.end());
  out.result.method = MeasureMethod::ClosedForm;
  const std::vector<double> l = normalized_left(ts);
  const int n = static_cast<int>(ts.right.size());
  const std::vector<double> P = markov_matrix(ts, t);
  double mu = l[pos[0]] * ts.right[pos[0]];
  double prod = 1.0;
  for (std::size_t q = 0; q + 1 < pos.size(); ++q) {
    mu *= P[static_cast<std::size_t>(pos[q]) * n + pos[q + 1]];
    prod *= to_double(t.matrix(pos[q], pos[q + 1]));
  }
  out.result.admissible = prod > 0.0;
  out.result.value = mu;
  out.closed_form =
      l[pos.front()] * ts.right[pos.back()] * prod / std::pow(ts.lambda, static_cast<double>(word.size()) - 1.0);
  const int max_depth = *std::max_element(t.depth.begin(), t.depth.end());
  int worst = 0;
  for (int p : pos) worst = std::max(worst, t.depth[p] < 0 ? max_depth : t.depth[p]);
  out.trusted = worst + static_cast<int>(word.size()) < max_depth;
  return out;
}

Rational countable_sft_ratio(const CountableMatrixSpec& spec, const std::vector<StateId>& word, StateId i, StateId j,
                             long k, long l) {
  if (word.empty()) throw InvalidArgument("countable ratio: word must be nonempty");
  if (k < 0 || l < 0) throw InvalidArgument("countable ratio: margins must be nonnegative");
  BigInt inner = 1;
  for (std::size_t q = 0; q + 1 < word.size(); ++q) inner *= spec.entry(word[q], word[q + 1]);
  const long n = static_cast<long>(word.size());
  const BigInt den = at(steps(spec, unit(i), n + k + l - 1), j);
  if (den.is_zero()) throw InvalidArgument("countable ratio: no paths between the anchors at this length");
  if (inner.is_zero()) return 0;
  const BigInt head = at(steps(spec, unit(i), k), word.front());
  const BigInt tail = at(steps(spec, unit(word.back()), l), j);
  return Rational(head * inner * tail, den);
}

Rational countable_sofic_ratio(const CountableMatrixSpec& spec, const Word& word, StateId i, StateId j, long k,
                               long l) {
  if (!spec.labeled()) throw InvalidArgument("countable sofic ratio: spec has no labels");
  if (word.empty()) throw InvalidArgument("countable sofic ratio: word must be nonempty");
  if (k < 0 || l < 0) throw InvalidArgument("countable sofic ratio: margins must be nonnegative");
  const long n = static_cast<long>(word.size());
  const BigInt den = at(steps(spec, unit(i), n + k + l), j);
  if (den.is_zero()) throw InvalidArgument("countable sofic ratio: no paths between the anchors at this length");
  SparseVec x = steps(spec, unit(i), k);
  for (int s : word) x = step(spec, x, s);
  x = steps(spec, x, l);
  return Rational(at(x, j), den);
}

CountableMeasure natural_measure_sft(const CountableMatrixSpec& spec, const std::vector<StateId>& word,
                                     const std::vector<std::pair<StateId, StateId>>& anchors,
                                     const RecurrenceReport& rep, const CountableLimitOptions& opt,
                                     const TruncationStep* trunc) {
  require_positive(rep, "natural_measure_sft");
  if (anchors.empty()) throw InvalidArgument("natural_measure_sft: need at least one anchor pair");
  CountableMeasure out;
  out.result.word.assign(word.begin(), word.end());
  out.result.method = MeasureMethod::Limit;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    std::vector<ConvergencePoint> diag;
    std::optional<Rational> exact;
    const double v = settle(
        [&](long k) { return countable_sft_ratio(spec, word, anchors[a].first, anchors[a].second, k, k); }, opt,
        diag, exact);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (a == 0) {
      out.result.value = v;
      out.result.exact = exact;
      out.result.diagnostics = diag;
    }
  }
  if (hi - lo >= 10.0 * opt.tol)
    throw Error("natural_measure_sft: anchor pairs disagree by " + std::to_string(hi - lo));
  BigInt inner = 1;
  for (std::size_t q = 0; q + 1 < word.size(); ++q) inner *= spec.entry(word[q], word[q + 1]);
  out.result.admissible = !inner.is_zero();
  if (trunc) {
    Truncation t;
    for (std::size_t p = 0; p < trunc->states.size(); ++p) t.index[trunc->states[p]] = static_cast<int>(p);
    const int first = t.position(word.front()), last = t.position(word.back());
    if (first >= 0 && last >= 0) {
      const std::vector<double> l = normalized_left(*trunc);
      out.closed_form = l[first] * trunc->right[last] * to_double(inner) /
                        std::pow(trunc->lambda, static_cast<double>(word.size()) - 1.0);
    }
  }
  return out;
}

bool countable_word_admissible(const CountableMatrixSpec& spec, const Word& word, int search_states) {
  const Truncation t = truncate(spec, search_states);
  for (StateId s : t.states) {
    SparseVec x = unit(s);
    for (int sym : word) {
      x = step(spec, x, sym);
      if (x.empty()) break;
    }
    if (!x.empty()) return true;
  }
  return false;
}

double sofic_closed_form(const CountableMatrixSpec& spec, const TruncationStep& ts, const Word& word) {
  if (!ts.used) throw InvalidArgument("sofic_closed_form: unusable truncation");
  std::unordered_map<StateId, int> index;
  for (std::size_t p = 0; p < ts.states.size(); ++p) index[ts.states[p]] = static_cast<int>(p);
  const std::vector<double> l = normalized_left(ts);
  double total = 0.0;
  for (std::size_t q = 0; q < ts.states.size(); ++q) {
    SparseVec x = unit(ts.states[q]);
    for (int s : word) {
      x = step(spec, x, s);
      for (auto it = x.begin(); it != x.end();) it = index.count(it->first) ? std::next(it) : x.erase(it);
    }
    for (const auto& [state, count] : x) total += l[q] * to_double(count) * ts.right[index.at(state)];
  }
  return total / std::pow(ts.lambda, static_cast<double>(word.size()));
}

CountableMeasure natural_measure_sofic(const CountableMatrixSpec& spec, const Word& word,
                                       const std::vector<std::pair<StateId, StateId>>& anchors,
                                       const RecurrenceReport& rep, const CountableLimitOptions& opt,
                                       const TruncationStep* trunc) {
  require_positive(rep, "natural_measure_sofic");
  if (anchors.empty()) throw InvalidArgument("natural_measure_sofic: need at least one anchor pair");
  CountableMeasure out;
  out.result.word = word;
  out.result.method = MeasureMethod::Limit;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    std::vector<ConvergencePoint> diag;
    std::optional<Rational> exact;
    const double v = settle(
        [&](long k) { return countable_sofic_ratio(spec, word, anchors[a].first, anchors[a].second, k, k); }, opt,
        diag, exact);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (a == 0) {
      out.result.value = v;
      out.result.exact = exact;
      out.result.diagnostics = diag;
    }
  }
  if (hi - lo >= 10.0 * opt.tol)
    throw Error("natural_measure_sofic: anchor pairs disagree by " + std::to_string(hi - lo));
  out.result.admissible = out.result.value > 0.0;
  if (trunc) out.closed_form = sofic_closed_form(spec, *trunc, word);
  return out;
}

BigInt binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (long i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

Rational random_walk_ratio(long k, long l) {
  if (k < 0 || l < 0) throw InvalidArgument("random_walk_ratio: k, l must be nonnegative");
  return Rational(binomial(2 * k, k) * binomial(2 * l, l), binomial(2 * (k + l), k + l));
}

std::vector<RandomWalkCell> random_walk_diagnostic(long k_max) {
  if (k_max < 1) throw InvalidArgument("random_walk_diagnostic: k_max must be >= 1");
  std::vector<RandomWalkCell> out;
  for (long k = 1; k <= k_max; ++k) {
    RandomWalkCell c;
    c.k = c.l = k;
    c.ratio = random_walk_ratio(k, k);
    c.value = to_double(c.ratio);
    c.stirling_scaled = c.value * std::sqrt(static_cast<double>(k) * k * std::numbers::pi / (2.0 * k));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace shiftlab
