#include "shiftlab/krieger.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace shiftlab {

namespace {

// Admissibility of w given that w minus its last symbol is admissible.
bool extends(const ForbiddenSetShift& f, const Word& w) {
  const int len = static_cast<int>(w.size());
  const int max_len = f.unbounded ? len : std::min(len, f.horizon);
  for (int l = 1; l <= max_len; ++l)
    if (f.is_forbidden(Word(w.end() - l, w.end()))) return false;
  return true;
}

// Admissible continuations of `past` up to `depth`, serialized in depth-first
// lexicographic order, so equal sets give equal strings.
std::string fingerprint(const ForbiddenSetShift& f, const Word& past, int depth) {
  std::string out;
  Word w = past;
  const int k = f.alphabet.size();
  auto dfs = [&](auto&& self, int left) -> void {
    if (left == 0) return;
    for (int s = 0; s < k; ++s) {
      w.push_back(s);
      if (extends(f, w)) {
        for (std::size_t i = past.size(); i < w.size(); ++i) out.push_back(static_cast<char>('A' + w[i]));
        out.push_back('|');
        self(self, left - 1);
      }
      w.pop_back();
    }
  };
  dfs(dfs, depth);
  return out;
}

CountableMatrixSpec spec_from_graph(const LabeledGraph& g, std::string name, std::vector<std::string> names) {
  CountableMatrixSpec spec = finite_labeled_spec(g, std::move(name));
  spec.display = [names](StateId s) {
    return s >= 0 && s < static_cast<StateId>(names.size()) ? names[static_cast<std::size_t>(s)] : std::to_string(s);
  };
  return spec;
}

std::vector<CountableSuccessor> cf_successors(StateId r) {
  constexpr int a = 0, b = 1, c = 2;
  const StateId P = 0, Q = 1, E0 = 2;
  if (r < 0) return {};
  if (r == P) return {{E0, 1, a}, {P, 1, b}, {P, 1, c}};
  if (r == Q) return {{P, 1, b}, {Q, 1, c}};
  if (r == E0) return {{E0, 1, a}, {cf_rank(CfKind::E, 1), 1, b}, {Q, 1, c}};
  if (r % 2 == 1) return {{r + 2, 1, b}, {r + 1, 1, c}};  // E_k: b -> E_{k+1}, c -> F_{k-1}
  if (r == cf_rank(CfKind::F, 0)) return {{E0, 1, a}, {P, 1, b}, {Q, 1, c}};
  return {{P, 1, b}, {r - 2, 1, c}};  // F_j: b -> P, c -> F_{j-1}
}

using SuccCache = std::unordered_map<StateId, std::vector<CountableSuccessor>>;

const std::vector<CountableSuccessor>& cached(const CountableMatrixSpec& spec, SuccCache& cache, StateId s) {
  auto it = cache.find(s);
  if (it == cache.end()) it = cache.emplace(s, spec.successors(s)).first;
  return it->second;
}

// States reached from q reading w (empty when w is not readable).
std::vector<StateId> read(const CountableMatrixSpec& spec, SuccCache& cache, StateId q, const Word& w) {
  std::vector<StateId> cur{q};
  for (int s : w) {
    std::vector<StateId> next;
    for (StateId x : cur)
      for (const auto& e : cached(spec, cache, x))
        if (e.label == s) next.push_back(e.to);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur = std::move(next);
    if (cur.empty()) break;
  }
  return cur;
}

}  // namespace

KriegerCover krieger_cover(const ForbiddenSetShift& shift, const KriegerOptions& opt) {
  if (opt.depth < 1) throw InvalidArgument("krieger_cover: depth must be >= 1");
  if (!shift.is_forbidden) throw InvalidArgument("krieger_cover: shift has no forbidden predicate");
  const int k = shift.alphabet.size();
  KriegerCover cover;
  cover.depth = opt.depth;
  std::map<std::string, int> classes;
  std::vector<Word> examined;
  LabeledGraph g;
  g.alphabet = shift.alphabet;
  auto intern = [&](const Word& past) -> std::optional<int> {
    examined.push_back(past);
    const std::string fp = fingerprint(shift, past, opt.depth);
    auto it = classes.find(fp);
    if (it != classes.end()) return it->second;
    if (static_cast<int>(past.size()) > opt.max_radius) {
      cover.truncated = true;
      return std::nullopt;
    }
    if (static_cast<int>(classes.size()) >= opt.max_states)
      throw StateCapExceeded("krieger_cover: more than " + std::to_string(opt.max_states) + " follower classes");
    const int id = static_cast<int>(classes.size());
    classes.emplace(fp, id);
    cover.pasts.push_back(past);
    return id;
  };
  intern({});
  for (std::size_t head = 0; head < cover.pasts.size(); ++head) {
    for (int s = 0; s < k; ++s) {
      Word next = cover.pasts[head];
      next.push_back(s);
      if (!extends(shift, next)) continue;
      if (auto to = intern(next)) g.edges.push_back({static_cast<int>(head), *to, s});
    }
  }
  g.vertices = static_cast<int>(cover.pasts.size());
  std::set<std::string> finer;
  for (const auto& w : examined) finer.insert(fingerprint(shift, w, opt.depth + 1));
  cover.approximate = finer.size() != classes.size();
  for (const auto& p : cover.pasts) cover.names.push_back(p.empty() ? "[]" : "[" + shift.alphabet.format(p, "") + "]");
  cover.right_resolving = true;
  cover.spec = spec_from_graph(g, shift.name + "-cover", cover.names);
  cover.graph = std::move(g);
  return cover;
}

StateId cf_rank(CfKind kind, long param) {
  if (param < 0) throw InvalidArgument("cf_rank: negative parameter");
  switch (kind) {
    case CfKind::P: return 0;
    case CfKind::Q: return 1;
    case CfKind::E: return param == 0 ? 2 : 2 * param + 1;
    case CfKind::F: return 2 * param + 4;
  }
  return 0;
}

std::string cf_state_name(StateId r) {
  if (r < 0) throw InvalidArgument("cf_state_name: negative rank");
  if (r == 0) return "P";
  if (r == 1) return "Q";
  if (r == 2) return "E0";
  if (r % 2 == 1) return "E" + std::to_string((r - 1) / 2);
  return "F" + std::to_string((r - 4) / 2);
}

KriegerCover cf_cover() {
  KriegerCover cover;
  cover.spec.name = "context-free";
  cover.spec.root = 0;
  cover.spec.labels = Alphabet({"a", "b", "c"});
  cover.spec.successors = cf_successors;
  cover.spec.display = cf_state_name;
  cover.spec.canonical = [](std::size_t r) { return static_cast<StateId>(r); };
  cover.right_resolving = true;
  return cover;
}

KriegerCover golden_mean_cover() {
  LabeledGraph g;
  g.vertices = 2;
  g.alphabet = Alphabet({"1", "2"});
  g.edges = {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}};
  KriegerCover cover;
  cover.names = {"after-1", "after-2"};
  cover.spec = spec_from_graph(g, "golden-mean-cover", cover.names);
  cover.graph = g;
  return cover;
}

double cf_lambda_closed_form() { return 1.0 + std::sqrt(1.0 + std::sqrt(3.0)); }

std::vector<int> cf_truncation_sizes(int max_size) {
  std::vector<int> sizes;
  for (int n = 1; 2 * n + 3 <= max_size; n *= 2) sizes.push_back(2 * n + 3);
  const int top = (max_size - 3) / 2 * 2 + 3;
  if (top >= 5 && (sizes.empty() || sizes.back() != top)) sizes.push_back(top);
  return sizes;
}

CfEntropyResult cf_entropy(double tol, int max_size) {
  ApproxPerronOptions opt;
  opt.sizes = cf_truncation_sizes(max_size);
  opt.max_size = max_size;
  opt.tol = 0.0;  // run the whole schedule
  CfEntropyResult out;
  out.trunc = approx_perron(cf_cover().spec, opt);
  out.lambda = out.trunc.lambda;
  out.entropy = std::log(out.lambda);
  const double target = cf_lambda_closed_form();
  if (std::abs(out.lambda - target) > tol)
    throw NotConverged("cf_entropy: truncated Perron value " + std::to_string(out.lambda) + " is not within " +
                       std::to_string(tol) + " of " + std::to_string(target));
  return out;
}

int nstar_bound(const CountableMatrixSpec& spec, const std::vector<Word>& words, int search_states) {
  if (!spec.labeled()) throw InvalidArgument("nstar_bound: spec has no labels");
  if (words.empty()) return 0;
  const Truncation t = truncate(spec, search_states);
  SuccCache cache;
  int nstar = 0;
  for (const auto& w : words) {
    int best = -1;
    for (std::size_t p = 0; p < t.states.size(); ++p) {
      if (best >= 0 && static_cast<int>(p) + 1 >= best) break;
      for (StateId end : read(spec, cache, t.states[p], w)) {
        const int pe = t.position(end);
        if (pe < 0) continue;
        const int cost = std::max(static_cast<int>(p), pe) + 1;
        if (best < 0 || cost < best) best = cost;
      }
    }
    if (best < 0)
      throw InvalidArgument("nstar_bound: truncation of " + std::to_string(search_states) +
                            " states is too small to realize " + spec.labels.format(w));
    nstar = std::max(nstar, best);
  }
  return nstar;
}

EntropyConditionsReport entropy_conditions_check(const CountableMatrixSpec& spec,
                                                 const std::vector<std::vector<Word>>& words_by_length,
                                                 int trunc_size, int search_states) {
  EntropyConditionsReport rep;
  for (std::size_t n = 1; n <= words_by_length.size(); ++n) {
    const int ns = nstar_bound(spec, words_by_length[n - 1], search_states);
    rep.nstar.push_back(ns);
    rep.log_nstar_over_n.push_back(std::log(static_cast<double>(std::max(ns, 1))) / static_cast<double>(n));
  }
  rep.condition_i = !rep.log_nstar_over_n.empty();
  for (std::size_t i = 1; i < rep.log_nstar_over_n.size(); ++i)
    if (rep.log_nstar_over_n[i] > rep.log_nstar_over_n[i - 1] + 1e-12) rep.condition_i = false;

  const Truncation t = truncate(spec, trunc_size);
  const int m = static_cast<int>(t.states.size());
  std::vector<std::vector<bool>> candidate(m, std::vector<bool>(m, true));
  NonnegMatrix pw = t.matrix;
  for (std::size_t n = 1; n <= words_by_length.size(); ++n) {
    if (n > 1) pw = mat_mul(pw, t.matrix);
    BigInt top = 0;
    for (const auto& e : pw.data()) top = std::max(top, e);
    rep.root_dominates.push_back(pw(0, 0) >= top);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (pw(i, j) < top) candidate[i][j] = false;
  }
  for (int i = 0; i < m && !rep.dominant_pair; ++i)
    for (int j = 0; j < m; ++j)
      if (candidate[i][j]) {
        rep.dominant_pair = {i, j};
        break;
      }
  rep.condition_ii = rep.dominant_pair.has_value();
  return rep;
}

UniformDistributionReport uniform_distribution_check(const CountableMatrixSpec& spec, const TruncationStep& trunc,
                                                     const std::vector<Word>& words,
                                                     const std::vector<StateId>& finite_set,
                                                     std::optional<std::pair<double, double>> r_bounds,
                                                     double slack) {
  if (!trunc.used) throw InvalidArgument("uniform_distribution_check: unusable truncation");
  if (finite_set.empty()) throw InvalidArgument("uniform_distribution_check: empty finite set");
  UniformDistributionReport rep;
  rep.m1 = *std::min_element(trunc.right.begin(), trunc.right.end());
  rep.m2 = *std::max_element(trunc.right.begin(), trunc.right.end());
  rep.r_bounds_ok = !r_bounds || (rep.m1 >= r_bounds->first - slack && rep.m2 <= r_bounds->second + slack);
  std::unordered_map<StateId, int> index;
  for (std::size_t p = 0; p < trunc.states.size(); ++p) index[trunc.states[p]] = static_cast<int>(p);
  double lr = 0.0;
  for (std::size_t i = 0; i < trunc.left.size(); ++i) lr += trunc.left[i] * trunc.right[i];
  double lmin = INFINITY, lsum = 0.0;
  for (double x : trunc.left) lsum += x / lr;
  for (StateId q : finite_set) {
    auto it = index.find(q);
    if (it == index.end()) throw InvalidArgument("uniform_distribution_check: finite set outside truncation");
    lmin = std::min(lmin, trunc.left[it->second] / lr);
  }
  rep.alpha = rep.m1 * lmin;
  rep.beta = rep.m2 * lsum;
  SuccCache cache;
  rep.n_set_ok = true;
  rep.measure_bounds_ok = true;
  rep.worst_lower_margin = INFINITY;
  rep.worst_upper_margin = INFINITY;
  for (const auto& w : words) {
    bool found = false;
    for (StateId q : finite_set)
      if (!read(spec, cache, q, w).empty()) {
        found = true;
        break;
      }
    if (!found) rep.n_set_ok = false;
    const double scaled = sofic_closed_form(spec, trunc, w) * std::pow(trunc.lambda, static_cast<double>(w.size()));
    rep.worst_lower_margin = std::min(rep.worst_lower_margin, scaled - rep.alpha);
    rep.worst_upper_margin = std::min(rep.worst_upper_margin, rep.beta - scaled);
    ++rep.words_checked;
  }
  const double rel = 1e-9 * std::max(1.0, rep.beta);
  rep.measure_bounds_ok = rep.worst_lower_margin >= -rel && rep.worst_upper_margin >= -rel;
  return rep;
}

bool CfEigenFactsReport::all_ok() const {
  return std::all_of(facts.begin(), facts.end(), [](const EigenFact& f) { return f.ok; });
}

CfEigenFactsReport cf_eigen_facts_check(int n, double tol) {
  if (n < 2) throw InvalidArgument("cf_eigen_facts_check: n must be >= 2");
  const CountableMatrixSpec spec = cf_cover().spec;
  const PerronOptions popt{1e-14, 5'000'000};
  const TruncationStep tn = truncation_step(spec, 2 * n + 3, popt);
  const TruncationStep t2n = truncation_step(spec, 4 * n + 3, popt);
  if (!tn.used || !t2n.used) throw Error("cf_eigen_facts_check: truncation is reducible");
  CfEigenFactsReport rep;
  rep.n = n;
  rep.lambda_n = tn.lambda;
  rep.lambda_2n = t2n.lambda;
  const double lam = tn.lambda;
  // one-based index i is canonical rank i - 1
  auto l = [&](int i) { return tn.left[i - 1]; };
  auto r = [&](int i) { return tn.right[i - 1]; };
  auto r2 = [&](int i) { return t2n.right[i - 1]; };
  auto record = [&](std::string name, double worst, bool equality) {
    rep.facts.push_back({std::move(name), equality ? worst <= tol : worst < tol, worst});
  };
  record("lambda_n > 2", 2.0 - lam, false);
  double w = -INFINITY;
  for (int k = 2; k <= n; ++k) w = std::max(w, std::abs(l(2 * k) / l(2 * k + 2) - lam));
  record("(i) l_2k / l_2k+2 = lambda_n", w, true);
  w = -INFINITY;
  for (int k = 2; k <= n; ++k) w = std::max(w, lam - l(2 * k + 1) / l(2 * k + 3));
  record("(ii) l_2k+1 / l_2k+3 > lambda_n", w, false);
  record("(iii) r_2 > 1/lambda_n", 1.0 / lam - r(2), false);
  record("(iii) r_3 > 1/lambda_n^2", 1.0 / (lam * lam) - r(3), false);
  w = -INFINITY;
  for (int k = 2; k <= 2 * n; ++k) w = std::max(w, 1.0 / lam - r2(2 * k + 3));
  record("(iv) r^(2n)_2k+3 > 1/lambda_n", w, false);
  w = -INFINITY;
  for (int k = 2; k <= 2 * n; ++k) w = std::max(w, 1.0 / (lam * lam) - r2(2 * k + 2));
  record("(v) r^(2n)_2k+2 > 1/lambda_n^2", w, false);
  return rep;
}

}  // namespace shiftlab
