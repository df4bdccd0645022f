#include "shiftlab/oracle.hpp"

#include <algorithm>
#include <cstdlib>

namespace shiftlab {

ForbiddenSetShift ForbiddenSetShift::from_words(std::string name, Alphabet alphabet, std::vector<Word> words) {
  ForbiddenSetShift f;
  f.name = std::move(name);
  f.alphabet = std::move(alphabet);
  for (const auto& w : words) {
    if (w.empty()) throw InvalidArgument("forbidden words must be nonempty");
    for (int s : w)
      if (s < 0 || s >= f.alphabet.size()) throw InvalidArgument("forbidden word symbol out of range");
    f.horizon = std::max(f.horizon, static_cast<int>(w.size()));
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  f.explicit_words = words;
  f.is_forbidden = [words](const Word& w) { return std::binary_search(words.begin(), words.end(), w); };
  return f;
}

bool ForbiddenSetShift::admissible(const Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j <= w.size(); ++j) {
      if (!unbounded && static_cast<int>(j - i) > horizon) break;
      if (is_forbidden(Word(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(j)))) return false;
    }
  return true;
}

ForbiddenSetShift context_free_shift(int horizon) {
  ForbiddenSetShift f;
  f.name = "context-free";
  f.alphabet = Alphabet({"a", "b", "c"});
  f.horizon = horizon;
  f.unbounded = true;
  f.is_forbidden = [](const Word& w) {
    // a b^k c^l a with k != l
    if (w.size() < 2 || w.front() != 0 || w.back() != 0) return false;
    std::size_t i = 1, k = 0, l = 0;
    while (i + 1 < w.size() && w[i] == 1) ++i, ++k;
    while (i + 1 < w.size() && w[i] == 2) ++i, ++l;
    return i + 1 == w.size() && k != l;
  };
  return f;
}

SystemHandle SystemHandle::sft(NonnegMatrix a) {
  if (!a.is_zero_one()) throw InvalidArgument("sft matrix must be 0-1");
  SystemHandle h;
  h.kind = Kind::Sft;
  h.matrix = std::move(a);
  return h;
}

SystemHandle SystemHandle::sofic(LabeledGraph g) {
  g.validate();
  SystemHandle h;
  h.kind = Kind::Sofic;
  h.graph = std::move(g);
  return h;
}

SystemHandle SystemHandle::forbidden_set(ForbiddenSetShift f) {
  SystemHandle h;
  h.kind = Kind::Forbidden;
  h.forbidden = std::move(f);
  return h;
}

SystemHandle SystemHandle::truncated(NonnegMatrix a) {
  SystemHandle h;
  h.kind = Kind::TruncatedCountable;
  h.matrix = std::move(a);
  return h;
}

int SystemHandle::alphabet_size() const {
  switch (kind) {
    case Kind::Sft:
    case Kind::TruncatedCountable: return matrix.dim();
    case Kind::Sofic: return graph.alphabet.size();
    case Kind::Forbidden: return forbidden.alphabet.size();
  }
  return 0;
}

OracleOptions OracleOptions::from_env() {
  OracleOptions o;
  if (const char* s = std::getenv("SHIFTLAB_MAX_WORK")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) o.max_work = v;
  }
  return o;
}

namespace {

// Depth-first walk over admissible words. `forced[t] >= 0` pins position t.
class Walker {
 public:
  Walker(const SystemHandle& sys, const OracleOptions& opt) : sys_(sys), opt_(opt) {
    if (sys.kind == SystemHandle::Kind::Sofic) {
      const auto& g = sys.graph;
      next_.assign(static_cast<std::size_t>(g.vertices) * g.alphabet.size(), {});
      for (const auto& e : g.edges) next_[static_cast<std::size_t>(e.from) * g.alphabet.size() + e.label].push_back(e.to);
    }
  }

  template <class Visit>
  void run(int n, const std::vector<int>& forced, Visit&& visit) {
    if (sys_.kind == SystemHandle::Kind::Forbidden && sys_.forbidden.unbounded && n > sys_.forbidden.horizon)
      throw HorizonExceeded("oracle: word length " + std::to_string(n) + " exceeds forbidden-set horizon " +
                            std::to_string(sys_.forbidden.horizon));
    word_.clear();
    weights_.assign(1, BigInt(1));
    reach_.clear();
    if (sys_.kind == SystemHandle::Kind::Sofic) reach_.push_back(std::vector<char>(sys_.graph.vertices, 1));
    dfs(n, forced, visit);
  }

  std::uint64_t work() const { return work_; }

 private:
  template <class Visit>
  void dfs(int n, const std::vector<int>& forced, Visit& visit) {
    const int t = static_cast<int>(word_.size());
    if (t == n) {
      visit(word_, weights_.back());
      return;
    }
    const int lo = forced.empty() || forced[t] < 0 ? 0 : forced[t];
    const int hi = forced.empty() || forced[t] < 0 ? sys_.alphabet_size() : forced[t] + 1;
    for (int s = lo; s < hi; ++s) {
      if (++work_ > opt_.max_work)
        throw OracleLimitExceeded("oracle: work limit of " + std::to_string(opt_.max_work) + " steps exceeded");
      if (!push(s)) continue;
      dfs(n, forced, visit);
      pop();
    }
  }

  bool push(int s) {
    switch (sys_.kind) {
      case SystemHandle::Kind::Sft:
      case SystemHandle::Kind::TruncatedCountable: {
        BigInt w = weights_.back();
        if (!word_.empty()) {
          const BigInt& a = sys_.matrix(word_.back(), s);
          if (a.is_zero()) return false;
          w *= a;
        }
        word_.push_back(s);
        weights_.push_back(std::move(w));
        return true;
      }
      case SystemHandle::Kind::Sofic: {
        const auto& g = sys_.graph;
        std::vector<char> r(g.vertices, 0);
        bool any = false;
        for (int v = 0; v < g.vertices; ++v) {
          if (!reach_.back()[v]) continue;
          for (int to : next_[static_cast<std::size_t>(v) * g.alphabet.size() + s]) r[to] = 1, any = true;
        }
        if (!any) return false;
        reach_.push_back(std::move(r));
        word_.push_back(s);
        weights_.push_back(1);
        return true;
      }
      case SystemHandle::Kind::Forbidden: {
        const auto& f = sys_.forbidden;
        word_.push_back(s);
        const int len = static_cast<int>(word_.size());
        const int max_len = f.unbounded ? len : std::min(len, f.horizon);
        for (int L = 1; L <= max_len; ++L) {
          if (f.is_forbidden(Word(word_.end() - L, word_.end()))) {
            word_.pop_back();
            return false;
          }
        }
        weights_.push_back(1);
        return true;
      }
    }
    return false;
  }

  void pop() {
    word_.pop_back();
    weights_.pop_back();
    if (sys_.kind == SystemHandle::Kind::Sofic) reach_.pop_back();
  }

  const SystemHandle& sys_;
  OracleOptions opt_;
  std::uint64_t work_ = 0;
  Word word_;
  std::vector<BigInt> weights_;
  std::vector<std::vector<char>> reach_;
  std::vector<std::vector<int>> next_;
};

// Boolean product along w; true iff some vertex returns to itself under a power of it.
bool sofic_cycle(const LabeledGraph& g, const Word& w) {
  const int n = g.vertices;
  std::vector<char> m(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + i] = 1;
  for (int s : w) {
    std::vector<char> next(m.size(), 0);
    for (const auto& e : g.edges) {
      if (e.label != s) continue;
      for (int i = 0; i < n; ++i)
        if (m[static_cast<std::size_t>(i) * n + e.from]) next[static_cast<std::size_t>(i) * n + e.to] = 1;
    }
    m.swap(next);
  }
  // M is not nilpotent iff M^n != 0.
  std::vector<char> p = m;
  for (int r = 1; r < n; ++r) {
    std::vector<char> q(m.size(), 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (p[static_cast<std::size_t>(i) * n + k])
          for (int j = 0; j < n; ++j)
            if (m[static_cast<std::size_t>(k) * n + j]) q[static_cast<std::size_t>(i) * n + j] = 1;
    p.swap(q);
  }
  return std::any_of(p.begin(), p.end(), [](char c) { return c != 0; });
}

}  // namespace

bool is_admissible(const SystemHandle& sys, const Word& w) {
  if (w.empty()) return false;
  for (int s : w)
    if (s < 0 || s >= sys.alphabet_size()) throw InvalidArgument("symbol out of range");
  switch (sys.kind) {
    case SystemHandle::Kind::Sft:
    case SystemHandle::Kind::TruncatedCountable:
      for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (sys.matrix(w[i], w[i + 1]).is_zero()) return false;
      return true;
    case SystemHandle::Kind::Sofic: {
      Walker walker(sys, OracleOptions{});
      bool found = false;
      std::vector<int> forced(w.begin(), w.end());
      walker.run(static_cast<int>(w.size()), forced, [&](const Word&, const BigInt&) { found = true; });
      return found;
    }
    case SystemHandle::Kind::Forbidden: return sys.forbidden.admissible(w);
  }
  return false;
}

std::vector<Word> enumerate_words(const SystemHandle& sys, int n, const OracleOptions& opt) {
  if (n < 1) throw InvalidArgument("enumerate_words: n must be >= 1");
  std::vector<Word> out;
  Walker walker(sys, opt);
  walker.run(n, {}, [&](const Word& w, const BigInt&) { out.push_back(w); });
  return out;
}

BigInt count_words(const SystemHandle& sys, int n, const OracleOptions& opt) {
  if (n < 1) throw InvalidArgument("count_words: n must be >= 1");
  BigInt total = 0;
  Walker walker(sys, opt);
  walker.run(n, {}, [&](const Word&, const BigInt& wt) { total += wt; });
  return total;
}

BigInt count_cylinder(const SystemHandle& sys, const CylinderSpec& spec, const OracleOptions& opt) {
  if (spec.word.empty() || spec.k < 0 || spec.l < 0) throw InvalidArgument("count_cylinder: bad cylinder");
  const int m = static_cast<int>(spec.window());
  std::vector<int> forced(m, -1);
  for (std::size_t i = 0; i < spec.word.size(); ++i) forced[spec.k + static_cast<long>(i)] = spec.word[i];
  BigInt total = 0;
  Walker walker(sys, opt);
  walker.run(m, forced, [&](const Word&, const BigInt& wt) { total += wt; });
  return total;
}

BigInt count_periodic(const SystemHandle& sys, int n, const OracleOptions& opt) {
  if (n < 1) throw InvalidArgument("count_periodic: n must be >= 1");
  BigInt total = 0;
  Walker walker(sys, opt);
  walker.run(n, {}, [&](const Word& w, const BigInt& wt) {
    switch (sys.kind) {
      case SystemHandle::Kind::Sft:
      case SystemHandle::Kind::TruncatedCountable: total += wt * sys.matrix(w.back(), w.front()); break;
      case SystemHandle::Kind::Sofic:
        if (sofic_cycle(sys.graph, w)) total += 1;
        break;
      case SystemHandle::Kind::Forbidden: {
        // Enough repetitions that every factor of the periodic point of length
        // up to n + horizon appears; exact for families whose long forbidden
        // words are bounded by the spacing of one marker symbol.
        const int reps = 3 + sys.forbidden.horizon / n;
        Word rep;
        for (int r = 0; r < reps; ++r) rep.insert(rep.end(), w.begin(), w.end());
        if (sys.forbidden.admissible(rep)) total += 1;
        break;
      }
    }
  });
  return total;
}

std::vector<RatioCell> ratio_series(const SystemHandle& sys, const Word& word,
                                    const std::vector<std::pair<long, long>>& grid, const OracleOptions& opt) {
  std::vector<RatioCell> out;
  for (auto [k, l] : grid) {
    CylinderSpec spec{word, k, l};
    BigInt c = count_cylinder(sys, spec, opt);
    BigInt b = count_words(sys, static_cast<int>(spec.window()), opt);
    out.push_back({k, l, b.is_zero() ? Rational(0) : Rational(c, b)});
  }
  return out;
}

std::string CylinderTable::key(const Word& word, long k) {
  std::string s = std::to_string(k);
  s.push_back(':');
  for (int x : word) s.push_back(static_cast<char>(x + 1));
  return s;
}

CylinderTable::CylinderTable(const SystemHandle& sys, int m, const OracleOptions& opt) : m_(m), total_(0) {
  Walker walker(sys, opt);
  walker.run(m, {}, [&](const Word& w, const BigInt& wt) {
    total_ += wt;
    for (int k = 0; k < m; ++k)
      for (int n = 1; k + n <= m; ++n) counts_[key(Word(w.begin() + k, w.begin() + k + n), k)] += wt;
  });
}

BigInt CylinderTable::count(const Word& word, long k) const {
  auto it = counts_.find(key(word, k));
  return it == counts_.end() ? BigInt(0) : it->second;
}

Rational CylinderTable::ratio(const Word& word, long k) const {
  return total_.is_zero() ? Rational(0) : Rational(count(word, k), total_);
}

}  // namespace shiftlab
