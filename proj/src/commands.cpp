#include "shiftlab/commands.hpp"

#include "shiftlab/countable.hpp"
#include "shiftlab/krieger.hpp"
#include "shiftlab/oracle.hpp"
#include "shiftlab/sft.hpp"
#include "shiftlab/sofic.hpp"
#include "shiftlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace shiftlab {

using nlohmann::json;

namespace {

using Kind = ResolvedSystem::Kind;

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Sft: return "sft";
    case Kind::Sofic: return "sofic";
    case Kind::Forbidden: return "forbidden";
    case Kind::Countable: return "countable";
    case Kind::ContextFree: return "context-free";
  }
  return "sft";
}

std::string big(const BigInt& x) { return x.str(); }

std::string rational(const Rational& q) {
  return big(boost::multiprecision::numerator(q)) + "/" + big(boost::multiprecision::denominator(q));
}

json measure_json(const MeasureResult& r) {
  json j;
  j["value"] = r.value;
  j["method"] = to_string(r.method);
  j["admissible"] = r.admissible;
  if (r.exact) j["exact"] = rational(*r.exact);
  json d = json::array();
  for (const auto& c : r.diagnostics) d.push_back({c.k, c.l, c.ratio});
  j["series"] = d;
  return j;
}

bool is_countable(const ResolvedSystem& r) { return r.kind == Kind::Countable || r.kind == Kind::ContextFree; }

// Strongly connected component of largest spectral radius; a cover built from
// the empty past can carry transient classes in front of it.
LabeledGraph irreducible_core(const LabeledGraph& g) {
  const NonnegMatrix a = g.adjacency();
  if (is_irreducible(a)) return g;
  const BlockTriangularForm tri = block_triangularize(a);
  int best = -1;
  for (std::size_t b = 0; b < tri.blocks.size(); ++b)
    if (!tri.blocks[b].zero && (best < 0 || tri.blocks[b].rho > tri.blocks[best].rho)) best = static_cast<int>(b);
  if (best < 0) throw ReducibleMatrix("presentation has no cycles");
  const auto& keep = tri.blocks[best].indices;
  std::vector<int> local(g.vertices, -1);
  for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<int>(i);
  LabeledGraph out;
  out.vertices = static_cast<int>(keep.size());
  out.alphabet = g.alphabet;
  for (const auto& e : g.edges)
    if (local[e.from] >= 0 && local[e.to] >= 0) out.edges.push_back({local[e.from], local[e.to], e.label});
  return out;
}

// Graph the measure commands work on for finite-presentation kinds.
LabeledGraph measure_graph(const ResolvedSystem& r) {
  if (r.kind == Kind::Sofic) return r.graph;
  if (r.kind == Kind::Forbidden) return irreducible_core(r.graph);
  throw InvalidArgument("no finite presentation for " + kind_name(r.kind) + " systems");
}

void require_rr(const LabeledGraph& g, const char* what) {
  if (!is_right_resolving(g)) throw NotRightResolving(std::string(what) + " needs a right-resolving presentation");
}

std::vector<StateId> parse_states(const std::string& text) {
  std::vector<StateId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw InvalidArgument("");
    } catch (const std::exception&) {
      throw InvalidArgument("word: '" + item + "' is not an integer state");
    }
  }
  if (out.empty()) throw InvalidArgument("word: empty");
  return out;
}

Word parse_word(const ResolvedSystem& r, const std::string& text) {
  if (text.empty()) throw InvalidArgument("--word is required");
  const Alphabet& a = r.kind == Kind::ContextFree ? r.countable.labels : r.alphabet;
  return a.parse(text);
}

struct CountableLambda {
  double lambda = 0.0;
  std::string source;
  double error_bound = 0.0;
  TruncationResult trunc;
};

CountableLambda countable_lambda(const ResolvedSystem& r, const CommandOptions& opt) {
  ApproxPerronOptions ao;
  ao.tol = opt.tol;
  ao.max_size = opt.max_size;
  if (r.kind == Kind::ContextFree) ao.sizes = cf_truncation_sizes(opt.max_size);
  CountableLambda out;
  out.trunc = approx_perron(r.countable, ao);
  out.error_bound = out.trunc.error_bound;
  if (out.trunc.converged) {
    out.lambda = out.trunc.lambda;
    out.source = "truncation";
    return out;
  }
  // A positive eigenvector with eigenvalue c bounds lambda above; truncations bound it below.
  if (const auto c = constant_eigenvector_evidence(r.countable, 64);
      c && *c >= out.trunc.lambda - 1e-12 && *c - out.trunc.lambda <= 1e-3) {
    out.lambda = *c;
    out.source = "constant-eigenvector";
    out.error_bound = *c - out.trunc.lambda;
    return out;
  }
  throw NotConverged("truncated Perron values did not converge within size " + std::to_string(opt.max_size) +
                     " (last " + std::to_string(out.trunc.lambda) + ")");
}

json truncation_json(const TruncationResult& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    json j{{"size", s.size}, {"used", s.used}};
    if (s.used) {
      j["lambda"] = s.lambda;
      j["period"] = s.period;
    } else {
      j["skipped"] = s.skipped;
    }
    steps.push_back(j);
  }
  return steps;
}

json sizes_json(const TruncationResult& t) {
  json out = json::array();
  for (const auto& s : t.steps) out.push_back(s.size);
  return out;
}

struct Context {
  const ResolvedSystem& sys;
  const CommandOptions& opt;
  json results = json::object();
  json diagnostics = json::object();
  json provenance = json::object();
  int exit_code = 0;
};

// ---- perron ---------------------------------------------------------------

json spectral_json(const SpectralData& sd) {
  return {{"lambda", sd.lambda},   {"left", sd.left},         {"right", sd.right},
          {"period", sd.period},   {"classes", sd.classes},   {"iterations", sd.iterations},
          {"residual_left", sd.residual_left}, {"residual_right", sd.residual_right}};
}

void perron_finite(Context& c, const NonnegMatrix& a) {
  c.provenance["tol"] = PerronOptions{}.tol;
  if (is_irreducible(a)) {
    c.results = spectral_json(perron(a));
    c.results["irreducible"] = true;
    return;
  }
  const BlockTriangularForm tri = block_triangularize(a);
  json blocks = json::array();
  for (const auto& b : tri.blocks) blocks.push_back({{"indices", b.indices}, {"rho", b.rho}, {"zero", b.zero}});
  c.results = {{"irreducible", false}, {"lambda", tri.rho}, {"blocks", blocks}};
  c.results["dominant_block"] = tri.dominant_block_index ? json(*tri.dominant_block_index) : json(nullptr);
}

void cmd_perron(Context& c) {
  const ResolvedSystem& r = c.sys;
  switch (r.kind) {
    case Kind::Sft:
      perron_finite(c, r.matrix);
      break;
    case Kind::Sofic:
    case Kind::Forbidden: {
      const LabeledGraph g = measure_graph(r);
      perron_finite(c, g.adjacency());
      c.results["right_resolving"] = is_right_resolving(g);
      c.results["vertices"] = g.vertices;
      if (r.cover) {
        c.results["cover_states"] = r.cover->names.size();
        c.results["cover_approximate"] = r.cover->approximate || r.cover->truncated;
      }
      break;
    }
    case Kind::Countable:
    case Kind::ContextFree: {
      const CountableLambda cl = countable_lambda(r, c.opt);
      c.results = {{"lambda", cl.lambda}, {"lambda_source", cl.source}, {"error_bound", cl.error_bound},
                   {"converged", cl.trunc.converged}};
      if (r.kind == Kind::ContextFree) c.results["closed_form"] = cf_lambda_closed_form();
      const TruncationStep& last = cl.trunc.last();
      json states = json::array();
      for (StateId s : last.states) states.push_back(r.countable.name_of(s));
      c.results["states"] = states;
      c.results["left"] = last.left;
      c.results["right"] = last.right;
      c.diagnostics["truncations"] = truncation_json(cl.trunc);
      c.provenance["tol"] = c.opt.tol;
      c.provenance["truncation_sizes"] = sizes_json(cl.trunc);
      break;
    }
  }
}

// ---- measure --------------------------------------------------------------

MeasureResult measure_sft(const SftSystem& sys, const Word& w, const std::string& method, const CommandOptions& opt) {
  const LimitOptions lo{opt.tol, opt.max_window, 8};
  if (method == "closed") return sys.irreducible() ? parry_measure(sys, w) : reducible_natural_measure(sys, w);
  if (method == "limit") return natural_measure(sys, w, lo);
  if (method == "periodic") return periodic_natural_measure(sys, w, lo);
  if (method == "shift") {
    MeasureResult r;
    r.word = w;
    r.method = MeasureMethod::ShiftAverage;
    const long half = opt.max_window / 2;
    r.exact = shift_averaged_ratio(sys, w, half, half);
    r.value = to_double(*r.exact);
    r.admissible = is_admissible(sys, w);
    r.diagnostics.push_back({half, half, r.value});
    return r;
  }
  throw InvalidArgument("--method must be closed, limit, periodic or shift");
}

MeasureResult measure_sofic(const LabeledGraph& g, const Word& w, const std::string& method,
                            const CommandOptions& opt) {
  const LimitOptions lo{opt.tol, opt.max_window, 8};
  require_rr(g, "measure");
  if (method == "closed") return natural_measure(g, w);
  if (method == "limit") return natural_measure_limit(g, w, lo);
  if (method == "periodic") return periodic_natural_measure(g, w, lo);
  if (method == "edge") return edge_shift_measure(g, w, lo);
  throw InvalidArgument("--method must be closed, limit, periodic or edge");
}

struct CountableContext {
  CountableLambda cl;
  RecurrenceReport rep;
};

CountableContext countable_context(const ResolvedSystem& r, const CommandOptions& opt) {
  CountableContext cc;
  cc.cl = countable_lambda(r, opt);
  cc.rep = classify_recurrence(r.countable, cc.cl.lambda, opt.terms, &cc.cl.trunc);
  return cc;
}

CountableMeasure measure_countable(const ResolvedSystem& r, const CountableContext& cc, const CommandOptions& opt) {
  const CountableLimitOptions lo{opt.tol, 8, opt.max_window};
  const TruncationStep& step = cc.cl.trunc.last();
  if (r.kind == Kind::ContextFree) {
    const Word w = parse_word(r, opt.word);
    if (opt.method == "closed") {
      if (cc.rep.cls != RecurrenceClass::PositiveRecurrent)
        throw NotPositiveRecurrent("closed-form measure needs positive recurrence");
      CountableMeasure m;
      m.result.word = w;
      m.result.method = MeasureMethod::ClosedForm;
      m.result.value = sofic_closed_form(r.countable, step, w);
      m.closed_form = m.result.value;
      m.result.admissible = m.result.value > 0.0;
      return m;
    }
    if (opt.method == "limit") {
      const StateId e0 = cf_rank(CfKind::E, 0);
      return natural_measure_sofic(r.countable, w, {{0, 0}, {0, e0}, {e0, 0}}, cc.rep, lo, &step);
    }
    throw InvalidArgument("--method must be closed or limit for countable systems");
  }
  const std::vector<StateId> w = parse_states(opt.word);
  if (opt.method == "closed") {
    const Truncation t = truncate(r.countable, step.size);
    return markov_measure(step, t, w, cc.rep);
  }
  if (opt.method == "limit") {
    const StateId root = r.countable.root;
    return natural_measure_sft(r.countable, w, {{root, root}}, cc.rep, lo, &step);
  }
  throw InvalidArgument("--method must be closed or limit for countable systems");
}

void cmd_measure(Context& c) {
  const ResolvedSystem& r = c.sys;
  c.provenance["tol"] = c.opt.tol;
  c.provenance["max_window"] = c.opt.max_window;
  if (is_countable(r)) {
    const CountableContext cc = countable_context(r, c.opt);
    const CountableMeasure m = measure_countable(r, cc, c.opt);
    c.results = measure_json(m.result);
    c.results["closed_form"] = m.closed_form;
    c.results["trusted"] = m.trusted;
    c.results["recurrence"] = to_string(cc.rep.cls);
    c.provenance["truncation_sizes"] = sizes_json(cc.cl.trunc);
    c.provenance["terms"] = c.opt.terms;
    return;
  }
  const Word w = parse_word(r, c.opt.word);
  MeasureResult m;
  if (r.kind == Kind::Sft)
    m = measure_sft(SftSystem(r.matrix, r.alphabet), w, c.opt.method, c.opt);
  else
    m = measure_sofic(measure_graph(r), w, c.opt.method, c.opt);
  c.results = measure_json(m);
  c.results["word"] = r.alphabet.format(w);
  if (r.cover) c.results["cover_approximate"] = r.cover->approximate || r.cover->truncated;
}

// ---- census ---------------------------------------------------------------

void cmd_census(Context& c) {
  const ResolvedSystem& r = c.sys;
  const int n = c.opt.n;
  if (n < 1) throw InvalidArgument("--n must be >= 1");
  json words = json::array(), periodic = json::array();
  switch (r.kind) {
    case Kind::Sft: {
      const SftSystem sys(r.matrix, r.alphabet);
      for (int m = 1; m <= n; ++m) {
        words.push_back(big(entry_sum(sys.power(m - 1))));
        periodic.push_back(big(trace(sys.power(m))));
      }
      c.results["method"] = "matrix-power";
      break;
    }
    case Kind::Sofic:
    case Kind::Forbidden: {
      require_rr(r.graph, "census");
      if (r.cover && (r.cover->approximate || r.cover->truncated))
        throw NotConverged("census: Krieger cover did not close at depth " + std::to_string(r.cover->depth));
      for (int m = 1; m <= n; ++m) {
        words.push_back(big(count_words(r.graph, m)));
        periodic.push_back(big(count_periodic(r.graph, m)));
      }
      c.results["method"] = "subset-census";
      break;
    }
    case Kind::Countable: {
      const RecurrenceReport rep = classify_recurrence(r.countable, 1.0, std::max(n, 10));
      json returns = json::array(), first = json::array();
      for (int m = 1; m <= n; ++m) {
        returns.push_back(big(rep.t[m]));
        first.push_back(big(rep.l[m]));
      }
      c.results = {{"method", "root-returns"}, {"returns", returns}, {"first_returns", first}, {"n", n}};
      return;
    }
    case Kind::ContextFree: {
      const SystemHandle h = SystemHandle::forbidden_set(r.forbidden);
      for (int m = 1; m <= n; ++m) {
        words.push_back(big(shiftlab::count_words(h, m)));
        periodic.push_back(big(shiftlab::count_periodic(h, m)));
      }
      c.results["method"] = "oracle";
      c.provenance["horizon"] = r.forbidden.horizon;
      break;
    }
  }
  c.results["n"] = n;
  c.results["words"] = words;
  c.results["periodic"] = periodic;
}

// ---- verify ---------------------------------------------------------------

struct Mismatch {
  std::string what;
  std::string expected;
  std::string actual;
};

struct Verifier {
  std::size_t checks = 0;
  std::vector<Mismatch> mismatches;
  void check(bool ok, std::string what, std::string expected, std::string actual) {
    ++checks;
    if (!ok) mismatches.push_back({std::move(what), std::move(expected), std::move(actual)});
  }
  void equal(const BigInt& oracle, const BigInt& fast, const std::string& what) {
    check(oracle == fast, what, big(oracle), big(fast));
  }
};

// All words of length n over `symbols` letters, lexicographic.
std::vector<Word> all_words(int symbols, int n) {
  std::vector<Word> out;
  Word w(n, 0);
  while (true) {
    out.push_back(w);
    int i = n - 1;
    while (i >= 0 && ++w[i] == symbols) w[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

struct Cell {
  int m = 0;
  int n = 0;
  long k = 0;
};

std::vector<Cell> cells_for(int window_max, int max_word) {
  std::vector<Cell> cells;
  for (int m = 1; m <= window_max; ++m)
    for (int n = 1; n <= std::min(m, max_word); ++n)
      for (long k = 0; k + n <= m; ++k) cells.push_back({m, n, k});
  return cells;
}

// Cylinder counts of every (m, n, k) cell against the oracle table for window m.
template <class Fast>
void verify_cylinders(Verifier& v, const SystemHandle& h, int symbols, int window_max, Fast&& fast) {
  const int max_word = symbols <= 2 ? 3 : 2;
  std::vector<std::unique_ptr<CylinderTable>> tables(window_max + 1);
  for (int m = 1; m <= window_max; ++m) tables[m] = std::make_unique<CylinderTable>(h, m);
  const std::vector<Cell> cells = cells_for(window_max, max_word);
  std::vector<std::vector<Mismatch>> found(cells.size());
  std::vector<std::size_t> counted(cells.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& cell = cells[i];
    const long l = cell.m - cell.n - cell.k;
    for (const Word& w : all_words(symbols, cell.n)) {
      const BigInt expect = tables[cell.m]->count(w, cell.k);
      const BigInt got = fast(w, cell.k, l);
      ++counted[i];
      if (expect != got)
        found[i].push_back({"cylinder m=" + std::to_string(cell.m) + " k=" + std::to_string(cell.k) + " word=" +
                                std::to_string(w.size()) + "-symbol",
                            big(expect), big(got)});
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    v.checks += counted[i];
    for (auto& mm : found[i]) v.mismatches.push_back(std::move(mm));
  }
}

json fact_value_json(const Fact& f) { return f.value; }

bool close(double expected, double actual, double tol) { return std::abs(expected - actual) <= tol; }

bool vector_close(const json& expected, const std::vector<double>& actual, double tol) {
  if (!expected.is_array() || expected.size() != actual.size()) return false;
  for (std::size_t i = 0; i < actual.size(); ++i)
    if (!close(expected[i].get<double>(), actual[i], tol)) return false;
  return true;
}

// Recomputes one fixture fact with the fast routines.
json check_fact(const ResolvedSystem& r, const Fact& f, const CommandOptions& opt, bool& ok) {
  json actual;
  bool good = false;
  const double tol = f.tolerance;
  auto measure_value = [&](const std::string& word) {
    CommandOptions o = opt;
    o.word = word;
    o.method = "closed";
    if (is_countable(r)) return measure_countable(r, countable_context(r, o), o).result.value;
    const Word w = parse_word(r, word);
    if (r.kind == Kind::Sft) return measure_sft(SftSystem(r.matrix, r.alphabet), w, "closed", o).value;
    return measure_sofic(measure_graph(r), w, "closed", o).value;
  };
  auto lambda_value = [&]() {
    if (is_countable(r)) return countable_lambda(r, opt).lambda;
    const NonnegMatrix a = r.kind == Kind::Sft ? r.matrix : measure_graph(r).adjacency();
    return is_irreducible(a) ? perron(a).lambda : spectral_radius(a);
  };
  try {
    if (f.key == "lambda") {
      actual = lambda_value();
      good = close(f.value.get<double>(), actual.get<double>(), tol);
    } else if (f.key == "entropy") {
      actual = std::log(lambda_value());
      good = close(f.value.get<double>(), actual.get<double>(), tol);
    } else if (f.key == "period") {
      const NonnegMatrix a = r.kind == Kind::Sft ? r.matrix : measure_graph(r).adjacency();
      actual = period(a);
      good = actual == f.value;
    } else if (f.key == "irreducible") {
      actual = is_irreducible(r.kind == Kind::Sft ? r.matrix : r.graph.adjacency());
      good = actual == f.value;
    } else if (f.key == "parry_vector" || f.key == "stochastic_row") {
      const SpectralData sd = perron(r.matrix);
      const Stochastic st = stochasticize(r.matrix, sd);
      std::vector<double> v;
      if (f.key == "parry_vector") {
        v = st.p;
      } else {
        const int dim = r.matrix.dim(), row = f.n.value_or(0);
        v.assign(st.P.begin() + row * dim, st.P.begin() + (row + 1) * dim);
      }
      actual = v;
      good = vector_close(f.value, v, tol);
    } else if (f.key == "cyclic_classes") {
      actual = perron(r.matrix).classes;
      good = actual == f.value;
    } else if (f.key == "measure") {
      actual = measure_value(f.word.value_or(""));
      good = close(f.value.get<double>(), actual.get<double>(), tol);
    } else if (f.key == "census_words" || f.key == "census_periodic") {
      CommandOptions o = opt;
      o.n = f.n.value_or(1);
      Context cc{r, o};
      cmd_census(cc);
      actual = cc.results[f.key == "census_words" ? "words" : "periodic"].back();
      good = actual.get<std::string>() == std::to_string(f.value.get<long long>());
    } else if (f.key == "no_natural_measure") {
      try {
        (void)reducible_natural_measure(SftSystem(r.matrix, r.alphabet), Word{0});
        actual = false;
      } catch (const NoNaturalMeasure&) {
        actual = true;
      }
      good = actual == f.value;
    } else if (f.key == "shift_average") {
      const long half = f.n.value_or(10000) / 2;
      actual = shift_averaged_measure(SftSystem(r.matrix, r.alphabet), r.alphabet.parse(f.word.value_or("")), half,
                                      half);
      good = close(f.value.get<double>(), actual.get<double>(), tol);
    } else if (f.key == "random_walk_ratio") {
      // Returns to the root take an even number of steps: margins 2k and 2l.
      const long k = f.n.value_or(1);
      const Rational fast = countable_sft_ratio(r.countable, {r.countable.root}, r.countable.root,
                                                r.countable.root, 2 * k, 2 * k);
      actual = rational(fast);
      good = actual == f.value && rational(random_walk_ratio(k, k)) == f.value;
    } else if (f.key == "recurrence") {
      actual = to_string(countable_context(r, opt).rep.cls);
      good = actual == f.value;
    } else if (f.key == "constant_eigenvalue") {
      const auto c = constant_eigenvector_evidence(r.countable, 64);
      actual = c ? json(*c) : json(nullptr);
      good = c && close(f.value.get<double>(), *c, tol);
    } else {
      actual = "unknown fact key";
    }
  } catch (const Error& e) {
    actual = std::string("error: ") + e.what();
    good = false;
  }
  ok = good;
  json j{{"key", f.key}, {"expected", fact_value_json(f)}, {"actual", actual}, {"ok", good}, {"source", f.source},
         {"tolerance", tol}};
  if (f.word) j["word"] = *f.word;
  if (f.n) j["n"] = *f.n;
  if (!f.oracle.empty()) j["oracle"] = f.oracle;
  return j;
}

void verify_countable(Verifier& v, const ResolvedSystem& r, int n_max, int window_max) {
  const CountableMatrixSpec& spec = r.countable;
  const int horizon = std::max(n_max, window_max);
  // A closed walk of length <= horizon stays within depth horizon / 2 of the root.
  int size = 8;
  Truncation t = truncate(spec, size);
  while (static_cast<int>(t.states.size()) == size && t.depth.back() <= horizon / 2 + 1) {
    size *= 2;
    t = truncate(spec, size);
  }
  const int root = t.position(spec.root);
  const RecurrenceReport rep = classify_recurrence(spec, 1.0, std::max(horizon, 10));
  std::vector<NonnegMatrix> powers{NonnegMatrix::identity(t.matrix.dim())};
  for (int m = 1; m <= horizon; ++m) {
    powers.push_back(mat_mul(powers.back(), t.matrix));
    v.equal(powers[m](root, root), rep.t[m], "root returns n=" + std::to_string(m));
  }
  for (int m = 2; m <= window_max; ++m)
    for (long k = 0; k < m; ++k) {
      const long l = m - 1 - k;
      const BigInt den = powers[m - 1](root, root);
      if (den.is_zero()) continue;
      const Rational dense(powers[k](root, root) * powers[l](root, root), den);
      const Rational sparse = countable_sft_ratio(spec, {spec.root}, spec.root, spec.root, k, l);
      v.check(dense == sparse, "root cylinder k=" + std::to_string(k) + " l=" + std::to_string(l), rational(dense),
              rational(sparse));
    }
}

void cmd_verify(Context& c, const std::vector<Fact>& facts) {
  const ResolvedSystem& r = c.sys;
  const int n_max = c.opt.n_max, window_max = c.opt.window_max;
  if (n_max < 1 || window_max < 1) throw InvalidArgument("--n-max and --window-max must be >= 1");
  Verifier v;
  switch (r.kind) {
    case Kind::Sft: {
      const SftSystem sys(r.matrix, r.alphabet);
      const SystemHandle h = SystemHandle::sft(r.matrix);
      for (int n = 1; n <= n_max; ++n) {
        v.equal(count_words(h, n), entry_sum(sys.power(n - 1)), "|B_" + std::to_string(n) + "|");
        v.equal(count_periodic(h, n), trace(sys.power(n)), "|P_" + std::to_string(n) + "|");
      }
      verify_cylinders(v, h, r.matrix.dim(), window_max,
                       [&](const Word& w, long k, long l) { return cylinder_count(sys, w, k, l); });
      break;
    }
    case Kind::Sofic:
    case Kind::Forbidden: {
      require_rr(r.graph, "verify");
      const SystemHandle h =
          r.kind == Kind::Sofic ? SystemHandle::sofic(r.graph) : SystemHandle::forbidden_set(r.forbidden);
      for (int n = 1; n <= n_max; ++n) {
        v.equal(count_words(h, n), count_words(r.graph, n), "|B_" + std::to_string(n) + "|");
        v.equal(count_periodic(h, n), count_periodic(r.graph, n), "|P_" + std::to_string(n) + "|");
      }
      verify_cylinders(v, h, r.graph.alphabet.size(), window_max,
                       [&](const Word& w, long k, long l) { return count_cylinder(r.graph, w, k, l); });
      break;
    }
    case Kind::Countable:
      verify_countable(v, r, n_max, window_max);
      break;
    case Kind::ContextFree: {
      const int len = std::min(n_max, 7);
      for (int n = 1; n <= len; ++n) {
        const std::vector<Word> words = all_words(3, n);
        std::vector<char> fast(words.size());
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < words.size(); ++i)
          fast[i] = countable_word_admissible(r.countable, words[i], 2 * n + 8);
        for (std::size_t i = 0; i < words.size(); ++i) {
          const bool oracle = r.forbidden.admissible(words[i]);
          v.check(oracle == static_cast<bool>(fast[i]), "cover reads " + r.countable.labels.format(words[i]),
                  oracle ? "admissible" : "forbidden", fast[i] ? "admissible" : "forbidden");
        }
      }
      break;
    }
  }
  json fact_results = json::array();
  std::size_t facts_failed = 0;
  for (const auto& f : facts) {
    bool ok = false;
    fact_results.push_back(check_fact(r, f, c.opt, ok));
    if (!ok) ++facts_failed;
  }
  json mism = json::array();
  for (std::size_t i = 0; i < v.mismatches.size() && i < 20; ++i)
    mism.push_back({{"what", v.mismatches[i].what},
                    {"oracle", v.mismatches[i].expected},
                    {"fast", v.mismatches[i].actual}});
  const bool ok = v.mismatches.empty() && facts_failed == 0;
  c.results = {{"ok", ok},
               {"checks", v.checks},
               {"mismatch_count", v.mismatches.size()},
               {"mismatches", mism},
               {"facts", fact_results},
               {"facts_failed", facts_failed}};
  c.provenance["n_max"] = n_max;
  c.provenance["window_max"] = window_max;
  c.provenance["max_work"] = OracleOptions::from_env().max_work;
  if (!ok) c.exit_code = 5;
}

// ---- classify -------------------------------------------------------------

json partial_json(const std::vector<PartialSum>& s) {
  json out = json::array();
  for (const auto& p : s) out.push_back({p.terms, p.value});
  return out;
}

void cmd_classify(Context& c) {
  const ResolvedSystem& r = c.sys;
  RecurrenceReport rep;
  if (is_countable(r)) {
    const CountableContext cc = countable_context(r, c.opt);
    rep = cc.rep;
    c.results["lambda_source"] = cc.cl.source;
    c.provenance["truncation_sizes"] = sizes_json(cc.cl.trunc);
  } else {
    const NonnegMatrix a = r.kind == Kind::Sft ? r.matrix : measure_graph(r).adjacency();
    if (!is_irreducible(a)) throw ReducibleMatrix("classify: matrix is reducible");
    const CountableMatrixSpec spec = finite_spec(a, r.name);
    rep = classify_recurrence(spec, perron(a).lambda, c.opt.terms);
    c.results["lambda_source"] = "perron";
  }
  c.results["class"] = to_string(rep.cls);
  c.results["lambda"] = rep.lambda;
  c.results["evidence"] = rep.evidence;
  c.results["t_increment_ratio"] = rep.t_increment_ratio;
  c.results["nl_increment_ratio"] = rep.nl_increment_ratio;
  c.results["constant_eigenvalue"] = rep.constant_eigenvalue ? json(*rep.constant_eigenvalue) : json(nullptr);
  c.diagnostics["t_partial"] = partial_json(rep.t_partial);
  c.diagnostics["nl_partial"] = partial_json(rep.nl_partial);
  c.diagnostics["lr_partial"] = partial_json(rep.lr_partial);
  json t = json::array(), l = json::array();
  for (int n = 0; n <= std::min(rep.terms, 20); ++n) {
    t.push_back(big(rep.t[n]));
    l.push_back(big(rep.l[n]));
  }
  c.diagnostics["t_head"] = t;
  c.diagnostics["l_head"] = l;
  c.provenance["terms"] = rep.terms;
}

// ---- entropy --------------------------------------------------------------

void cmd_entropy(Context& c) {
  const ResolvedSystem& r = c.sys;
  c.provenance["tol"] = c.opt.tol;
  const int partial_n = 8;
  json partial = json::array();
  if (is_countable(r)) {
    const CountableLambda cl = countable_lambda(r, c.opt);
    c.results = {{"lambda", cl.lambda}, {"entropy", std::log(cl.lambda)}, {"lambda_source", cl.source},
                 {"error_bound", cl.error_bound}};
    c.provenance["truncation_sizes"] = sizes_json(cl.trunc);
    return;
  }
  if (r.kind == Kind::Sft) {
    const SftSystem sys(r.matrix, r.alphabet);
    if (sys.irreducible()) {
      c.results["entropy"] = entropy(sys);
      c.results["lambda"] = sys.spectral().lambda;
      for (int n = 1; n <= partial_n; ++n) partial.push_back({n, measure_entropy_partial(sys, n)});
    } else {
      const double rho = spectral_radius(r.matrix);
      c.results["entropy"] = std::log(rho);
      c.results["lambda"] = rho;
    }
  } else {
    const LabeledGraph g = measure_graph(r);
    require_rr(g, "entropy");
    const double lambda = perron(g.adjacency()).lambda;
    c.results["entropy"] = std::log(lambda);
    c.results["lambda"] = lambda;
    for (int n = 1; n <= partial_n; ++n) partial.push_back({n, sofic_measure_entropy_partial(g, n)});
  }
  c.diagnostics["measure_entropy_partial"] = partial;
}

// ---- sample ---------------------------------------------------------------

void cmd_sample(Context& c) {
  const ResolvedSystem& r = c.sys;
  if (is_countable(r)) throw InvalidArgument("sample: countable systems have no finite sampler");
  if (c.opt.length < 1000) throw InvalidArgument("--length must be >= 1000");
  const std::size_t length = static_cast<std::size_t>(c.opt.length);
  Word orbit;
  double mu = 0.0;
  Word w;
  const std::string word_text = c.opt.word.empty() ? r.alphabet.token(0) : c.opt.word;
  w = r.alphabet.parse(word_text);
  if (r.kind == Kind::Sft) {
    const SftSystem sys(r.matrix, r.alphabet);
    if (!sys.irreducible()) throw ReducibleMatrix("sample: matrix is reducible");
    orbit = sample_orbit(sys, length, c.opt.seed);
    mu = parry_measure(sys, w).value;
  } else {
    const LabeledGraph g = measure_graph(r);
    require_rr(g, "sample");
    orbit = sample_labels(g, length, c.opt.seed);
    mu = natural_measure(g, w).value;
  }
  const std::size_t positions = length - w.size() + 1;
  const std::size_t batches = 50;
  const std::size_t batch = positions / batches;
  std::vector<double> freq(batches, 0.0);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < positions; ++i) {
    if (!std::equal(w.begin(), w.end(), orbit.begin() + static_cast<std::ptrdiff_t>(i))) continue;
    ++hits;
    if (i / batch < batches) freq[i / batch] += 1.0;
  }
  double mean = 0.0;
  for (double& f : freq) mean += (f /= static_cast<double>(batch));
  mean /= batches;
  double var = 0.0;
  for (double f : freq) var += (f - mean) * (f - mean);
  var /= batches - 1;
  const double se = std::sqrt(var / batches);
  const double empirical = static_cast<double>(hits) / static_cast<double>(positions);
  c.results = {{"word", r.alphabet.format(w)},
               {"empirical", empirical},
               {"hits", hits},
               {"positions", positions},
               {"measure", mu},
               {"standard_error", se},
               {"z", se > 0.0 ? (empirical - mu) / se : 0.0},
               {"within_3se", std::abs(empirical - mu) <= 3.0 * se}};
  const std::size_t head = std::min<std::size_t>(orbit.size(), 64);
  c.diagnostics["orbit_head"] = r.alphabet.format(Word(orbit.begin(), orbit.begin() + static_cast<long>(head)));
  c.diagnostics["batches"] = batches;
  c.provenance["seed"] = c.opt.seed;
  c.provenance["length"] = c.opt.length;
}

json args_json(const std::string& command, const CommandOptions& o) {
  json a = json::object();
  if (command == "measure") {
    a = {{"method", o.method}, {"tol", o.tol}, {"max_window", o.max_window}, {"word", o.word}};
    if (o.method == "closed" || o.method == "limit") a["terms"] = o.terms;
  } else if (command == "census") {
    a = {{"n", o.n}};
  } else if (command == "verify") {
    a = {{"n_max", o.n_max}, {"window_max", o.window_max}};
  } else if (command == "classify") {
    a = {{"terms", o.terms}, {"max_size", o.max_size}};
  } else if (command == "entropy" || command == "perron") {
    a = {{"tol", o.tol}, {"max_size", o.max_size}};
  } else if (command == "sample") {
    a = {{"length", o.length}, {"seed", o.seed}, {"word", o.word}};
  }
  return a;
}

}  // namespace

CommandOutcome run_command(const std::string& command, const ResolvedSystem& sys, const CommandOptions& opt,
                           const std::vector<Fact>& facts) {
  Context c{sys, opt};
  if (command == "perron") {
    cmd_perron(c);
  } else if (command == "measure") {
    cmd_measure(c);
  } else if (command == "census") {
    cmd_census(c);
  } else if (command == "verify") {
    cmd_verify(c, facts);
  } else if (command == "classify") {
    cmd_classify(c);
  } else if (command == "entropy") {
    cmd_entropy(c);
  } else if (command == "sample") {
    cmd_sample(c);
  } else {
    throw InvalidArgument("unknown command " + command);
  }
  CommandOutcome out;
  out.exit_code = c.exit_code;
  out.document = {{"command", {{"name", command}, {"args", args_json(command, opt)}}},
                  {"system", {{"name", sys.name}, {"kind", kind_name(sys.kind)}, {"digest", sys.digest}}},
                  {"results", c.results},
                  {"diagnostics", c.diagnostics},
                  {"provenance", c.provenance}};
  return out;
}

CommandOutcome run_command(const std::string& command, const std::string& source, const CommandOptions& opt) {
  const ResolvedSystem sys = resolve_source(source);
  std::vector<Fact> facts;
  if (command == "verify" && source.rfind("builtin:", 0) != 0) {
    const Fixture fx = load_fixture(source);
    facts = fx.facts;
  }
  return run_command(command, sys, opt, facts);
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const InvalidArgument*>(&e) ||
      dynamic_cast<const DimensionMismatch*>(&e) || dynamic_cast<const NotRightResolving*>(&e) ||
      dynamic_cast<const ReducibleMatrix*>(&e) || dynamic_cast<const OracleLimitExceeded*>(&e) ||
      dynamic_cast<const HorizonExceeded*>(&e) || dynamic_cast<const StateCapExceeded*>(&e))
    return 3;
  if (dynamic_cast<const NotConverged*>(&e) || dynamic_cast<const NoNaturalMeasure*>(&e) ||
      dynamic_cast<const NotPositiveRecurrent*>(&e))
    return 4;
  return 1;
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace shiftlab
