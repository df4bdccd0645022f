#include "shiftlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>

namespace shiftlab {

namespace {

using Adj = std::vector<std::vector<int>>;

Adj adjacency(const kernels::Csr& a) {
  Adj g(a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int e = a.row_start[i]; e < a.row_start[i + 1]; ++e)
      if (a.val[e] != 0.0) g[i].push_back(a.col[e]);
  return g;
}

Adj adjacency(const NonnegMatrix& a) {
  Adj g(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (!a(i, j).is_zero()) g[i].push_back(j);
  return g;
}

// Tarjan's algorithm, iterative. Components come out in reverse topological order.
std::vector<std::vector<int>> tarjan(const Adj& g) {
  const int n = static_cast<int>(g.size());
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::vector<int>> comps;
  int counter = 0;
  std::vector<std::pair<int, std::size_t>> call;
  for (int s = 0; s < n; ++s) {
    if (index[s] >= 0) continue;
    call.emplace_back(s, 0);
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos == 0 && index[v] < 0) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      if (pos < g[v].size()) {
        int w = g[v][pos++];
        if (index[w] < 0) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      int done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return comps;
}

bool strongly_connected(const Adj& g) {
  const int n = static_cast<int>(g.size());
  if (n == 0) return false;
  if (n == 1) return std::find(g[0].begin(), g[0].end(), 0) != g[0].end();
  return tarjan(g).size() == 1;
}

std::vector<int> bfs_levels(const Adj& g) {
  std::vector<int> level(g.size(), -1);
  std::queue<int> q;
  level[0] = 0;
  q.push(0);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g[u])
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        q.push(v);
      }
  }
  return level;
}

int period_of(const Adj& g) {
  auto level = bfs_levels(g);
  int p = 0;
  for (std::size_t u = 0; u < g.size(); ++u)
    for (int v : g[u]) p = std::gcd(p, std::abs(level[u] + 1 - level[v]));
  return p;
}

std::vector<std::vector<int>> classes_of(const Adj& g, int p) {
  auto level = bfs_levels(g);
  std::vector<std::vector<int>> cls(p);
  for (std::size_t v = 0; v < g.size(); ++v) cls[level[v] % p].push_back(static_cast<int>(v));
  return cls;
}

using MatVec = void (*)(const kernels::Csr&, const std::vector<double>&, std::vector<double>&);

MatVec pick(const kernels::Csr& a) {
  return a.rows >= kernels::kParallelThreshold ? kernels::matvec_parallel : kernels::matvec_serial;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

struct IterResult {
  std::vector<double> x;
  double rq = 0.0;
  long iterations = 0;
};

// Power iteration for the Perron root of M^p restricted to one cyclic class.
IterResult iterate_class(const kernels::Csr& m, const std::vector<int>& cls, int p, const PerronOptions& opt) {
  MatVec mv = pick(m);
  std::vector<double> x(m.rows, 0.0), y, tmp;
  for (int i : cls) x[i] = 1.0;
  double prev = -1.0;
  for (long it = 1; it <= opt.max_iter; ++it) {
    y = x;
    for (int r = 0; r < p; ++r) {
      mv(m, y, tmp);
      y.swap(tmp);
    }
    const double rq = dot(x, y) / dot(x, x);
    if (!(rq > 0.0)) throw ReducibleMatrix("perron: iteration collapsed to zero");
    double resid = 0.0;
    for (int i : cls) resid = std::max(resid, std::abs(y[i] - rq * x[i]));
    double mx = 0.0;
    for (int i : cls) mx = std::max(mx, y[i]);
    const bool stable = prev > 0.0 && std::abs(rq - prev) <= opt.tol * rq && resid <= opt.tol * rq;
    for (double& e : y) e /= mx;
    x.swap(y);
    if (stable) return {x, rq, it};
    prev = rq;
  }
  throw NotConverged("perron: power iteration did not converge within " + std::to_string(opt.max_iter) +
                     " iterations");
}

// Spreads a vector supported on class 0 over all classes: w <- M w / lambda, p-1 times.
std::vector<double> propagate(const kernels::Csr& m, const std::vector<double>& x0, int p, double lambda) {
  MatVec mv = pick(m);
  std::vector<double> v = x0, w = x0, tmp;
  for (int s = 1; s < p; ++s) {
    mv(m, w, tmp);
    for (double& e : tmp) e /= lambda;
    w.swap(tmp);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
  }
  return v;
}

double residual(const kernels::Csr& m, const std::vector<double>& v, double lambda) {
  std::vector<double> y;
  pick(m)(m, v, y);
  double r = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) r = std::max(r, std::abs(y[i] - lambda * v[i]));
  return r;
}

}  // namespace

bool is_irreducible(const NonnegMatrix& a) { return strongly_connected(adjacency(a)); }

int period(const NonnegMatrix& a) {
  auto g = adjacency(a);
  if (!strongly_connected(g)) throw ReducibleMatrix("period: matrix is reducible");
  return period_of(g);
}

std::vector<std::vector<int>> cyclic_classes(const NonnegMatrix& a, int p) { return classes_of(adjacency(a), p); }

SpectralData perron_csr(const kernels::Csr& a, const PerronOptions& opt) {
  if (!(opt.tol > 0.0)) throw InvalidArgument("perron: tol must be positive");
  auto g = adjacency(a);
  if (!strongly_connected(g)) throw ReducibleMatrix("perron: matrix is reducible");
  SpectralData sd;
  sd.period = period_of(g);
  sd.classes = classes_of(g, sd.period);
  const int p = sd.period;
  const auto at = a.transposed();

  auto r = iterate_class(a, sd.classes[0], p, opt);
  auto l = iterate_class(at, sd.classes[0], p, opt);
  sd.iterations = std::max(r.iterations, l.iterations);
  sd.lambda = std::pow(r.rq, 1.0 / p);
  sd.right = propagate(a, r.x, p, sd.lambda);
  sd.left = propagate(at, l.x, p, sd.lambda);

  const double vmax = *std::max_element(sd.right.begin(), sd.right.end());
  for (double& e : sd.right) e /= vmax;
  const double uv = dot(sd.left, sd.right);
  for (double& e : sd.left) e /= uv;
  sd.residual_right = residual(a, sd.right, sd.lambda);
  sd.residual_left = residual(at, sd.left, sd.lambda);
  return sd;
}

SpectralData perron(const NonnegMatrix& a, const PerronOptions& opt) {
  return perron_csr(kernels::Csr::from_dense(a), opt);
}

CyclicDecomposition cyclic_decomposition(const NonnegMatrix& a) {
  const int p = period(a);
  CyclicDecomposition cd;
  cd.blocks = cyclic_classes(a, p);
  for (const auto& b : cd.blocks) cd.permutation.insert(cd.permutation.end(), b.begin(), b.end());
  const NonnegMatrix ap = mat_power(a, static_cast<std::uint64_t>(p));
  for (const auto& b : cd.blocks) cd.block_matrices.push_back(ap.submatrix(b));
  return cd;
}

RotatedPair rotated_eigenvectors(const NonnegMatrix& a, const SpectralData& sd, int j) {
  const int p = sd.period;
  if (p < 2 || j < 2 || j > p) throw InvalidArgument("rotated_eigenvectors: j must lie in [2, p] with p >= 2");
  const int n = a.dim();
  std::vector<int> cls(n, 0);
  for (int b = 0; b < p; ++b)
    for (int v : sd.classes[b]) cls[v] = b;
  const double theta = 2.0 * std::numbers::pi / p;
  RotatedPair rp;
  rp.eigenvalue = sd.lambda * std::polar(1.0, theta * (j - 1));
  rp.right.resize(n);
  rp.left.resize(n);
  for (int k = 0; k < n; ++k) {
    const double phase = theta * (j - 1) * cls[k];
    rp.right[k] = sd.right[k] * std::polar(1.0, phase);
    rp.left[k] = sd.left[k] * std::polar(1.0, -phase);
  }
  const auto ad = a.to_double();
  for (int i = 0; i < n; ++i) {
    std::complex<double> s = 0.0;
    for (int k = 0; k < n; ++k) s += ad[static_cast<std::size_t>(i) * n + k] * rp.right[k];
    rp.residual = std::max(rp.residual, std::abs(s - rp.eigenvalue * rp.right[i]));
  }
  return rp;
}

std::vector<double> limit_matrix(const NonnegMatrix& a, const SpectralData& sd, LimitMode mode) {
  if (mode == LimitMode::Power && sd.period != 1)
    throw InvalidArgument("limit_matrix: power mode requires an aperiodic matrix");
  const int n = a.dim();
  std::vector<double> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i) * n + j] = sd.right[i] * sd.left[j];
  return m;
}

double limit_deviation(const NonnegMatrix& a, const SpectralData& sd, LimitMode mode, long k) {
  const auto target = limit_matrix(a, sd, mode);
  const int n = a.dim();
  const int terms = mode == LimitMode::Cesaro ? sd.period : 1;
  std::vector<double> acc(target.size(), 0.0);
  NonnegMatrix ak = mat_power(a, static_cast<std::uint64_t>(k));
  for (int t = 0; t < terms; ++t) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        acc[static_cast<std::size_t>(i) * n + j] += scaled_ratio(ak(i, j), sd.lambda, k + t) / terms;
    if (t + 1 < terms) ak = mat_mul(ak, a);
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i) dev = std::max(dev, std::abs(acc[i] - target[i]));
  return dev;
}

Stochastic stochasticize(const NonnegMatrix& a, const SpectralData& sd) {
  const int n = a.dim();
  if (static_cast<int>(sd.right.size()) != n) throw DimensionMismatch("stochasticize: spectral data mismatch");
  Stochastic s;
  s.p.resize(n);
  s.P.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    s.p[i] = sd.left[i] * sd.right[i];
    for (int j = 0; j < n; ++j)
      s.P[static_cast<std::size_t>(i) * n + j] = to_double(a(i, j)) * sd.right[j] / (sd.lambda * sd.right[i]);
  }
  return s;
}

BlockTriangularForm block_triangularize(const NonnegMatrix& a, const PerronOptions& opt) {
  auto comps = tarjan(adjacency(a));
  std::reverse(comps.begin(), comps.end());
  BlockTriangularForm f;
  for (auto& c : comps) {
    TriangularBlock b;
    b.indices = c;
    f.permutation.insert(f.permutation.end(), c.begin(), c.end());
    const NonnegMatrix sub = a.submatrix(c);
    if (c.size() == 1 && sub(0, 0).is_zero()) {
      b.zero = true;
      b.rho = 0.0;
    } else if (c.size() == 1) {
      b.rho = to_double(sub(0, 0));
    } else {
      b.rho = perron(sub, opt).lambda;
    }
    f.rho = std::max(f.rho, b.rho);
    f.blocks.push_back(std::move(b));
  }
  const double gap = 1e-9 * std::max(1.0, f.rho);
  int best = -1, attaining = 0;
  for (std::size_t i = 0; i < f.blocks.size(); ++i) {
    if (f.blocks[i].rho >= f.rho - gap) {
      ++attaining;
      best = static_cast<int>(i);
    }
  }
  if (attaining == 1 && f.rho > 0.0) f.dominant_block_index = best;
  return f;
}

double spectral_radius(const NonnegMatrix& a, const PerronOptions& opt) { return block_triangularize(a, opt).rho; }

}  // namespace shiftlab
