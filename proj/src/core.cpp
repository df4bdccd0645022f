#include "shiftlab/core.hpp"

#include "shiftlab/kernels.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace shiftlab {

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  std::set<std::string> seen;
  for (const auto& t : tokens_) {
    if (t.empty()) throw InvalidArgument("alphabet token must be nonempty");
    if (t.find(',') != std::string::npos) throw InvalidArgument("alphabet token must not contain ','");
    if (!seen.insert(t).second) throw InvalidArgument("duplicate alphabet token '" + t + "'");
  }
}

Alphabet Alphabet::numbered(int size, int first) {
  std::vector<std::string> t;
  for (int i = 0; i < size; ++i) t.push_back(std::to_string(first + i));
  return Alphabet(std::move(t));
}

std::optional<int> Alphabet::find(std::string_view token) const {
  for (int i = 0; i < size(); ++i)
    if (tokens_[i] == token) return i;
  return std::nullopt;
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  if (text.empty()) throw InvalidArgument("empty word");
  if (text.find(',') == std::string_view::npos && !find(text)) {
    for (char ch : text) {
      auto id = find(std::string_view(&ch, 1));
      if (!id) throw InvalidArgument("unknown symbol '" + std::string(1, ch) + "' in word '" + std::string(text) + "'");
      w.push_back(*id);
    }
    return w;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    auto tok = text.substr(pos, next - pos);
    auto id = find(tok);
    if (!id) throw InvalidArgument("unknown symbol '" + std::string(tok) + "'");
    w.push_back(*id);
    pos = next + 1;
  }
  return w;
}

std::string Alphabet::format(const Word& w, std::string_view sep) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += sep;
    out += token(w[i]);
  }
  return out;
}

NonnegMatrix::NonnegMatrix(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim, BigInt(0)) {
  if (dim <= 0) throw InvalidArgument("matrix dimension must be positive");
}

NonnegMatrix::NonnegMatrix(int dim, std::vector<BigInt> entries) : dim_(dim), data_(std::move(entries)) {
  if (dim <= 0) throw InvalidArgument("matrix dimension must be positive");
  if (data_.size() != static_cast<std::size_t>(dim) * dim) throw DimensionMismatch("matrix is not square");
  for (const auto& x : data_)
    if (x < 0) throw InvalidArgument("matrix entries must be nonnegative");
}

NonnegMatrix NonnegMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw InvalidArgument("matrix must have at least one row");
  std::vector<BigInt> d;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw DimensionMismatch("matrix is not square");
    for (long long x : r) d.emplace_back(x);
  }
  return NonnegMatrix(n, std::move(d));
}

NonnegMatrix NonnegMatrix::identity(int dim) {
  NonnegMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, 1);
  return m;
}

void NonnegMatrix::set(int i, int j, BigInt value) {
  if (value < 0) throw InvalidArgument("matrix entries must be nonnegative");
  data_[index(i, j)] = std::move(value);
}

bool NonnegMatrix::is_zero_one() const {
  for (const auto& x : data_)
    if (x > 1) return false;
  return true;
}

bool NonnegMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<double> NonnegMatrix::to_double() const {
  std::vector<double> out;
  out.reserve(data_.size());
  for (const auto& x : data_) out.push_back(shiftlab::to_double(x));
  return out;
}

NonnegMatrix NonnegMatrix::submatrix(const std::vector<int>& indices) const {
  const int n = static_cast<int>(indices.size());
  NonnegMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, (*this)(indices[i], indices[j]));
  return m;
}

NonnegMatrix NonnegMatrix::permuted(const std::vector<int>& order) const {
  if (static_cast<int>(order.size()) != dim_) throw DimensionMismatch("permutation size mismatch");
  return submatrix(order);
}

std::string NonnegMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < dim_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < dim_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

void LabeledGraph::validate() const {
  if (vertices <= 0) throw InvalidArgument("labeled graph needs at least one vertex");
  for (const auto& e : edges) {
    if (e.from < 0 || e.from >= vertices || e.to < 0 || e.to >= vertices)
      throw InvalidArgument("edge endpoint out of range");
    if (e.label < 0 || e.label >= alphabet.size()) throw InvalidArgument("edge label out of range");
  }
}

NonnegMatrix LabeledGraph::adjacency() const {
  NonnegMatrix m(vertices);
  for (const auto& e : edges) m.add(e.from, e.to, 1);
  return m;
}

NonnegMatrix mat_mul(const NonnegMatrix& a, const NonnegMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("mat_mul: dimension mismatch");
  std::vector<BigInt> c;
  if (a.dim() >= kernels::kParallelThreshold)
    kernels::bigmul_parallel(a.dim(), a.data(), b.data(), c);
  else
    kernels::bigmul_serial(a.dim(), a.data(), b.data(), c);
  return NonnegMatrix(a.dim(), std::move(c));
}

NonnegMatrix mat_power(const NonnegMatrix& a, std::uint64_t n) {
  NonnegMatrix result = NonnegMatrix::identity(a.dim());
  NonnegMatrix base = a;
  while (n > 0) {
    if (n & 1U) result = mat_mul(result, base);
    n >>= 1U;
    if (n > 0) base = mat_mul(base, base);
  }
  return result;
}

BigInt entry_sum(const NonnegMatrix& a) {
  BigInt s = 0;
  for (const auto& x : a.data()) s += x;
  return s;
}

BigInt trace(const NonnegMatrix& a) {
  BigInt s = 0;
  for (int i = 0; i < a.dim(); ++i) s += a(i, i);
  return s;
}

std::vector<BigInt> row_sums(const NonnegMatrix& a) {
  std::vector<BigInt> s(a.dim(), BigInt(0));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s[i] += a(i, j);
  return s;
}

std::vector<BigInt> col_sums(const NonnegMatrix& a) {
  std::vector<BigInt> s(a.dim(), BigInt(0));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s[j] += a(i, j);
  return s;
}

PowerTable::PowerTable(NonnegMatrix a) {
  powers_.push_back(NonnegMatrix::identity(a.dim()));
  powers_.push_back(std::move(a));
}

const NonnegMatrix& PowerTable::power(std::size_t n) {
  while (powers_.size() <= n) powers_.push_back(mat_mul(powers_.back(), powers_[1]));
  return powers_[n];
}

std::string to_string(MeasureMethod m) {
  switch (m) {
    case MeasureMethod::ClosedForm: return "closed-form";
    case MeasureMethod::Limit: return "limit";
    case MeasureMethod::PeriodicLimit: return "periodic-limit";
    case MeasureMethod::Oracle: return "oracle";
    case MeasureMethod::ShiftAverage: return "shift-average";
  }
  return "unknown";
}

double log_big(const BigInt& x) {
  if (x <= 0) throw InvalidArgument("log_big: argument must be positive");
  const unsigned bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 1000) return std::log(x.convert_to<double>());
  const unsigned shift = bits - 64;
  BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double scaled_ratio(const BigInt& x, double scale, long n) {
  if (x.is_zero()) return 0.0;
  return std::exp(log_big(x) - static_cast<double>(n) * std::log(scale));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }
double to_double(const BigInt& x) { return x.convert_to<double>(); }

}  // namespace shiftlab
