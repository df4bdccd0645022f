#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shiftlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Error hierarchy. Each subclass maps to one CLI exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DimensionMismatch : public Error { using Error::Error; };
class InvalidArgument : public Error { using Error::Error; };
class ReducibleMatrix : public Error { using Error::Error; };
class NotConverged : public Error { using Error::Error; };
class NoNaturalMeasure : public Error { using Error::Error; };
class NotRightResolving : public Error { using Error::Error; };
class OracleLimitExceeded : public Error { using Error::Error; };
class HorizonExceeded : public Error { using Error::Error; };
class StateCapExceeded : public Error { using Error::Error; };
class NotPositiveRecurrent : public Error { using Error::Error; };

// A word is a dense sequence of symbol ids.
using Word = std::vector<int>;

struct Symbol {
  int id = 0;
  std::string display;
};

// Display tokens for symbol ids 0..size-1; tokens are distinct.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> tokens);
  static Alphabet numbered(int size, int first = 1);

  int size() const { return static_cast<int>(tokens_.size()); }
  const std::string& token(int id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  Symbol symbol(int id) const { return {id, token(id)}; }
  std::optional<int> find(std::string_view token) const;

  // Comma-separated tokens; a string without commas whose characters are all
  // single-character tokens is also accepted ("abca").
  Word parse(std::string_view text) const;
  std::string format(const Word& w, std::string_view sep = ",") const;

 private:
  std::vector<std::string> tokens_;
};

class NonnegMatrix {
 public:
  NonnegMatrix() = default;
  explicit NonnegMatrix(int dim);
  NonnegMatrix(int dim, std::vector<BigInt> entries);
  static NonnegMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  static NonnegMatrix identity(int dim);

  int dim() const { return dim_; }
  const BigInt& operator()(int i, int j) const { return data_[index(i, j)]; }
  void set(int i, int j, BigInt value);
  void add(int i, int j, const BigInt& value) { data_[index(i, j)] += value; }
  const std::vector<BigInt>& data() const { return data_; }

  bool is_zero_one() const;
  bool is_zero() const;
  bool operator==(const NonnegMatrix& other) const = default;

  std::vector<double> to_double() const;
  NonnegMatrix submatrix(const std::vector<int>& indices) const;
  NonnegMatrix permuted(const std::vector<int>& order) const;
  std::string to_string() const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j);
  }
  int dim_ = 0;
  std::vector<BigInt> data_;
};

// Finite directed multigraph with edge labels; a presentation of a sofic shift.
struct LabeledEdge {
  int from = 0;
  int to = 0;
  int label = 0;
};

struct LabeledGraph {
  int vertices = 0;
  Alphabet alphabet;
  std::vector<LabeledEdge> edges;

  void validate() const;
  // Total adjacency count matrix.
  NonnegMatrix adjacency() const;
};

NonnegMatrix mat_mul(const NonnegMatrix& a, const NonnegMatrix& b);
NonnegMatrix mat_power(const NonnegMatrix& a, std::uint64_t n);
BigInt entry_sum(const NonnegMatrix& a);
BigInt trace(const NonnegMatrix& a);
std::vector<BigInt> row_sums(const NonnegMatrix& a);
std::vector<BigInt> col_sums(const NonnegMatrix& a);

// Sequential powers A^0, A^1, ... computed on demand. Not thread safe.
class PowerTable {
 public:
  explicit PowerTable(NonnegMatrix a);
  const NonnegMatrix& power(std::size_t n);
  const NonnegMatrix& base() const { return powers_[1]; }

 private:
  std::vector<NonnegMatrix> powers_;
};

struct CylinderSpec {
  Word word;
  long k = 0;
  long l = 0;
  long window() const { return static_cast<long>(word.size()) + k + l; }
};

enum class MeasureMethod { ClosedForm, Limit, PeriodicLimit, Oracle, ShiftAverage };
std::string to_string(MeasureMethod m);

struct ConvergencePoint {
  long k = 0;
  long l = 0;
  double ratio = 0.0;
};

struct MeasureResult {
  Word word;
  double value = 0.0;
  MeasureMethod method = MeasureMethod::ClosedForm;
  bool admissible = true;
  std::optional<Rational> exact;
  std::vector<ConvergencePoint> diagnostics;
};

// Natural log of a positive big integer, exact to double rounding for any size.
double log_big(const BigInt& x);
// x / scale^n evaluated in log space; returns 0 for x == 0.
double scaled_ratio(const BigInt& x, double scale, long n);
double to_double(const Rational& q);
double to_double(const BigInt& x);

}  // namespace shiftlab
