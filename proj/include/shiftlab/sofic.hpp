#pragma once

#include "shiftlab/core.hpp"
#include "shiftlab/sft.hpp"
#include "shiftlab/spectral.hpp"

#include <vector>

namespace shiftlab {

struct LetterMatrices {
  std::vector<NonnegMatrix> per_symbol;
  NonnegMatrix total;
};

bool is_right_resolving(const LabeledGraph& g);
bool is_left_resolving(const LabeledGraph& g);
LetterMatrices letter_matrices(const LabeledGraph& g);

// Subsets of vertices ordered by (size, lexicographic member list). For a
// k-subset S and symbol s the image is defined only when every member has an
// s-successor; its size l may be smaller than k when successors collide.
class SubsetMatrices {
 public:
  struct Target {
    int size = 0;  // 0 when undefined
    int index = -1;
    int parity = 1;  // sign of the permutation taking (s(I_1),...,s(I_k)) to sorted order; 0 if l < k
  };

  explicit SubsetMatrices(const LabeledGraph& g);

  int vertices() const { return n_; }
  int symbols() const { return symbols_; }
  // subsets(k) for 1 <= k <= N
  const std::vector<std::vector<int>>& subsets(int k) const { return subsets_[k]; }
  const Target& step(int k, int index, int symbol) const {
    return step_[k][static_cast<std::size_t>(index) * symbols_ + symbol];
  }
  // 0-1 rectangular block A~_{k,l}(s); symbol -1 sums over all symbols.
  std::vector<std::vector<int>> block(int k, int l, int symbol = -1) const;
  NonnegMatrix diagonal_block(int k) const;

 private:
  int n_ = 0;
  int symbols_ = 0;
  std::vector<std::vector<std::vector<int>>> subsets_;
  std::vector<std::vector<Target>> step_;
};

// Signed integer square matrix (entries of either sign).
struct SignedMatrix {
  int dim = 0;
  std::vector<BigInt> data;
  const BigInt& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * dim + j]; }
};
SignedMatrix signed_mul(const SignedMatrix& a, const SignedMatrix& b);
BigInt signed_trace(const SignedMatrix& a);

struct SignedMatrices {
  std::vector<SignedMatrix> total;                    // total[j-1] = B~_j
  std::vector<std::vector<SignedMatrix>> per_symbol;  // per_symbol[j-1][s]
};
SignedMatrices signed_matrices(const LabeledGraph& g);

// Inclusion-exclusion census over vertex subsets.
BigInt count_words(const LabeledGraph& g, int n);
// Same sum restricted to size-preserving subset transitions.
BigInt count_words_diagonal(const LabeledGraph& g, int n);
// |C_{k,l}(w)|: k free symbols, then w, then l free symbols.
BigInt count_cylinder(const LabeledGraph& g, const Word& w, long k, long l);
BigInt count_periodic(const LabeledGraph& g, int n);
// Periodic points of period m = n+k+l-1 whose first n symbols read w.
BigInt count_periodic_cylinder(const LabeledGraph& g, const Word& w, long k, long l);

bool is_admissible(const LabeledGraph& g, const Word& w);

MeasureResult natural_measure(const LabeledGraph& g, const Word& w, const PerronOptions& popt = {});
MeasureResult natural_measure_limit(const LabeledGraph& g, const Word& w, const LimitOptions& opt = {});
MeasureResult edge_shift_measure(const LabeledGraph& g, const Word& w, const LimitOptions& opt = {});
MeasureResult periodic_natural_measure(const LabeledGraph& g, const Word& w, const LimitOptions& opt = {});

LabeledGraph minimal_right_resolving(const LabeledGraph& g);
bool spectral_gap_check(const LabeledGraph& g);

struct UniformBounds {
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t semigroup_size = 0;   // distinct products, zero matrix included if it occurs
  std::size_t nonzero_products = 0;
  bool within_nn_bound = true;   // semigroup_size <= N^N
};
UniformBounds uniform_bounds(const LabeledGraph& g);

struct HiddenMarkovReport {
  bool ok = true;
  double max_deviation = 0.0;
  std::size_t words_checked = 0;
};
HiddenMarkovReport hidden_markov_check(const LabeledGraph& g, int n, double tol);

// Edge shift of g: one symbol per edge, e -> f allowed when e ends where f starts.
SftSystem edge_shift(const LabeledGraph& g);
// Stationary label sample from the edge-shift Parry chain.
Word sample_labels(const LabeledGraph& g, std::size_t length, std::uint64_t seed);
double sofic_measure_entropy_partial(const LabeledGraph& g, int n);

// Labeled presentation of an SFT: one vertex per symbol, edge i -> j labeled j.
LabeledGraph sft_as_sofic(const NonnegMatrix& a, const Alphabet& alphabet);

}  // namespace shiftlab
