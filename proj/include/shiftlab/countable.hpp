#pragma once

#include "shiftlab/core.hpp"
#include "shiftlab/spectral.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace shiftlab {

using StateId = std::int64_t;

// One unit of T_{i,j}: weight counts parallel edges. Labeled specs list one
// successor per labeled edge with weight 1.
struct CountableSuccessor {
  StateId to = 0;
  long long weight = 1;
  int label = -1;
};

// Countable nonnegative integer matrix given lazily by its successor lists.
struct CountableMatrixSpec {
  std::string name;
  StateId root = 0;
  std::function<std::vector<CountableSuccessor>(StateId)> successors;
  std::function<std::string(StateId)> display;
  // Labeled (sofic) spec when nonempty.
  Alphabet labels;
  // Canonical enumeration: state at position r. Breadth-first order from root when empty.
  std::function<StateId(std::size_t)> canonical;

  bool labeled() const { return labels.size() > 0; }
  long long entry(StateId i, StateId j) const;
  std::string name_of(StateId s) const;
};

// Banded stencil on the integer line: i -> i + offsets[k] with weight values[k],
// restricted to i >= min_index when set.
CountableMatrixSpec stencil_spec(std::string name, std::vector<long long> offsets, std::vector<long long> values,
                                 StateId root = 0, std::optional<StateId> min_index = std::nullopt);
// Nearest-neighbour walk on Z: successors [+1, -1].
CountableMatrixSpec random_walk_spec();
// Finite matrix viewed as a countable spec (states 0..N-1).
CountableMatrixSpec finite_spec(const NonnegMatrix& a, std::string name = "finite");
// Finite right-resolving labeled graph viewed as a labeled countable spec.
CountableMatrixSpec finite_labeled_spec(const LabeledGraph& g, std::string name = "finite-labeled");

struct Truncation {
  std::vector<StateId> states;  // position -> state
  std::vector<int> depth;       // breadth-first distance from root
  std::unordered_map<StateId, int> index;
  NonnegMatrix matrix;
  int position(StateId s) const;  // -1 when absent
};
Truncation truncate(const CountableMatrixSpec& spec, int size);

struct TruncationStep {
  int size = 0;
  bool used = false;
  std::string skipped;  // reason when unused
  double lambda = 0.0;
  int period = 1;
  std::vector<StateId> states;
  std::vector<double> left;   // left[root] = 1
  std::vector<double> right;  // right[root] = 1
};

struct TruncationResult {
  std::vector<TruncationStep> steps;
  double lambda = 0.0;       // last used estimate
  double error_bound = 0.0;  // difference between the last two used estimates
  bool converged = false;
  const TruncationStep& last() const;
};

struct ApproxPerronOptions {
  double tol = 1e-9;
  int max_size = 512;
  int first_size = 4;
  // Explicit size schedule; doubling from first_size when empty.
  std::vector<int> sizes;
  PerronOptions perron{1e-12, 2'000'000};
};
TruncationResult approx_perron(const CountableMatrixSpec& spec, const ApproxPerronOptions& opt = {});
TruncationStep truncation_step(const CountableMatrixSpec& spec, int size, const PerronOptions& popt = {});

enum class RecurrenceClass { Transient, NullRecurrent, PositiveRecurrent, Inconclusive };
std::string to_string(RecurrenceClass c);

struct PartialSum {
  int terms = 0;
  double value = 0.0;
};

struct RecurrenceReport {
  RecurrenceClass cls = RecurrenceClass::Inconclusive;
  double lambda = 0.0;
  int terms = 0;
  std::vector<BigInt> t;  // t[n] = (T^n)_{root,root}, n = 0..terms
  std::vector<BigInt> l;  // l[n] = first returns of length n
  std::vector<PartialSum> t_partial;   // sum t(n)/lambda^n at terms/4, terms/2, terms
  std::vector<PartialSum> nl_partial;  // sum n l(n)/lambda^n likewise
  double t_increment_ratio = 0.0;
  double nl_increment_ratio = 0.0;
  std::vector<PartialSum> lr_partial;  // l . r over truncations, terms = truncation size
  std::optional<double> constant_eigenvalue;  // all-ones eigenvector evidence
  std::string evidence;
};

RecurrenceReport classify_recurrence(const CountableMatrixSpec& spec, double lambda, int n_terms,
                                     const TruncationResult* trunc = nullptr);

// c when every row sum and every column sum over the interior of a
// breadth-first ball of `size` states equals c.
std::optional<double> constant_eigenvector_evidence(const CountableMatrixSpec& spec, int size);

struct CountableMeasure {
  MeasureResult result;
  bool trusted = true;  // word stays away from the truncation frontier
  double closed_form = 0.0;
};

// Row-stochastic Markov chain p_i = l_i r_i, P_ij = T_ij r_j / (lambda r_i), l . r = 1 on the truncation.
CountableMeasure markov_measure(const TruncationStep& trunc, const Truncation& t, const std::vector<StateId>& word,
                                const RecurrenceReport& rep);
// P_ij = T_ij r_i / (lambda r_j), the index placement printed for the countable case.
std::vector<double> markov_matrix_as_printed(const TruncationStep& trunc, const Truncation& t);
std::vector<double> markov_matrix(const TruncationStep& trunc, const Truncation& t);

struct CountableLimitOptions {
  double tol = 1e-9;
  long first_window = 8;
  long max_window = 512;
};

// (T^k)_{i,i1} prod T (T^l)_{in,j} / (T^{n+k+l-1})_{i,j}, exact.
Rational countable_sft_ratio(const CountableMatrixSpec& spec, const std::vector<StateId>& word, StateId i, StateId j,
                             long k, long l);
// Labeled version: sum_{q,q'} (T^k)_{iq} [T_w]_{qq'} (T^l)_{q'j} / (T^{n+k+l})_{ij}.
Rational countable_sofic_ratio(const CountableMatrixSpec& spec, const Word& word, StateId i, StateId j, long k,
                               long l);

// Limits over every anchor pair; throws Error when anchors disagree by >= 10 tol.
// closed_form is l_{i1} r_{in} prod T / lambda^{n-1} from `trunc` when given.
CountableMeasure natural_measure_sft(const CountableMatrixSpec& spec, const std::vector<StateId>& word,
                                     const std::vector<std::pair<StateId, StateId>>& anchors,
                                     const RecurrenceReport& rep, const CountableLimitOptions& opt = {},
                                     const TruncationStep* trunc = nullptr);
CountableMeasure natural_measure_sofic(const CountableMatrixSpec& spec, const Word& word,
                                       const std::vector<std::pair<StateId, StateId>>& anchors,
                                       const RecurrenceReport& rep, const CountableLimitOptions& opt = {},
                                       const TruncationStep* trunc = nullptr);
// sum_{q,q'} l_q [T_w]_{qq'} r_{q'} / lambda^n over the truncation, l . r = 1.
double sofic_closed_form(const CountableMatrixSpec& spec, const TruncationStep& trunc, const Word& word);
bool countable_word_admissible(const CountableMatrixSpec& spec, const Word& word, int search_states);

struct RandomWalkCell {
  long k = 0;
  long l = 0;
  Rational ratio;
  double value = 0.0;
  double stirling_scaled = 0.0;  // ratio * sqrt(k l pi / (k + l))
};
// C(2k,k) C(2l,l) / C(2k+2l,k+l)
Rational random_walk_ratio(long k, long l);
std::vector<RandomWalkCell> random_walk_diagnostic(long k_max);

BigInt binomial(long n, long k);

}  // namespace shiftlab
