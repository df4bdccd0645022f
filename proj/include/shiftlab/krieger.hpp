#pragma once

#include "shiftlab/core.hpp"
#include "shiftlab/countable.hpp"
#include "shiftlab/oracle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace shiftlab {

struct KriegerCover {
  CountableMatrixSpec spec;       // labeled, right-resolving
  std::vector<std::string> names;  // state naming table, indexed by StateId
  std::vector<Word> pasts;         // representative finite past per state (generic construction)
  bool right_resolving = true;
  bool approximate = false;  // class count changed between depth and depth + 1
  bool truncated = false;    // some transition left the explored radius
  int depth = 0;
  // Finite presentation when the construction closed or was truncated.
  std::optional<LabeledGraph> graph;
};

struct KriegerOptions {
  int depth = 8;
  int max_radius = 12;  // longest representative past explored
  int max_states = 4096;
};

// Follower-set classes of finite pasts, seeded by the empty past, compared by
// their admissible continuations of length <= depth.
KriegerCover krieger_cover(const ForbiddenSetShift& shift, const KriegerOptions& opt = {});

// Context-free cover in canonical order: 0 = P, 1 = Q, 2 = E0, odd r >= 3 = E_{(r-1)/2},
// even r >= 4 = F_{(r-4)/2}. Labels a, b, c.
enum class CfKind { P, Q, E, F };
StateId cf_rank(CfKind kind, long param = 0);
std::string cf_state_name(StateId rank);
KriegerCover cf_cover();
// Two-state cover of the golden-mean shift {22}: state 0 after 1, state 1 after 2.
KriegerCover golden_mean_cover();

double cf_lambda_closed_form();  // 1 + sqrt(1 + sqrt 3)

struct CfEntropyResult {
  double lambda = 0.0;
  double entropy = 0.0;
  TruncationResult trunc;
};
// Truncation sizes 2n+3; throws NotConverged when the closed form is not reached within tol.
CfEntropyResult cf_entropy(double tol, int max_size);
std::vector<int> cf_truncation_sizes(int max_size);

// Smallest m such that every word in `words` is read by a path starting and
// ending among the first m states (canonical or breadth-first order).
int nstar_bound(const CountableMatrixSpec& spec, const std::vector<Word>& words, int search_states);

struct EntropyConditionsReport {
  std::vector<int> nstar;             // nstar[n-1]
  std::vector<double> log_nstar_over_n;
  bool condition_i = false;            // log N*_n / n decreasing to the last tested n
  std::optional<std::pair<int, int>> dominant_pair;  // positions in the truncation
  std::vector<bool> root_dominates;    // (T^n)_{root,root} >= every entry, n = 1..n_max
  bool condition_ii = false;
};
EntropyConditionsReport entropy_conditions_check(const CountableMatrixSpec& spec,
                                                 const std::vector<std::vector<Word>>& words_by_length,
                                                 int trunc_size, int search_states);

struct UniformDistributionReport {
  double m1 = 0.0;
  double m2 = 0.0;
  bool r_bounds_ok = false;   // m1 >= r_lower - slack and m2 <= r_upper + slack when bounds given
  bool n_set_ok = false;      // every word is read from some q in the finite set
  double alpha = 0.0;         // m1 * min_{q in set} l_q
  double beta = 0.0;          // m2 * sum_q l_q
  bool measure_bounds_ok = false;
  std::size_t words_checked = 0;
  double worst_lower_margin = 0.0;  // min over words of mu lambda^n - alpha
  double worst_upper_margin = 0.0;  // min over words of beta - mu lambda^n
};
UniformDistributionReport uniform_distribution_check(const CountableMatrixSpec& spec, const TruncationStep& trunc,
                                                     const std::vector<Word>& words,
                                                     const std::vector<StateId>& finite_set,
                                                     std::optional<std::pair<double, double>> r_bounds,
                                                     double slack = 1e-6);

struct EigenFact {
  std::string name;
  bool ok = false;
  double worst = 0.0;  // largest violation (<= 0 when ok)
};
struct CfEigenFactsReport {
  int n = 0;
  double lambda_n = 0.0;
  double lambda_2n = 0.0;
  std::vector<EigenFact> facts;
  bool all_ok() const;
};
// Items (i)-(v) on truncations of size 2n+3 and 4n+3, l_P = r_P = 1.
CfEigenFactsReport cf_eigen_facts_check(int n, double tol = 1e-8);

}  // namespace shiftlab
