#pragma once

#include "shiftlab/core.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

// Brute-force ground truth. Everything here walks words symbol by symbol and
// never touches eigenvectors or matrix powers.
namespace shiftlab {

// Shift space given by a forbidden family. A word is admissible iff none of its
// factors is forbidden. When `unbounded` is set the family has words longer than
// `horizon` and enumeration past the horizon is refused.
struct ForbiddenSetShift {
  std::string name;
  Alphabet alphabet;
  std::function<bool(const Word&)> is_forbidden;
  int horizon = 0;
  bool unbounded = false;
  std::vector<Word> explicit_words;  // empty for predicate-only families

  static ForbiddenSetShift from_words(std::string name, Alphabet alphabet, std::vector<Word> words);
  bool admissible(const Word& w) const;
};

// Context-free shift on {a,b,c}: forbids a b^k c^l a with k != l.
ForbiddenSetShift context_free_shift(int horizon = 24);

struct SystemHandle {
  enum class Kind { Sft, Sofic, Forbidden, TruncatedCountable };
  Kind kind = Kind::Sft;
  NonnegMatrix matrix;  // Sft (0-1) or TruncatedCountable (path multiplicities)
  LabeledGraph graph;
  ForbiddenSetShift forbidden;

  static SystemHandle sft(NonnegMatrix a);
  static SystemHandle sofic(LabeledGraph g);
  static SystemHandle forbidden_set(ForbiddenSetShift f);
  static SystemHandle truncated(NonnegMatrix a);
  int alphabet_size() const;
};

struct OracleOptions {
  std::uint64_t max_work = 100'000'000;
  // Reads SHIFTLAB_MAX_WORK when set.
  static OracleOptions from_env();
};

std::vector<Word> enumerate_words(const SystemHandle& sys, int n, const OracleOptions& opt = OracleOptions::from_env());
// Weighted by path multiplicity for truncated countable systems; plain count otherwise.
BigInt count_words(const SystemHandle& sys, int n, const OracleOptions& opt = OracleOptions::from_env());
BigInt count_cylinder(const SystemHandle& sys, const CylinderSpec& spec,
                      const OracleOptions& opt = OracleOptions::from_env());
BigInt count_periodic(const SystemHandle& sys, int n, const OracleOptions& opt = OracleOptions::from_env());
bool is_admissible(const SystemHandle& sys, const Word& w);

struct RatioCell {
  long k = 0;
  long l = 0;
  Rational ratio;
};
std::vector<RatioCell> ratio_series(const SystemHandle& sys, const Word& word,
                                    const std::vector<std::pair<long, long>>& grid,
                                    const OracleOptions& opt = OracleOptions::from_env());

// All cylinder counts for one window length m, from a single enumeration.
class CylinderTable {
 public:
  CylinderTable(const SystemHandle& sys, int m, const OracleOptions& opt = OracleOptions::from_env());
  int window() const { return m_; }
  const BigInt& total() const { return total_; }
  // |C_{k,l}(word)| with l = m - k - |word|.
  BigInt count(const Word& word, long k) const;
  Rational ratio(const Word& word, long k) const;

 private:
  static std::string key(const Word& word, long k);
  int m_;
  BigInt total_;
  std::unordered_map<std::string, BigInt> counts_;
};

}  // namespace shiftlab
