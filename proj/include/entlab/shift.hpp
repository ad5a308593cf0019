#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace entlab {

using Symbol = int;
using Word = std::vector<Symbol>;

std::string word_to_string(const Word& w);

// Thrown when an enumeration would exceed the configured cylinder budget.
// Carries the exact count so the caller can decide what to do.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::uint64_t count, std::uint64_t budget);
  std::uint64_t count;
  std::uint64_t budget;
};

struct Alphabet {
  bool finite = true;
  int size = 0;  // meaningful when finite

  static Alphabet Finite(int n);
  static Alphabet Countable();

  bool contains(Symbol a) const { return a >= 0 && (!finite || a < size); }
};

// Countable 0/1 transition matrix presented by successor lists (or a closed
// rule) together with a schedule of finite sub-alphabets {0..m-1}. All
// exponential enumerations run on a truncation; the schedule is exposed so
// callers can study convergence along it.
class TransitionStructure {
 public:
  enum class Rule { Explicit, Full, Band };

  TransitionStructure(Alphabet alphabet,
                      std::map<Symbol, std::vector<Symbol>> successors,
                      std::vector<int> truncations);

  static TransitionStructure FullShift(Alphabet alphabet, std::vector<int> truncations);
  static TransitionStructure BandShift(Alphabet alphabet, int width, std::vector<int> truncations);

  const Alphabet& alphabet() const { return alphabet_; }
  bool allowed(Symbol a, Symbol b) const;

  // Successors of a lying in {0..limit-1}, sorted ascending.
  std::vector<Symbol> successors(Symbol a, int limit) const;

  const std::vector<int>& truncations() const { return truncations_; }
  int truncation_size(int index) const;

  Rule rule() const { return rule_; }
  int band_width() const { return band_width_; }
  const std::map<Symbol, std::vector<Symbol>>& explicit_successors() const { return succ_; }

  // BIP is a user-declared flag on countable structures; never verified here.
  bool bip_declared = false;

 private:
  TransitionStructure(Alphabet alphabet, Rule rule, int width, std::vector<int> truncations);
  void validate_truncations() const;

  Alphabet alphabet_;
  Rule rule_;
  std::map<Symbol, std::vector<Symbol>> succ_;
  int band_width_ = 0;
  std::vector<int> truncations_;
};

struct MetricParams {
  double theta;  // in (0,1)
};

struct DthetaResult {
  double value;
  // False when the words agree on the whole compared range: the true
  // distance is then only known to be <= theta^len.
  bool exact;
};

// True iff every consecutive pair of symbols is a permitted transition.
// Throws std::domain_error if a symbol lies outside the alphabet.
bool is_admissible(const Word& w, const TransitionStructure& trans);

// The (N, theta^k)-dynamical ball around any point with this prefix is
// exactly the cylinder on the first N+k+1 symbols.
Word ball_as_cylinder(const Word& center_prefix, int n, int k);

DthetaResult d_theta(const Word& x, const Word& y, MetricParams params);

// Number of admissible length-n words over the truncated alphabet
// (saturates at UINT64_MAX).
std::uint64_t count_cylinders(const TransitionStructure& trans, int truncation_index, int n);

// All admissible length-n words over the truncation, lexicographic order.
std::vector<Word> enumerate_cylinders(const TransitionStructure& trans, int truncation_index,
                                      int n, std::uint64_t budget = 100000000ull);

struct PrimitivityResult {
  bool primitive = false;
  int witness_power = 0;  // least p with M^p entrywise positive, when primitive
};

PrimitivityResult check_primitive(const TransitionStructure& trans, int truncation_index);

}  // namespace entlab
