#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entlab/measure.hpp"
#include "entlab/shift.hpp"
#include "entlab/thermo.hpp"

namespace entlab {

// Raised when the measure cannot supply mass 1-delta on the truncation.
class InsufficientMassError : public std::runtime_error {
 public:
  explicit InsufficientMassError(const std::string& what) : std::runtime_error(what) {}
};

struct EntropyEstimate {
  double value = 0.0;
  std::string estimator;  // "exact_markov" | "plugin" | "katok"
  int n = 0;
  int k = 0;
  double delta = 0.0;
  int truncation_index = 0;
  std::uint64_t cover_count = 0;  // katok: exact minimal-cover size
  double mass_deficit = 0.0;      // plugin: 1 - covered mass
};

// H_n/n over length-n cylinders of the truncation.
EntropyEstimate plugin_entropy(const ShiftMeasure& mu, const TransitionStructure& trans,
                               int truncation_index, int n,
                               std::uint64_t budget = 100000000ull);

// Katok estimator through the ball-cylinder dictionary: the (N, theta^k)-ball
// is the cylinder on N+k+1 symbols, so the minimal cover of mass >= 1-delta
// is the shortest descending-mass prefix (greedy is optimal: equal-length
// cylinders are pairwise disjoint). Ties broken lexicographically.
// When scale_target_to_mass is set the target is (1-delta)*||mu|| instead of
// the strict 1-delta.
EntropyEstimate katok_estimate(const ShiftMeasure& mu, const TransitionStructure& trans,
                               int truncation_index, int n, int k, double delta,
                               bool scale_target_to_mass = false,
                               std::uint64_t budget = 100000000ull);

struct SpreadReport {
  std::vector<EntropyEstimate> estimates;  // one per k in [k_lo, k_hi]
  double spread = 0.0;                     // max - min estimate
};

SpreadReport simplified_formula_report(const ShiftMeasure& mu, const TransitionStructure& trans,
                                       int truncation_index, int n, double delta, int k_lo,
                                       int k_hi);

// Sample an orbit prefix of the given length from a probability measure.
Word sample_orbit(const ShiftMeasure& mu, int length, class Rng& rng);

struct SmbSummary {
  double mean = 0.0;
  double stddev = 0.0;
  double fraction_within = 0.0;  // empirical measure of the SMB set at epsilon
  double epsilon = 0.0;
  int n = 0;
  int samples = 0;
  std::uint64_t seed = 0;
};

// Per-sample -(1/n) log mu([x_0..x_{n-1}]) over seeded orbits.
SmbSummary smb_deviation(const ShiftMeasure& mu, int n, int sample_count, std::uint64_t seed,
                         double epsilon);

// Empirical fraction of sampled orbits with |S_n(phi)/n - int phi dmu| < eps.
double birkhoff_concentration(const ShiftMeasure& mu, const Potential& phi, int n, double epsilon,
                              int sample_count, std::uint64_t seed);

struct TailEntropyBound {
  double bound = 0.0;         // sum_{k>=M} k m_k + (2/e) sum_{k>=M} e^{-k/2}
  double tail_entropy = 0.0;  // -sum_{k>=M} m_k log m_k
  bool dominates = false;
};

// masses[i] is the mass at index k = i+1.
TailEntropyBound tail_entropy_bound(const std::vector<double>& masses, int cutoff);

}  // namespace entlab
