#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "entlab/shift.hpp"

namespace entlab {

// --- Kernels -----------------------------------------------------------------
// A ShiftMeasure is a kernel (the shape of the measure) plus a total mass in
// (0,1]. Sub-probability measures are first-class so vague limits that lose
// mass stay representable.

struct BernoulliKernel {
  std::vector<Symbol> support;  // sorted, distinct
  std::vector<double> weights;  // positive, sum to 1
};

// Product measure on the full shift over the naturals with symbol weights
// (1-ratio)*ratio^k.
struct GeometricKernel {
  double ratio;  // in (0,1)
};

struct MarkovKernel {
  std::vector<Symbol> symbols;          // sorted support
  std::vector<std::vector<double>> rows;  // row-stochastic
  std::vector<double> pi;               // stationary, sums to 1
};

// Uniform average over the p phase shifts of an admissible cyclic word: the
// unique shift-invariant measure on the orbit.
struct OrbitKernel {
  Word cycle;
};

class ShiftMeasure;

struct MixtureKernel {
  std::vector<ShiftMeasure> components;
  std::vector<double> weights;  // nonnegative; scale the component masses
};

using MeasureKernel =
    std::variant<BernoulliKernel, GeometricKernel, MarkovKernel, OrbitKernel, MixtureKernel>;

class ShiftMeasure {
 public:
  ShiftMeasure(BernoulliKernel k, double mass = 1.0);
  ShiftMeasure(GeometricKernel k, double mass = 1.0);
  ShiftMeasure(MarkovKernel k, double mass = 1.0);
  ShiftMeasure(OrbitKernel k, double mass = 1.0);
  explicit ShiftMeasure(MixtureKernel k);  // mass is the weighted component mass

  double total_mass() const { return mass_; }

  // Exact log of mu([w]); -inf iff the cylinder is null. The empty word is
  // the whole space.
  double cylinder_log_mass(const Word& w) const;

  const MeasureKernel& kernel() const { return kernel_; }

  bool is_markov_like() const;  // Markov or Bernoulli kernel

 private:
  MeasureKernel kernel_;
  double mass_;
};

// Convenience constructors.
ShiftMeasure make_bernoulli(std::vector<Symbol> support, std::vector<double> weights,
                            double mass = 1.0);
ShiftMeasure make_uniform_bernoulli(int alphabet_size, double mass = 1.0);
ShiftMeasure make_markov(std::vector<Symbol> symbols, std::vector<std::vector<double>> rows,
                         double mass = 1.0);  // pi computed from the rows
ShiftMeasure make_orbit(Word cycle, double mass = 1.0);
ShiftMeasure make_geometric(double ratio, double mass = 1.0);
ShiftMeasure make_mixture(std::vector<ShiftMeasure> components, std::vector<double> weights);

// View of a Bernoulli or Markov measure as a Markov kernel.
MarkovKernel as_markov(const ShiftMeasure& mu);

// Entropy of mu/||mu|| in closed form; mixtures by affinity over components.
double closed_form_entropy(const ShiftMeasure& mu);

// -sum_a pi_a sum_b P_ab log P_ab for Markov-like kernels; 0 for orbits.
double markov_entropy(const ShiftMeasure& mu);

// --- Diagnostics -------------------------------------------------------------

struct MassCheck {
  double sum;   // mass of the 1-cylinders with symbol < limit
  double tail;  // certified bound on the remainder
};

MassCheck mass_by_cylinder_sum(const ShiftMeasure& mu, int limit);

// Max absolute cylinder-mass discrepancy over all words of length <= depth
// with symbols below alphabet_limit; the computable surrogate for the vague
// topology.
double vague_gap(const ShiftMeasure& mu, const ShiftMeasure& nu, int depth, int alphabet_limit);

// f(a) -> infinity along countable alphabets; finite sublevel sets.
struct ProperWeight {
  std::vector<double> table;  // when nonempty, f is the table over 0..size-1
  double slope = 1.0;
  double offset = 0.0;

  static ProperWeight Affine(double slope, double offset);
  static ProperWeight Table(std::vector<double> values);

  bool affine() const { return table.empty(); }
  double operator()(Symbol a) const;
};

// Integral of f over the 1-cylinders; nullopt when the tail cannot be
// certified (table weight against a countable-support kernel).
std::optional<double> weight_integral(const ShiftMeasure& mu, const ProperWeight& f);

enum class TightnessStatus { Tight, BoundViolated, Inconclusive };

struct TightnessVerdict {
  TightnessStatus status;
  int violated_index = -1;  // first offending position, when violated
  std::vector<double> integrals;
};

TightnessVerdict tightness_verdict(const std::vector<ShiftMeasure>& seq, const ProperWeight& f,
                                   double bound);

// First-return masses mu(A_n), A_n = {x0 in K, x_n in K, x_1..x_{n-1} not in
// K}, by taboo-transition linear algebra.
struct KacResult {
  std::vector<double> masses;  // masses[i] = mu(A_{i+1})
  double weighted_sum;         // sum_{n<=N_max} n mu(A_n)
  double tail_bound;           // certified bound on the omitted tail of the sum
};

KacResult kac_return_masses(const ShiftMeasure& mu, const std::vector<Symbol>& k_set, int n_max);

}  // namespace entlab
