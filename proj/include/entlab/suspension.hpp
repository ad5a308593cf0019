#pragma once

#include <optional>
#include <vector>

#include "entlab/entropy.hpp"
#include "entlab/measure.hpp"
#include "entlab/thermo.hpp"

namespace entlab {

// Roof function of a suspension flow: locally constant and bounded away from
// zero, tau >= c > 0.
struct Roof {
  Potential tau;
  double lower_bound;

  Roof(Potential tau_, double lower_bound_);
};

// int tau dmu; the normalizer of the Ambrose-Kakutani lift. Throws
// std::domain_error when the integral cannot be certified finite.
double roof_integral(const ShiftMeasure& mu, const Roof& roof);

// The flow space is never materialized: the pair (base, roof) plus the two
// derived scalars carries every flow quantity in scope.
struct FlowMeasure {
  ShiftMeasure base;
  double normalizer;    // int tau d(base)
  double flow_entropy;  // base entropy / normalizer
};

FlowMeasure lift_measure(const ShiftMeasure& mu, const Roof& roof);

// h(base) / int tau; domain error on nonpositive roof integral.
double abramov(double base_entropy, double roof_int);

struct FlowSemicontinuityReport {
  std::vector<double> roof_integrals;
  std::vector<double> flow_entropies;
  std::vector<double> vague_gaps;
  bool gaps_decreasing = false;
  double limit_roof_integral = 0.0;
  double liminf_surrogate = 0.0;  // min over the tail third of the sequence
  bool roof_liminf_holds = false;
  bool liminf_strict = false;
  std::optional<double> limit_flow_entropy;
  std::optional<bool> flow_semicontinuity_holds;
};

FlowSemicontinuityReport flow_semicontinuity_check(const std::vector<ShiftMeasure>& seq,
                                                   const ShiftMeasure& limit, const Roof& roof,
                                                   const std::vector<double>& base_entropies,
                                                   int gap_depth, int gap_alphabet_limit,
                                                   double tol = 1e-9);

}  // namespace entlab
