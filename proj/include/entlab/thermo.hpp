#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "entlab/matrix.hpp"
#include "entlab/measure.hpp"
#include "entlab/shift.hpp"

namespace entlab {

// Depth-k locally constant function on the shift: reads the first k symbols.
// Depth 1 and 2 are fully supported by the pressure machinery.
class Potential {
 public:
  Potential(int depth, std::map<Word, double> values,
            std::optional<double> sup_bound = std::nullopt);

  // Depth-1 rule value(a) = slope*a + offset over every natural symbol.
  static Potential Affine(double slope, double offset);
  static Potential Constant(double c);

  int depth() const { return depth_; }
  bool affine() const { return affine_; }
  double slope() const { return slope_; }
  double offset() const { return offset_; }
  double sup_bound() const { return sup_; }
  const std::map<Word, double>& values() const { return values_; }

  double value(const Word& k_word) const;
  double value(Symbol a) const;
  double value(Symbol a, Symbol b) const;

  // Birkhoff sum read off a cylinder word. A length-N word supplies only N-1
  // transitions for a depth-2 potential; the missing term is taken at the
  // lexicographically least admissible successor of the last symbol.
  double birkhoff_sum(const Word& w, const TransitionStructure& trans, int truncation_limit) const;

 private:
  int depth_;
  std::map<Word, double> values_;
  bool affine_ = false;
  double slope_ = 0.0, offset_ = 0.0;
  double sup_;
};

// exp-weighted transition matrix L_ab = M(a,b) * exp(logw(a,b)) on a
// truncation.
Mat weighted_matrix(const TransitionStructure& trans, int truncation_index,
                    const std::function<double(Symbol, Symbol)>& log_weight);

double pressure_of_matrix(const Mat& weighted);

// log of the Perron eigenvalue of the potential-weighted matrix; for the
// zero potential this is the topological entropy of the truncation.
// Throws std::invalid_argument when the truncation is not primitive.
double transfer_pressure(const Potential& phi, const TransitionStructure& trans,
                         int truncation_index);

// Pressure along the whole truncation schedule, with the last increments as
// a convergence report.
struct PressureSchedule {
  std::vector<double> values;  // one per truncation, nondecreasing
  double last_increment = 0.0;
  double previous_increment = 0.0;
};

PressureSchedule pressure_schedule(const Potential& phi, const TransitionStructure& trans);

// Ruelle-Perron-Frobenius equilibrium state: the stochasticization of the
// weighted matrix through its Perron pair. Satisfies h + int(phi) = log lambda.
ShiftMeasure rpf_equilibrium(const Potential& phi, const TransitionStructure& trans,
                             int truncation_index);

// Exact integral of a depth-<=2 potential against a measure with computable
// pair marginals.
double potential_integral(const ShiftMeasure& mu, const Potential& phi);

struct GibbsCertificate {
  double pressure = 0.0;
  double distortion = 1.0;  // G >= 1
  int depth_tested = 0;
  Word worst_word;
  bool unbounded = false;  // a null cylinder carries finite potential weight
};

// G = exp(max over cylinders of length <= max_len of
// |log mu([w]) + N*P - S_N phi(w)|).
GibbsCertificate gibbs_certificate(const ShiftMeasure& mu, const Potential& phi, double pressure,
                                   int max_len, const TransitionStructure& trans,
                                   int truncation_index);

// transfer_pressure(phi) - (h(mu) + int(phi) dmu); zero iff mu is the RPF
// equilibrium, nonnegative by the variational principle.
double equilibrium_gap(const ShiftMeasure& mu, const Potential& phi,
                       const TransitionStructure& trans, int truncation_index);

struct ConstrainedPressureResult {
  double budget = 0.0;
  double value = 0.0;
  double multiplier = 0.0;
  bool active = false;
  ShiftMeasure witness;
  double witness_constraint = 0.0;  // int F d(witness)
  double duality_slack = 0.0;       // value - (h + int f) of the witness, >= 0
};

// P^{F,D}(f) = sup over invariant measures with int F <= D of h + int f,
// computed through the Lagrangian dual inf_{t>=0} [P(f - tF) + tD].
ConstrainedPressureResult constrained_pressure(const Potential& f, const Potential& constraint,
                                               double budget, const TransitionStructure& trans,
                                               int truncation_index);

}  // namespace entlab
