#include "entlab/suspension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace entlab {

Roof::Roof(Potential tau_, double lower_bound_) : tau(std::move(tau_)), lower_bound(lower_bound_) {
  if (!(lower_bound > 0.0)) throw std::invalid_argument("roof: lower bound must be positive");
  if (tau.affine()) {
    if (tau.slope() < 0.0 || tau.offset() < lower_bound - 1e-12)
      throw std::invalid_argument("roof: affine roof dips below its lower bound");
  } else {
    for (const auto& [w, v] : tau.values())
      if (v < lower_bound - 1e-12)
        throw std::invalid_argument("roof: value below the declared lower bound at " +
                                    word_to_string(w));
  }
}

double roof_integral(const ShiftMeasure& mu, const Roof& roof) {
  try {
    return potential_integral(mu, roof.tau);
  } catch (const std::domain_error&) {
    throw std::domain_error("roof_integral: mu is not in M_T(tau); the tail cannot be certified");
  }
}

double abramov(double base_entropy, double roof_int) {
  if (!(roof_int > 0.0)) throw std::domain_error("abramov: roof integral must be positive");
  if (base_entropy < 0.0) throw std::domain_error("abramov: entropy must be nonnegative");
  return base_entropy / roof_int;
}

FlowMeasure lift_measure(const ShiftMeasure& mu, const Roof& roof) {
  if (std::abs(mu.total_mass() - 1.0) > 1e-9)
    throw std::invalid_argument("lift_measure: base must be a probability measure");
  const double normalizer = roof_integral(mu, roof);
  return {mu, normalizer, abramov(closed_form_entropy(mu), normalizer)};
}

FlowSemicontinuityReport flow_semicontinuity_check(const std::vector<ShiftMeasure>& seq,
                                                   const ShiftMeasure& limit, const Roof& roof,
                                                   const std::vector<double>& base_entropies,
                                                   int gap_depth, int gap_alphabet_limit,
                                                   double tol) {
  if (seq.empty()) throw std::invalid_argument("flow_semicontinuity_check: empty sequence");
  if (base_entropies.size() != seq.size())
    throw std::invalid_argument("flow_semicontinuity_check: one base entropy per measure required");

  FlowSemicontinuityReport out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double ri = roof_integral(seq[i], roof);
    out.roof_integrals.push_back(ri);
    out.flow_entropies.push_back(abramov(base_entropies[i], ri));
    out.vague_gaps.push_back(vague_gap(seq[i], limit, gap_depth, gap_alphabet_limit));
  }

  const std::size_t tail_start = seq.size() - (seq.size() + 2) / 3;
  out.gaps_decreasing = true;
  for (std::size_t i = tail_start; i + 1 < seq.size(); ++i)
    if (out.vague_gaps[i + 1] > out.vague_gaps[i] + tol) out.gaps_decreasing = false;

  out.limit_roof_integral = roof_integral(limit, roof);
  double liminf = std::numeric_limits<double>::infinity();
  double limsup_flow = -std::numeric_limits<double>::infinity();
  for (std::size_t i = tail_start; i < seq.size(); ++i) {
    liminf = std::min(liminf, out.roof_integrals[i]);
    limsup_flow = std::max(limsup_flow, out.flow_entropies[i]);
  }
  out.liminf_surrogate = liminf;
  out.roof_liminf_holds = out.limit_roof_integral <= liminf + tol;
  out.liminf_strict = out.limit_roof_integral < liminf - tol;

  if (std::abs(limit.total_mass() - 1.0) <= 1e-9) {
    const double h_flow = abramov(closed_form_entropy(limit), out.limit_roof_integral);
    out.limit_flow_entropy = h_flow;
    out.flow_semicontinuity_holds = limsup_flow <= h_flow + tol;
  }
  return out;
}

}  // namespace entlab
