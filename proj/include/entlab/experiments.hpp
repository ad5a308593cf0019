#pragma once

#include <cstdint>
#include <string>

#include "entlab/io.hpp"

namespace entlab {

struct ExperimentResult {
  std::string verdict;  // "holds" | "violated" | "inequality-form-only" | "none"
  int exit_code = 0;    // 0 holds/none, 2 violated
  Json records;         // array of row records
  Json metadata;
  std::string csv;
};

// Semicontinuity / escape-of-mass experiment over a parametric measure
// family; verdict compares the tail max of closed-form entropies against
// ||mu|| h(mu/||mu||) + (1-||mu||) h_infinity.
ExperimentResult run_semicontinuity(const Json& config, std::uint64_t seed);

// Katok/plugin estimates across an (N, k, delta) grid; CSV columns
// measure_id,estimator,n,k,delta,value,count,mass_deficit.
ExperimentResult run_sweep(const Json& config, std::uint64_t seed);

// Gibbs certificate + equilibrium gap per configured case.
ExperimentResult run_gibbs_audit(const Json& config, std::uint64_t seed);

// First-return masses and the Kac partial sums.
ExperimentResult run_kac(const Json& config, std::uint64_t seed);

// Abramov entropies under a roof, with the flow-level semicontinuity report
// when a limit measure is configured.
ExperimentResult run_suspend(const Json& config, std::uint64_t seed);

// Dispatch on config["experiment"].
ExperimentResult run_config(const Json& config, std::uint64_t seed);

// Measure family interpreter shared by the experiments:
// {"kind":"constant","measure":{...}}
// {"kind":"explicit","measures":[{...},...]}    (index selects the entry)
// {"kind":"bernoulli_drift","offset":o}          p_n = 1/2 + 1/(n+o)
// {"kind":"orbit_escape","alpha":a,"base":{...}} (1-a) base + a Orbit((n))
// {"kind":"block_escape","alpha":a,"block_length":L,"base":{...}}
//                                                (1-a) base + a Uniform{n..n+L-1}
ShiftMeasure family_member(const Json& family, int index);

}  // namespace entlab
