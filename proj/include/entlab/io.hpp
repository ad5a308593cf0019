#pragma once

#include <string>

#include <json.hpp>

#include "entlab/entropy.hpp"
#include "entlab/measure.hpp"
#include "entlab/shift.hpp"
#include "entlab/suspension.hpp"
#include "entlab/thermo.hpp"

namespace entlab {

using Json = nlohmann::json;

// Transition structures:
// {"alphabet": {"kind":"finite","size":m} | {"kind":"countable"},
//  "successors": {"0":[...],...} | {"rule":"full"} | {"rule":"band","params":{"width":w}},
//  "truncations": [m1,m2,...], "bip": bool?}
TransitionStructure trans_from_json(const Json& j);
Json trans_to_json(const TransitionStructure& trans);

// Measures:
// {"kind":"bernoulli","support":[...]?,"weights":[...],"mass":m}
// {"kind":"geometric","ratio":r,"mass":m}
// {"kind":"markov","symbols":[...]?,"rows":[[...]],"pi":[...]?,"mass":m}
// {"kind":"orbit","cycle":[...],"mass":m}
// {"kind":"mixture","components":[...],"weights":[...]}
ShiftMeasure measure_from_json(const Json& j);
Json measure_to_json(const ShiftMeasure& mu);

// Potentials: {"depth":k,"values":{"a,b":v,...},"sup":s?} or
// {"depth":1,"affine":{"slope":s,"offset":o}}
Potential potential_from_json(const Json& j);
Json potential_to_json(const Potential& phi);

// Roof: a potential with an extra "lower_bound" field.
Roof roof_from_json(const Json& j);
Json roof_to_json(const Roof& roof);

Json estimate_to_json(const EntropyEstimate& e);
Json certificate_to_json(const GibbsCertificate& c);
Json constrained_to_json(const ConstrainedPressureResult& r);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Fixed-width float formatting for byte-reproducible tables.
std::string format_double(double x);

}  // namespace entlab
