#include "entlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

namespace entlab {

namespace {

Word parse_word_key(const std::string& key) {
  Word w;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, ',')) w.push_back(std::stoi(item));
  return w;
}

std::string word_key(const Word& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ',';
    os << w[i];
  }
  return os.str();
}

}  // namespace

TransitionStructure trans_from_json(const Json& j) {
  const Json& aj = j.at("alphabet");
  const std::string kind = aj.at("kind").get<std::string>();
  Alphabet alphabet = kind == "finite" ? Alphabet::Finite(aj.at("size").get<int>())
                                       : Alphabet::Countable();
  if (kind != "finite" && kind != "countable")
    throw std::invalid_argument("alphabet kind must be finite or countable");

  std::vector<int> truncations;
  if (j.contains("truncations")) truncations = j.at("truncations").get<std::vector<int>>();

  const Json& sj = j.at("successors");
  std::optional<TransitionStructure> out;
  if (sj.is_object() && sj.contains("rule")) {
    const std::string rule = sj.at("rule").get<std::string>();
    if (rule == "full") {
      out = TransitionStructure::FullShift(alphabet, truncations);
    } else if (rule == "band") {
      out = TransitionStructure::BandShift(alphabet, sj.at("params").at("width").get<int>(),
                                           truncations);
    } else {
      throw std::invalid_argument("unknown successor rule: " + rule);
    }
  } else {
    std::map<Symbol, std::vector<Symbol>> succ;
    for (auto it = sj.begin(); it != sj.end(); ++it)
      succ[std::stoi(it.key())] = it.value().get<std::vector<Symbol>>();
    out = TransitionStructure(alphabet, std::move(succ), truncations);
  }
  if (j.contains("bip")) out->bip_declared = j.at("bip").get<bool>();
  return *out;
}

Json trans_to_json(const TransitionStructure& trans) {
  Json j;
  if (trans.alphabet().finite)
    j["alphabet"] = {{"kind", "finite"}, {"size", trans.alphabet().size}};
  else
    j["alphabet"] = {{"kind", "countable"}};
  switch (trans.rule()) {
    case TransitionStructure::Rule::Full:
      j["successors"] = {{"rule", "full"}};
      break;
    case TransitionStructure::Rule::Band:
      j["successors"] = {{"rule", "band"}, {"params", {{"width", trans.band_width()}}}};
      break;
    case TransitionStructure::Rule::Explicit: {
      Json s = Json::object();
      for (const auto& [a, list] : trans.explicit_successors()) s[std::to_string(a)] = list;
      j["successors"] = std::move(s);
      break;
    }
  }
  j["truncations"] = trans.truncations();
  if (trans.bip_declared) j["bip"] = true;
  return j;
}

ShiftMeasure measure_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const double mass = j.value("mass", 1.0);
  if (kind == "bernoulli") {
    auto weights = j.at("weights").get<std::vector<double>>();
    std::vector<Symbol> support;
    if (j.contains("support"))
      support = j.at("support").get<std::vector<Symbol>>();
    else
      for (std::size_t i = 0; i < weights.size(); ++i) support.push_back(static_cast<Symbol>(i));
    return make_bernoulli(std::move(support), std::move(weights), mass);
  }
  if (kind == "geometric") return make_geometric(j.at("ratio").get<double>(), mass);
  if (kind == "markov") {
    auto rows = j.at("rows").get<std::vector<std::vector<double>>>();
    std::vector<Symbol> symbols;
    if (j.contains("symbols"))
      symbols = j.at("symbols").get<std::vector<Symbol>>();
    else
      for (std::size_t i = 0; i < rows.size(); ++i) symbols.push_back(static_cast<Symbol>(i));
    if (j.contains("pi"))
      return ShiftMeasure(
          MarkovKernel{std::move(symbols), std::move(rows), j.at("pi").get<std::vector<double>>()},
          mass);
    return make_markov(std::move(symbols), std::move(rows), mass);
  }
  if (kind == "orbit") return make_orbit(j.at("cycle").get<Word>(), mass);
  if (kind == "mixture") {
    std::vector<ShiftMeasure> components;
    for (const Json& c : j.at("components")) components.push_back(measure_from_json(c));
    return make_mixture(std::move(components), j.at("weights").get<std::vector<double>>());
  }
  throw std::invalid_argument("unknown measure kind: " + kind);
}

Json measure_to_json(const ShiftMeasure& mu) {
  struct Visitor {
    Json operator()(const BernoulliKernel& k) const {
      return {{"kind", "bernoulli"}, {"support", k.support}, {"weights", k.weights}};
    }
    Json operator()(const GeometricKernel& k) const {
      return {{"kind", "geometric"}, {"ratio", k.ratio}};
    }
    Json operator()(const MarkovKernel& k) const {
      return {{"kind", "markov"}, {"symbols", k.symbols}, {"rows", k.rows}, {"pi", k.pi}};
    }
    Json operator()(const OrbitKernel& k) const { return {{"kind", "orbit"}, {"cycle", k.cycle}}; }
    Json operator()(const MixtureKernel& k) const {
      Json comps = Json::array();
      for (const auto& c : k.components) comps.push_back(measure_to_json(c));
      return {{"kind", "mixture"}, {"components", std::move(comps)}, {"weights", k.weights}};
    }
  };
  Json j = std::visit(Visitor{}, mu.kernel());
  j["mass"] = mu.total_mass();
  return j;
}

Potential potential_from_json(const Json& j) {
  const int depth = j.at("depth").get<int>();
  if (j.contains("affine")) {
    if (depth != 1) throw std::invalid_argument("affine potentials are depth-1");
    return Potential::Affine(j.at("affine").at("slope").get<double>(),
                             j.at("affine").at("offset").get<double>());
  }
  std::map<Word, double> values;
  for (auto it = j.at("values").begin(); it != j.at("values").end(); ++it)
    values[parse_word_key(it.key())] = it.value().get<double>();
  std::optional<double> sup;
  if (j.contains("sup")) sup = j.at("sup").get<double>();
  return Potential(depth, std::move(values), sup);
}

Json potential_to_json(const Potential& phi) {
  Json j;
  j["depth"] = phi.depth();
  if (phi.affine()) {
    j["affine"] = {{"slope", phi.slope()}, {"offset", phi.offset()}};
  } else {
    Json v = Json::object();
    for (const auto& [w, x] : phi.values()) v[word_key(w)] = x;
    j["values"] = std::move(v);
  }
  j["sup"] = phi.sup_bound();
  return j;
}

Roof roof_from_json(const Json& j) {
  return Roof(potential_from_json(j), j.at("lower_bound").get<double>());
}

Json roof_to_json(const Roof& roof) {
  Json j = potential_to_json(roof.tau);
  j["lower_bound"] = roof.lower_bound;
  return j;
}

Json estimate_to_json(const EntropyEstimate& e) {
  return {{"estimator", e.estimator},
          {"value", e.value},
          {"params",
           {{"n", e.n}, {"k", e.k}, {"delta", e.delta}, {"truncation_index", e.truncation_index}}},
          {"count", e.cover_count},
          {"mass_deficit", e.mass_deficit}};
}

Json certificate_to_json(const GibbsCertificate& c) {
  return {{"pressure", c.pressure},
          {"distortion", c.unbounded ? Json("unbounded") : Json(c.distortion)},
          {"depth_tested", c.depth_tested},
          {"worst_word", c.worst_word},
          {"unbounded", c.unbounded}};
}

Json constrained_to_json(const ConstrainedPressureResult& r) {
  return {{"budget", r.budget},
          {"value", r.value},
          {"multiplier", r.multiplier},
          {"active", r.active},
          {"witness", measure_to_json(r.witness)},
          {"witness_constraint", r.witness_constraint},
          {"duality_slack", r.duality_slack}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string format_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

}  // namespace entlab
