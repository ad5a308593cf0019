#include <doctest.h>

#include <cmath>

#include "entlab/io.hpp"

using namespace entlab;

TEST_CASE("transition structures round-trip through JSON") {
  const Json j = Json::parse(R"({
    "alphabet": {"kind": "finite", "size": 2},
    "successors": {"0": [0, 1], "1": [0]},
    "truncations": [2]
  })");
  const auto gm = trans_from_json(j);
  CHECK(gm.allowed(0, 1));
  CHECK_FALSE(gm.allowed(1, 1));
  const auto back = trans_from_json(trans_to_json(gm));
  CHECK(back.allowed(0, 0));
  CHECK_FALSE(back.allowed(1, 1));

  const Json full = Json::parse(R"({
    "alphabet": {"kind": "countable"},
    "successors": {"rule": "full"},
    "truncations": [2, 4],
    "bip": true
  })");
  const auto f = trans_from_json(full);
  CHECK(f.bip_declared);
  CHECK(f.allowed(3, 100));
  CHECK(trans_to_json(f)["bip"] == true);

  const Json band = Json::parse(R"({
    "alphabet": {"kind": "countable"},
    "successors": {"rule": "band", "params": {"width": 2}},
    "truncations": [3]
  })");
  CHECK(trans_from_json(band).allowed(1, 3));
  CHECK_FALSE(trans_from_json(band).allowed(1, 4));
}

TEST_CASE("measures round-trip through JSON") {
  const Json bern = Json::parse(R"({"kind": "bernoulli", "weights": [0.25, 0.75]})");
  const auto b = measure_from_json(bern);
  CHECK(std::exp(b.cylinder_log_mass({1})) == doctest::Approx(0.75).epsilon(1e-14));
  const auto b2 = measure_from_json(measure_to_json(b));
  CHECK(b2.cylinder_log_mass({0, 1}) == b.cylinder_log_mass({0, 1}));

  const Json mix = Json::parse(R"({
    "kind": "mixture",
    "components": [
      {"kind": "orbit", "cycle": [0, 1]},
      {"kind": "geometric", "ratio": 0.5}
    ],
    "weights": [0.4, 0.6]
  })");
  const auto m = measure_from_json(mix);
  CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
  const auto m2 = measure_from_json(measure_to_json(m));
  CHECK(m2.cylinder_log_mass({0, 1, 0}) == m.cylinder_log_mass({0, 1, 0}));

  const Json markov = Json::parse(R"({
    "kind": "markov", "rows": [[0.5, 0.5], [1.0, 0.0]], "mass": 0.8
  })");
  const auto mk = measure_from_json(markov);
  CHECK(mk.total_mass() == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("potentials and roofs round-trip") {
  const Json pj = Json::parse(R"({"depth": 2, "values": {"0,0": 1.5, "0,1": -2.0, "1,0": 0.25}})");
  const auto phi = potential_from_json(pj);
  CHECK(phi.value(0, 1) == -2.0);
  const auto phi2 = potential_from_json(potential_to_json(phi));
  CHECK(phi2.value(1, 0) == 0.25);

  const auto aff = potential_from_json(
      Json::parse(R"({"depth": 1, "affine": {"slope": 1.0, "offset": 2.0}})"));
  CHECK(aff.value(3) == 5.0);

  const auto roof = roof_from_json(
      Json::parse(R"({"depth": 1, "affine": {"slope": 0.0, "offset": 2.0}, "lower_bound": 2.0})"));
  CHECK(roof.lower_bound == 2.0);
  CHECK(roof_from_json(roof_to_json(roof)).tau.value(0) == 2.0);
}

TEST_CASE("record serialization carries every field") {
  EntropyEstimate e;
  e.value = 0.5;
  e.estimator = "katok";
  e.n = 14;
  e.k = 1;
  e.delta = 0.3;
  e.cover_count = 123;
  const Json je = estimate_to_json(e);
  CHECK(je["params"]["n"] == 14);
  CHECK(je["count"] == 123);

  GibbsCertificate c;
  c.pressure = 0.7;
  c.distortion = 1.25;
  c.depth_tested = 12;
  c.worst_word = {0, 1};
  CHECK(certificate_to_json(c)["distortion"] == 1.25);
  c.unbounded = true;
  CHECK(certificate_to_json(c)["distortion"] == "unbounded");
}

TEST_CASE("fixed-width formatting is stable") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(-0.0) == "-0");
}
