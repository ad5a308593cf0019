#include <doctest.h>

#include <cmath>

#include "entlab/rng.hpp"
#include "entlab/thermo.hpp"

using namespace entlab;

namespace {

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

TransitionStructure golden_mean() {
  return TransitionStructure(Alphabet::Finite(2), {{0, {0, 1}}, {1, {0}}}, {2});
}

TransitionStructure full2() { return TransitionStructure::FullShift(Alphabet::Finite(2), {2}); }

Potential depth1(std::vector<double> values) {
  std::map<Word, double> m;
  for (std::size_t a = 0; a < values.size(); ++a) m[{static_cast<Symbol>(a)}] = values[a];
  return Potential(1, std::move(m));
}

// random stochastic rows supported on the permitted transitions
ShiftMeasure random_markov(const TransitionStructure& trans, int m, Rng& rng) {
  std::vector<std::vector<double>> rows(m, std::vector<double>(m, 0.0));
  for (int a = 0; a < m; ++a) {
    double s = 0.0;
    for (Symbol b : trans.successors(a, m)) {
      rows[a][b] = 0.05 + rng.uniform();
      s += rows[a][b];
    }
    for (double& x : rows[a]) x /= s;
  }
  std::vector<Symbol> symbols;
  for (int a = 0; a < m; ++a) symbols.push_back(a);
  return make_markov(symbols, rows);
}

}  // namespace

TEST_CASE("transfer pressure on finite truncations") {
  CHECK(transfer_pressure(Potential::Constant(0.0), full2(), 0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(transfer_pressure(Potential::Constant(0.0), golden_mean(), 0) ==
        doctest::Approx(std::log(kGolden)).epsilon(1e-12));
  for (double p : {0.1, 0.35, 0.5, 0.8, 0.99})
    CHECK(transfer_pressure(depth1({std::log(p), std::log(1.0 - p)}), full2(), 0) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("pressure requires a primitive truncation") {
  const TransitionStructure perm(Alphabet::Finite(2), {{0, {1}}, {1, {0}}}, {2});
  CHECK_THROWS_AS((void)transfer_pressure(Potential::Constant(0.0), perm, 0),
                  std::invalid_argument);
}

TEST_CASE("RPF equilibrium states") {
  const auto parry = rpf_equilibrium(Potential::Constant(0.0), golden_mean(), 0);
  CHECK(markov_entropy(parry) == doctest::Approx(std::log(kGolden)).epsilon(1e-10));
  const auto& k = std::get<MarkovKernel>(parry.kernel());
  CHECK(k.pi[0] == doctest::Approx(kGolden * kGolden / (1 + kGolden * kGolden)).epsilon(1e-10));

  const auto uni = rpf_equilibrium(Potential::Constant(0.0),
                                   TransitionStructure::FullShift(Alphabet::Finite(4), {4}), 0);
  CHECK(std::exp(uni.cylinder_log_mass({2})) == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(std::exp(uni.cylinder_log_mass({1, 3})) == doctest::Approx(1.0 / 16).epsilon(1e-10));

  const auto bern = rpf_equilibrium(depth1({std::log(0.3), std::log(0.7)}), full2(), 0);
  CHECK(std::exp(bern.cylinder_log_mass({0})) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(std::exp(bern.cylinder_log_mass({1, 1})) == doctest::Approx(0.49).epsilon(1e-10));
}

TEST_CASE("Birkhoff sums read one transition past the word") {
  std::map<Word, double> v = {{{0, 0}, 1.0}, {{0, 1}, 2.0}, {{1, 0}, 4.0}};
  const Potential phi(2, v);
  const auto gm = golden_mean();
  // interior transition (0,1) plus the boundary term at the least successor
  // of 1, which is 0
  CHECK(phi.birkhoff_sum({0, 1}, gm, 2) == doctest::Approx(2.0 + 4.0).epsilon(1e-14));
  CHECK(phi.birkhoff_sum({1, 0, 0}, gm, 2) == doctest::Approx(4.0 + 1.0 + 1.0).epsilon(1e-14));
}

TEST_CASE("Gibbs certificate") {
  // depth-1 potential matching an i.i.d. measure exactly: G = 1
  const auto uni = make_uniform_bernoulli(2);
  const auto exact =
      gibbs_certificate(uni, depth1({-std::log(2.0), -std::log(2.0)}), 0.0, 8, full2(), 0);
  CHECK(exact.distortion == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(exact.unbounded);

  // null cylinder with finite weight: unbounded verdict
  const auto orbit = make_orbit({0, 1});
  const auto bad = gibbs_certificate(orbit, Potential::Constant(0.0), 0.0, 4, full2(), 0);
  CHECK(bad.unbounded);

  // certificate of the RPF state against its own data stays bounded in depth
  const auto phi = depth1({0.2, -0.4});
  const auto eq = rpf_equilibrium(phi, golden_mean(), 0);
  const double pressure = transfer_pressure(phi, golden_mean(), 0);
  std::vector<double> gs;
  for (int len = 4; len <= 12; ++len) {
    const auto cert = gibbs_certificate(eq, phi, pressure, len, golden_mean(), 0);
    CHECK_FALSE(cert.unbounded);
    gs.push_back(cert.distortion);
  }
  for (std::size_t i = 0; i + 1 < gs.size(); ++i) CHECK(gs[i] <= gs[i + 1] + 1e-12);
  CHECK(gs.back() <= gs[2] + 1e-9);  // stabilizes: no drift as depth grows
}

TEST_CASE("equilibrium gap") {
  const auto phi = depth1({-0.3, 0.5});
  const auto gm = golden_mean();
  CHECK(equilibrium_gap(rpf_equilibrium(phi, gm, 0), phi, gm, 0) <= 1e-8);

  CHECK(equilibrium_gap(make_uniform_bernoulli(2), Potential::Constant(0.0), full2(), 0) ==
        doctest::Approx(0.0).epsilon(1e-12));

  const double h9 = -(0.9 * std::log(0.9) + 0.1 * std::log(0.1));
  CHECK(equilibrium_gap(make_bernoulli({0, 1}, {0.9, 0.1}), Potential::Constant(0.0), full2(), 0) ==
        doctest::Approx(std::log(2.0) - h9).epsilon(1e-10));
}

TEST_CASE("variational inequality over random Markov measures") {
  Rng rng(20260823u);
  const auto gm = golden_mean();
  const auto phi = depth1({0.4, -0.7});
  const double pressure = transfer_pressure(phi, gm, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto mu = random_markov(gm, 2, rng);
    CHECK(markov_entropy(mu) + potential_integral(mu, phi) <= pressure + 1e-10);
  }
}

TEST_CASE("pressure moves by at most the sup-norm of the perturbation") {
  const auto gm = golden_mean();
  const double base = transfer_pressure(depth1({0.1, -0.2}), gm, 0);
  const double eps = 1e-3;
  for (double da : {-eps, 0.0, eps})
    for (double db : {-eps, 0.0, eps}) {
      const double moved = transfer_pressure(depth1({0.1 + da, -0.2 + db}), gm, 0);
      CHECK(std::abs(moved - base) <= eps + 1e-12);
    }
}

TEST_CASE("pressure schedule is nondecreasing along truncations") {
  const auto band = TransitionStructure::BandShift(Alphabet::Countable(), 2, {2, 3, 5, 8});
  const auto sched = pressure_schedule(Potential::Constant(0.0), band);
  REQUIRE(sched.values.size() == 4);
  for (std::size_t i = 0; i + 1 < sched.values.size(); ++i)
    CHECK(sched.values[i] <= sched.values[i + 1] + 1e-12);
  CHECK(sched.last_increment >= 0.0);
}

TEST_CASE("potential integrals") {
  // depth-1 affine against the geometric product measure: E[a] = r/(1-r)
  const auto geo = make_geometric(0.5);
  CHECK(potential_integral(geo, Potential::Affine(1.0, 1.0)) == doctest::Approx(2.0).epsilon(1e-10));

  // orbit measures average the potential over the cycle transitions
  std::map<Word, double> v = {{{0, 1}, 3.0}, {{1, 0}, 5.0}, {{0, 0}, 11.0}};
  CHECK(potential_integral(make_orbit({0, 1}), Potential(2, v)) ==
        doctest::Approx(4.0).epsilon(1e-14));

  // mixtures integrate linearly
  const auto mix = make_mixture({make_uniform_bernoulli(2), make_orbit({0})}, {0.5, 0.5});
  const auto phi = depth1({1.0, 3.0});
  CHECK(potential_integral(mix, phi) == doctest::Approx(0.5 * 2.0 + 0.5 * 1.0).epsilon(1e-12));

  // non-affine table against countable support cannot be certified
  CHECK_THROWS_AS((void)potential_integral(geo, depth1({1.0, 2.0})), std::domain_error);
}

TEST_CASE("constrained pressure") {
  const auto zero = Potential::Constant(0.0);
  const auto count1 = depth1({0.0, 1.0});  // F = indicator of symbol 1

  // inactive constraint: unconstrained equilibrium already satisfies the budget
  const auto loose = constrained_pressure(zero, count1, 0.9, full2(), 0);
  CHECK_FALSE(loose.active);
  CHECK(loose.multiplier == 0.0);
  CHECK(loose.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // binding budget on the full 2-shift: the optimum is Bernoulli(0.8, 0.2)
  const double h02 = -(0.2 * std::log(0.2) + 0.8 * std::log(0.8));
  const auto tight = constrained_pressure(zero, count1, 0.2, full2(), 0);
  CHECK(tight.active);
  CHECK(tight.value == doctest::Approx(h02).epsilon(1e-8));
  CHECK(tight.witness_constraint <= 0.2 + 1e-8);
  CHECK(tight.duality_slack >= -1e-10);
  CHECK(tight.duality_slack <= 1e-6);

  // budget 0 on the golden mean leaves only the fixed point at 0
  const auto frozen = constrained_pressure(zero, count1, 0.0, golden_mean(), 0);
  CHECK(frozen.value <= 1e-6);
  CHECK(frozen.value >= -1e-12);

  // value is nondecreasing in the budget
  double prev = -1.0;
  for (double d : {0.0, 0.05, 0.1, 0.2, 0.35, 0.5}) {
    const double v = constrained_pressure(zero, count1, d, full2(), 0).value;
    CHECK(v >= prev - 1e-9);
    prev = v;
  }
}
