#include <doctest.h>

#include <cmath>

#include "entlab/entropy.hpp"
#include "entlab/rng.hpp"

using namespace entlab;

namespace {

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

TransitionStructure golden_mean() {
  return TransitionStructure(Alphabet::Finite(2), {{0, {0, 1}}, {1, {0}}}, {2});
}

TransitionStructure full2() { return TransitionStructure::FullShift(Alphabet::Finite(2), {2}); }

ShiftMeasure golden_parry() {
  const double g = kGolden;
  return make_markov({0, 1}, {{1.0 / g, 1.0 / (g * g)}, {1.0, 0.0}});
}

double bernoulli_h(double p) { return -(p * std::log(p) + (1 - p) * std::log(1 - p)); }

}  // namespace

TEST_CASE("closed-form Markov entropy") {
  CHECK(markov_entropy(make_uniform_bernoulli(2)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(markov_entropy(make_orbit({0, 1, 0})) == 0.0);
  // cross-module oracle: entropy of the Parry measure is the pressure at 0
  CHECK(markov_entropy(golden_parry()) ==
        doctest::Approx(transfer_pressure(Potential::Constant(0.0), golden_mean(), 0))
            .epsilon(1e-10));
}

TEST_CASE("plug-in entropy") {
  // i.i.d. additivity: H_n = n H_1, so the estimate is exact at every n
  const auto bern = make_bernoulli({0, 1}, {0.3, 0.7});
  for (int n = 1; n <= 6; ++n)
    CHECK(plugin_entropy(bern, full2(), 0, n).value ==
          doctest::Approx(bernoulli_h(0.3)).epsilon(1e-12));

  const auto est = plugin_entropy(golden_parry(), golden_mean(), 0, 10);
  CHECK(std::abs(est.value - std::log(kGolden)) <= 0.02);
  CHECK(est.mass_deficit <= 1e-12);

  for (int n : {1, 2, 5, 9})
    CHECK(plugin_entropy(make_orbit({0, 1}), full2(), 0, n).value ==
          doctest::Approx(std::log(2.0) / n).epsilon(1e-12));
}

TEST_CASE("plug-in block entropies are subadditive") {
  for (const auto& mu : {golden_parry(), make_bernoulli({0, 1}, {0.6, 0.4})}) {
    const auto& trans = golden_mean();
    auto big_h = [&](int n) { return plugin_entropy(mu, trans, 0, n).value * n; };
    for (int n = 1; n <= 6; ++n)
      for (int m = 1; m + n <= 12; ++m) CHECK(big_h(n + m) <= big_h(n) + big_h(m) + 1e-10);
  }
}

TEST_CASE("Katok estimator via minimal cylinder covers") {
  // 2^17 equal-mass cylinders; half of them are needed, count exactly 2^16
  const auto exact = katok_estimate(make_uniform_bernoulli(2), full2(), 0, 16, 0, 0.5);
  CHECK(exact.cover_count == 65536);
  CHECK(std::abs(exact.value - std::log(2.0)) <= 1e-12);

  const auto orbit = katok_estimate(make_orbit({0}), full2(), 0, 7, 2, 0.3);
  CHECK(orbit.cover_count == 1);
  CHECK(orbit.value == 0.0);

  for (int k = 0; k <= 2; ++k) {
    const auto est = katok_estimate(golden_parry(), golden_mean(), 0, 14, k, 0.3);
    CHECK(std::abs(est.value - std::log(kGolden)) <= 0.05);
  }
}

TEST_CASE("cover counts are monotone in delta and k") {
  const auto mu = golden_parry();
  const auto gm = golden_mean();
  std::uint64_t prev = UINT64_MAX;
  for (double delta : {0.1, 0.2, 0.3, 0.5, 0.7}) {
    const auto est = katok_estimate(mu, gm, 0, 10, 1, delta);
    CHECK(est.cover_count <= prev);
    prev = est.cover_count;
  }
  std::uint64_t prev_k = 0;
  for (int k = 0; k <= 3; ++k) {
    const auto est = katok_estimate(mu, gm, 0, 10, k, 0.3);
    CHECK(est.cover_count >= prev_k);
    prev_k = est.cover_count;
  }
}

TEST_CASE("sub-probability measures need the scaled-target flag") {
  const auto sub = make_mixture({make_uniform_bernoulli(2)}, {0.6});
  CHECK_THROWS_AS((void)katok_estimate(sub, full2(), 0, 8, 0, 0.3), InsufficientMassError);
  const auto scaled = katok_estimate(sub, full2(), 0, 8, 0, 0.3, /*scale_target_to_mass=*/true);
  CHECK(scaled.cover_count > 0);
}

TEST_CASE("spread report exhibits independence of the ball radius") {
  const auto uni = simplified_formula_report(make_uniform_bernoulli(2), full2(), 0, 12, 0.5, 0, 3);
  CHECK(uni.spread <= 0.06);
  const auto fixed = simplified_formula_report(make_orbit({0}), full2(), 0, 10, 0.3, 0, 3);
  CHECK(fixed.spread == 0.0);
  const auto orb = simplified_formula_report(make_orbit({0, 1}), full2(), 0, 10, 0.3, 0, 3);
  CHECK(orb.spread <= 0.02);
  const auto gm = simplified_formula_report(golden_parry(), golden_mean(), 0, 12, 0.3, 0, 2);
  CHECK(gm.spread <= 0.08);
}

TEST_CASE("SMB deviation statistics") {
  const auto flat = smb_deviation(make_uniform_bernoulli(2), 64, 50, 7u, 0.01);
  CHECK(flat.mean == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(flat.stddev == 0.0);
  CHECK(flat.fraction_within == 1.0);

  const auto skew = smb_deviation(make_bernoulli({0, 1}, {0.9, 0.1}), 2000, 400, 11u, 0.05);
  CHECK(std::abs(skew.mean - bernoulli_h(0.9)) <= 0.01);
  CHECK(skew.fraction_within >= 0.95);

  // same seed, same summary
  const auto again = smb_deviation(make_bernoulli({0, 1}, {0.9, 0.1}), 2000, 400, 11u, 0.05);
  CHECK(again.mean == skew.mean);
  CHECK(again.stddev == skew.stddev);
}

TEST_CASE("Birkhoff averages concentrate") {
  CHECK(birkhoff_concentration(golden_parry(), Potential::Constant(3.0), 100, 0.01, 50, 3u) == 1.0);

  std::map<Word, double> ind = {{{0}, 1.0}, {{1}, 0.0}};
  const Potential chi0(1, ind);
  CHECK(birkhoff_concentration(golden_parry(), chi0, 2000, 0.05, 200, 5u) >= 0.99);

  // shrinking epsilon only removes orbits from the event
  double prev = 1.0;
  for (double eps : {0.1, 0.05, 0.02, 0.005, 0.001}) {
    const double frac = birkhoff_concentration(golden_parry(), chi0, 200, eps, 200, 9u);
    CHECK(frac <= prev + 1e-15);
    prev = frac;
  }
}

TEST_CASE("tail entropy bound dominates the true tail entropy") {
  std::vector<double> zeros(30, 0.0);
  for (int k = 1; k <= 4; ++k) zeros[k - 1] = 0.1;
  const auto z = tail_entropy_bound(zeros, 5);
  CHECK(z.tail_entropy == 0.0);
  CHECK(z.bound >= 0.0);
  CHECK(z.dominates);

  std::vector<double> expo(40);
  for (int k = 1; k <= 40; ++k) expo[k - 1] = std::exp(-static_cast<double>(k));
  for (int m = 1; m <= 20; ++m) CHECK(tail_entropy_bound(expo, m).dominates);

  std::vector<double> harmonic(60);
  for (int k = 1; k <= 60; ++k) harmonic[k - 1] = 0.5 / (k * (k + 1.0));
  const auto h = tail_entropy_bound(harmonic, 5);
  CHECK(h.dominates);
  CHECK(h.bound >= h.tail_entropy);
}

TEST_CASE("Katok estimates track the exact entropy from below up to the delta defect") {
  const auto gm = golden_mean();
  const auto parry = golden_parry();
  const double h = markov_entropy(parry);
  for (double delta : {0.2, 0.3, 0.5}) {
    const auto est = katok_estimate(parry, gm, 0, 14, 0, delta);
    CHECK(est.value + 2.0 / 14 * std::log(1.0 / (1.0 - delta)) >= h - 0.05);
  }
}
