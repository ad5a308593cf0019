#include "entlab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entlab/logspace.hpp"
#include "entlab/rng.hpp"

namespace entlab {

EntropyEstimate plugin_entropy(const ShiftMeasure& mu, const TransitionStructure& trans,
                               int truncation_index, int n, std::uint64_t budget) {
  if (n < 1) throw std::invalid_argument("plugin_entropy: n must be >= 1");
  const auto words = enumerate_cylinders(trans, truncation_index, n, budget);
  CompensatedSum h, covered;
  for (const Word& w : words) {
    const double lm = mu.cylinder_log_mass(w);
    if (lm == kNegInf) continue;
    const double m = std::exp(lm);
    covered.add(m);
    h.add(-m * lm);
  }
  EntropyEstimate out;
  out.estimator = "plugin";
  out.n = n;
  out.truncation_index = truncation_index;
  out.value = h.value() / static_cast<double>(n);
  out.mass_deficit = std::max(0.0, 1.0 - covered.value());
  return out;
}

EntropyEstimate katok_estimate(const ShiftMeasure& mu, const TransitionStructure& trans,
                               int truncation_index, int n, int k, double delta,
                               bool scale_target_to_mass, std::uint64_t budget) {
  if (n < 1 || k < 0) throw std::invalid_argument("katok_estimate: need n >= 1, k >= 0");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("katok_estimate: delta must lie in (0,1)");
  const double target_mass = scale_target_to_mass ? mu.total_mass() : 1.0;
  if (mu.total_mass() < (1.0 - delta) * target_mass - 1e-15)
    throw InsufficientMassError("katok_estimate: total mass below 1-delta");

  const int len = n + k + 1;
  const auto words = enumerate_cylinders(trans, truncation_index, len, budget);
  std::vector<double> log_masses(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) log_masses[i] = mu.cylinder_log_mass(words[i]);

  // enumeration is lexicographic, so a stable sort by descending mass keeps
  // the lexicographic tie-break
  std::vector<std::size_t> order(words.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return log_masses[a] > log_masses[b]; });

  const double target = (1.0 - delta) * target_mass;
  // relative slack absorbs the rounding of long log-space products at exact
  // thresholds such as delta = 1/2 on the uniform measure
  const double threshold = target * (1.0 - 1e-9);
  CompensatedSum covered;
  std::uint64_t count = 0;
  for (std::size_t idx : order) {
    if (log_masses[idx] == kNegInf) break;
    covered.add(std::exp(log_masses[idx]));
    ++count;
    if (covered.value() >= threshold) break;
  }
  if (covered.value() < threshold)
    throw InsufficientMassError("katok_estimate: truncation carries mass " +
                                std::to_string(covered.value()) + " < 1-delta");

  EntropyEstimate out;
  out.estimator = "katok";
  out.n = n;
  out.k = k;
  out.delta = delta;
  out.truncation_index = truncation_index;
  out.cover_count = count;
  // Normalizing by n+k (the number of shifts resolved by a ball of radius
  // theta^k) rather than n alone removes the O(k/n) bias of the raw covering
  // exponent: on the uniform measure every k then reports exactly log 2,
  // which is the radius-independence the estimator exists to exhibit. The
  // two agree at k = 0 and in the n -> infinity limit.
  out.value = std::log(static_cast<double>(count)) / static_cast<double>(n + k);
  return out;
}

SpreadReport simplified_formula_report(const ShiftMeasure& mu, const TransitionStructure& trans,
                                       int truncation_index, int n, double delta, int k_lo,
                                       int k_hi) {
  if (k_lo > k_hi) throw std::invalid_argument("simplified_formula_report: empty k range");
  SpreadReport out;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int k = k_lo; k <= k_hi; ++k) {
    out.estimates.push_back(katok_estimate(mu, trans, truncation_index, n, k, delta));
    lo = std::min(lo, out.estimates.back().value);
    hi = std::max(hi, out.estimates.back().value);
  }
  out.spread = hi - lo;
  return out;
}

namespace {

Symbol sample_symbol(const std::vector<Symbol>& symbols, const std::vector<double>& weights,
                     Rng& rng) {
  return symbols[static_cast<std::size_t>(rng.categorical(weights))];
}

}  // namespace

Word sample_orbit(const ShiftMeasure& mu, int length, Rng& rng) {
  if (std::abs(mu.total_mass() - 1.0) > 1e-9)
    throw std::invalid_argument("sample_orbit: sampling needs a probability measure");
  struct Visitor {
    int length;
    Rng& rng;
    Word operator()(const BernoulliKernel& k) const {
      Word w(static_cast<std::size_t>(length));
      for (auto& s : w) s = sample_symbol(k.support, k.weights, rng);
      return w;
    }
    Word operator()(const GeometricKernel& k) const {
      Word w(static_cast<std::size_t>(length));
      const double lr = std::log(k.ratio);
      for (auto& s : w) {
        const double u = rng.uniform();
        s = static_cast<Symbol>(std::floor(std::log1p(-u) / lr));
      }
      return w;
    }
    Word operator()(const MarkovKernel& k) const {
      Word w;
      w.reserve(static_cast<std::size_t>(length));
      int cur = rng.categorical(k.pi);
      w.push_back(k.symbols[static_cast<std::size_t>(cur)]);
      for (int t = 1; t < length; ++t) {
        cur = rng.categorical(k.rows[static_cast<std::size_t>(cur)]);
        w.push_back(k.symbols[static_cast<std::size_t>(cur)]);
      }
      return w;
    }
    Word operator()(const OrbitKernel& k) const {
      const std::size_t p = k.cycle.size();
      const std::size_t phase = static_cast<std::size_t>(rng.uniform() * static_cast<double>(p));
      Word w(static_cast<std::size_t>(length));
      for (int t = 0; t < length; ++t)
        w[static_cast<std::size_t>(t)] = k.cycle[(phase + static_cast<std::size_t>(t)) % p];
      return w;
    }
    Word operator()(const MixtureKernel& k) const {
      std::vector<double> w(k.components.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = k.weights[i] * k.components[i].total_mass();
      const auto i = static_cast<std::size_t>(rng.categorical(w));
      return sample_orbit(k.components[i], length, rng);
    }
  };
  return std::visit(Visitor{length, rng}, mu.kernel());
}

SmbSummary smb_deviation(const ShiftMeasure& mu, int n, int sample_count, std::uint64_t seed,
                         double epsilon) {
  if (n < 1 || sample_count < 1)
    throw std::invalid_argument("smb_deviation: need n >= 1 and samples >= 1");
  Rng rng(seed);
  const double h = closed_form_entropy(mu);
  std::vector<double> values(static_cast<std::size_t>(sample_count));
  CompensatedSum sum;
  int inside = 0;
  for (int s = 0; s < sample_count; ++s) {
    const Word w = sample_orbit(mu, n, rng);
    const double v = -mu.cylinder_log_mass(w) / static_cast<double>(n);
    values[static_cast<std::size_t>(s)] = v;
    sum.add(v);
    if (std::abs(v - h) < epsilon) ++inside;
  }
  SmbSummary out;
  out.n = n;
  out.samples = sample_count;
  out.seed = seed;
  out.epsilon = epsilon;
  out.mean = sum.value() / sample_count;
  // two-pass variance: the shortcut E[v^2]-mean^2 cancels catastrophically
  // when every sample is (nearly) identical
  CompensatedSum sq;
  for (double v : values) sq.add((v - out.mean) * (v - out.mean));
  out.stddev = std::sqrt(sq.value() / sample_count);
  out.fraction_within = static_cast<double>(inside) / sample_count;
  return out;
}

double birkhoff_concentration(const ShiftMeasure& mu, const Potential& phi, int n, double epsilon,
                              int sample_count, std::uint64_t seed) {
  if (n < 1 || sample_count < 1)
    throw std::invalid_argument("birkhoff_concentration: need n >= 1 and samples >= 1");
  Rng rng(seed);
  const double mean = potential_integral(mu, phi);
  const int need = phi.depth() == 2 ? n + 1 : n;
  int inside = 0;
  for (int s = 0; s < sample_count; ++s) {
    const Word w = sample_orbit(mu, need, rng);
    double birkhoff = 0.0;
    if (phi.depth() == 1) {
      for (Symbol a : w) birkhoff += phi.value(a);
    } else {
      for (int i = 0; i < n; ++i)
        birkhoff += phi.value(w[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i) + 1]);
    }
    if (std::abs(birkhoff / n - mean) < epsilon) ++inside;
  }
  return static_cast<double>(inside) / sample_count;
}

TailEntropyBound tail_entropy_bound(const std::vector<double>& masses, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("tail_entropy_bound: cutoff must be >= 1");
  TailEntropyBound out;
  CompensatedSum weighted, entropy;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    const double m = masses[i];
    if (k < cutoff || m <= 0.0) continue;
    if (m > 1.0) throw std::invalid_argument("tail_entropy_bound: masses must lie in (0,1]");
    weighted.add(static_cast<double>(k) * m);
    entropy.add(-m * std::log(m));
  }
  // closed form for the full series (2/e) sum_{k>=M} e^{-k/2}
  const double geo = (2.0 / std::exp(1.0)) * std::exp(-0.5 * cutoff) / (1.0 - std::exp(-0.5));
  out.bound = weighted.value() + geo;
  out.tail_entropy = entropy.value();
  out.dominates = out.bound >= out.tail_entropy - 1e-12;
  return out;
}

}  // namespace entlab
