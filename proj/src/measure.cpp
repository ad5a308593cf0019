#include "entlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "entlab/logspace.hpp"
#include "entlab/matrix.hpp"

namespace entlab {

namespace {

constexpr double kTol = 1e-9;

void check_mass(double mass) {
  if (!(mass > 0.0) || mass > 1.0 + 1e-12)
    throw std::invalid_argument("measure mass must lie in (0,1]");
}

int index_of(const std::vector<Symbol>& symbols, Symbol a) {
  auto it = std::lower_bound(symbols.begin(), symbols.end(), a);
  if (it == symbols.end() || *it != a) return -1;
  return static_cast<int>(it - symbols.begin());
}

}  // namespace

ShiftMeasure::ShiftMeasure(BernoulliKernel k, double mass) : kernel_(std::move(k)), mass_(mass) {
  check_mass(mass);
  const auto& b = std::get<BernoulliKernel>(kernel_);
  if (b.support.size() != b.weights.size() || b.support.empty())
    throw std::invalid_argument("bernoulli: support/weights size mismatch");
  if (!std::is_sorted(b.support.begin(), b.support.end()) ||
      std::adjacent_find(b.support.begin(), b.support.end()) != b.support.end())
    throw std::invalid_argument("bernoulli: support must be sorted and distinct");
  double s = 0.0;
  for (double w : b.weights) {
    if (!(w > 0.0)) throw std::invalid_argument("bernoulli: weights must be positive");
    s += w;
  }
  if (std::abs(s - 1.0) > kTol) throw std::invalid_argument("bernoulli: weights must sum to 1");
}

ShiftMeasure::ShiftMeasure(GeometricKernel k, double mass) : kernel_(k), mass_(mass) {
  check_mass(mass);
  if (!(k.ratio > 0.0 && k.ratio < 1.0))
    throw std::invalid_argument("geometric: ratio must lie in (0,1)");
}

ShiftMeasure::ShiftMeasure(MarkovKernel k, double mass) : kernel_(std::move(k)), mass_(mass) {
  check_mass(mass);
  const auto& m = std::get<MarkovKernel>(kernel_);
  const std::size_t n = m.symbols.size();
  if (n == 0 || m.rows.size() != n || m.pi.size() != n)
    throw std::invalid_argument("markov: size mismatch");
  if (!std::is_sorted(m.symbols.begin(), m.symbols.end()))
    throw std::invalid_argument("markov: symbols must be sorted");
  double pis = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (m.rows[i].size() != n) throw std::invalid_argument("markov: ragged row");
    double rs = 0.0;
    for (double p : m.rows[i]) {
      if (p < 0.0) throw std::invalid_argument("markov: negative transition probability");
      rs += p;
    }
    if (std::abs(rs - 1.0) > kTol) throw std::invalid_argument("markov: rows must sum to 1");
    if (m.pi[i] < 0.0) throw std::invalid_argument("markov: negative stationary mass");
    pis += m.pi[i];
  }
  if (std::abs(pis - 1.0) > kTol) throw std::invalid_argument("markov: pi must sum to 1");
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += m.pi[i] * m.rows[i][j];
    if (std::abs(s - m.pi[j]) > 1e-8)
      throw std::invalid_argument("markov: pi is not stationary for the rows");
  }
}

ShiftMeasure::ShiftMeasure(OrbitKernel k, double mass) : kernel_(std::move(k)), mass_(mass) {
  check_mass(mass);
  if (std::get<OrbitKernel>(kernel_).cycle.empty())
    throw std::invalid_argument("orbit: empty cycle");
}

ShiftMeasure::ShiftMeasure(MixtureKernel k) : kernel_(std::move(k)), mass_(0.0) {
  const auto& m = std::get<MixtureKernel>(kernel_);
  if (m.components.empty() || m.components.size() != m.weights.size())
    throw std::invalid_argument("mixture: components/weights size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < m.components.size(); ++i) {
    if (m.weights[i] < 0.0) throw std::invalid_argument("mixture: negative weight");
    total += m.weights[i] * m.components[i].total_mass();
  }
  if (!(total > 0.0) || total > 1.0 + 1e-12)
    throw std::invalid_argument("mixture: total mass must lie in (0,1]");
  mass_ = std::min(total, 1.0);
}

bool ShiftMeasure::is_markov_like() const {
  return std::holds_alternative<MarkovKernel>(kernel_) ||
         std::holds_alternative<BernoulliKernel>(kernel_);
}

double ShiftMeasure::cylinder_log_mass(const Word& w) const {
  if (w.empty()) return std::log(mass_);
  for (Symbol a : w)
    if (a < 0) throw std::domain_error("negative symbol");
  struct Visitor {
    const Word& w;
    double log_mass;

    double operator()(const BernoulliKernel& k) const {
      double acc = log_mass;
      for (Symbol a : w) {
        const int i = index_of(k.support, a);
        if (i < 0) return kNegInf;
        acc += std::log(k.weights[static_cast<std::size_t>(i)]);
      }
      return acc;
    }
    double operator()(const GeometricKernel& k) const {
      const double l1 = std::log1p(-k.ratio);
      const double lr = std::log(k.ratio);
      double acc = log_mass;
      for (Symbol a : w) acc += l1 + static_cast<double>(a) * lr;
      return acc;
    }
    double operator()(const MarkovKernel& k) const {
      const int i0 = index_of(k.symbols, w[0]);
      if (i0 < 0 || k.pi[static_cast<std::size_t>(i0)] <= 0.0) return kNegInf;
      double acc = log_mass + std::log(k.pi[static_cast<std::size_t>(i0)]);
      int prev = i0;
      for (std::size_t t = 1; t < w.size(); ++t) {
        const int i = index_of(k.symbols, w[t]);
        if (i < 0) return kNegInf;
        const double p = k.rows[static_cast<std::size_t>(prev)][static_cast<std::size_t>(i)];
        if (p <= 0.0) return kNegInf;
        acc += std::log(p);
        prev = i;
      }
      return acc;
    }
    double operator()(const OrbitKernel& k) const {
      const std::size_t p = k.cycle.size();
      int matches = 0;
      for (std::size_t s = 0; s < p; ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < w.size(); ++i)
          if (k.cycle[(s + i) % p] != w[i]) {
            ok = false;
            break;
          }
        if (ok) ++matches;
      }
      if (matches == 0) return kNegInf;
      return log_mass + std::log(static_cast<double>(matches) / static_cast<double>(p));
    }
    double operator()(const MixtureKernel& k) const {
      double acc = kNegInf;
      for (std::size_t i = 0; i < k.components.size(); ++i) {
        if (k.weights[i] == 0.0) continue;
        acc = log_add(acc, std::log(k.weights[i]) + k.components[i].cylinder_log_mass(w));
      }
      return acc;
    }
  };
  // mixture components already carry their own mass; the top-level mass is
  // derived, so only non-mixture kernels add log(mass_) per symbol stream
  const bool mixture = std::holds_alternative<MixtureKernel>(kernel_);
  return std::visit(Visitor{w, mixture ? 0.0 : std::log(mass_)}, kernel_);
}

ShiftMeasure make_bernoulli(std::vector<Symbol> support, std::vector<double> weights, double mass) {
  return ShiftMeasure(BernoulliKernel{std::move(support), std::move(weights)}, mass);
}

ShiftMeasure make_uniform_bernoulli(int alphabet_size, double mass) {
  std::vector<Symbol> support(static_cast<std::size_t>(alphabet_size));
  for (int i = 0; i < alphabet_size; ++i) support[static_cast<std::size_t>(i)] = i;
  std::vector<double> w(static_cast<std::size_t>(alphabet_size), 1.0 / alphabet_size);
  return make_bernoulli(std::move(support), std::move(w), mass);
}

ShiftMeasure make_markov(std::vector<Symbol> symbols, std::vector<std::vector<double>> rows,
                         double mass) {
  std::vector<double> pi = stationary_distribution(rows);
  return ShiftMeasure(MarkovKernel{std::move(symbols), std::move(rows), std::move(pi)}, mass);
}

ShiftMeasure make_orbit(Word cycle, double mass) {
  return ShiftMeasure(OrbitKernel{std::move(cycle)}, mass);
}

ShiftMeasure make_geometric(double ratio, double mass) {
  return ShiftMeasure(GeometricKernel{ratio}, mass);
}

ShiftMeasure make_mixture(std::vector<ShiftMeasure> components, std::vector<double> weights) {
  return ShiftMeasure(MixtureKernel{std::move(components), std::move(weights)});
}

MarkovKernel as_markov(const ShiftMeasure& mu) {
  if (const auto* m = std::get_if<MarkovKernel>(&mu.kernel())) return *m;
  if (const auto* b = std::get_if<BernoulliKernel>(&mu.kernel())) {
    const std::size_t n = b->support.size();
    MarkovKernel k;
    k.symbols = b->support;
    k.rows.assign(n, b->weights);
    k.pi = b->weights;
    return k;
  }
  throw std::invalid_argument("measure is not Markov-like");
}

double closed_form_entropy(const ShiftMeasure& mu) {
  struct Visitor {
    double operator()(const BernoulliKernel& k) const {
      double h = 0.0;
      for (double w : k.weights) h -= w * std::log(w);
      return h;
    }
    double operator()(const GeometricKernel& k) const {
      const double r = k.ratio;
      return -std::log1p(-r) - (r / (1.0 - r)) * std::log(r);
    }
    double operator()(const MarkovKernel& k) const {
      double h = 0.0;
      for (std::size_t i = 0; i < k.symbols.size(); ++i)
        for (double p : k.rows[i])
          if (p > 0.0) h -= k.pi[i] * p * std::log(p);
      return h;
    }
    double operator()(const OrbitKernel&) const { return 0.0; }
    double operator()(const MixtureKernel& k) const {
      // affinity over mutually singular ergodic components
      double total = 0.0, h = 0.0;
      for (std::size_t i = 0; i < k.components.size(); ++i)
        total += k.weights[i] * k.components[i].total_mass();
      for (std::size_t i = 0; i < k.components.size(); ++i) {
        const double wm = k.weights[i] * k.components[i].total_mass();
        if (wm > 0.0) h += (wm / total) * closed_form_entropy(k.components[i]);
      }
      return h;
    }
  };
  return std::visit(Visitor{}, mu.kernel());
}

double markov_entropy(const ShiftMeasure& mu) {
  if (std::holds_alternative<OrbitKernel>(mu.kernel())) return 0.0;
  if (!mu.is_markov_like())
    throw std::invalid_argument("markov_entropy: measure is not Markov-like");
  return closed_form_entropy(mu);
}

MassCheck mass_by_cylinder_sum(const ShiftMeasure& mu, int limit) {
  struct Visitor {
    int limit;
    MassCheck operator()(const BernoulliKernel& k) const {
      MassCheck out{0.0, 0.0};
      for (std::size_t i = 0; i < k.support.size(); ++i)
        (k.support[i] < limit ? out.sum : out.tail) += k.weights[i];
      return out;
    }
    MassCheck operator()(const GeometricKernel& k) const {
      CompensatedSum s;
      for (int a = 0; a < limit; ++a)
        s.add((1.0 - k.ratio) * std::pow(k.ratio, static_cast<double>(a)));
      return {s.value(), std::pow(k.ratio, static_cast<double>(limit))};
    }
    MassCheck operator()(const MarkovKernel& k) const {
      MassCheck out{0.0, 0.0};
      for (std::size_t i = 0; i < k.symbols.size(); ++i)
        (k.symbols[i] < limit ? out.sum : out.tail) += k.pi[i];
      return out;
    }
    MassCheck operator()(const OrbitKernel& k) const {
      const double per = 1.0 / static_cast<double>(k.cycle.size());
      MassCheck out{0.0, 0.0};
      for (Symbol a : k.cycle) (a < limit ? out.sum : out.tail) += per;
      return out;
    }
    MassCheck operator()(const MixtureKernel& k) const {
      MassCheck out{0.0, 0.0};
      for (std::size_t i = 0; i < k.components.size(); ++i) {
        MassCheck c = mass_by_cylinder_sum(k.components[i], limit);
        out.sum += k.weights[i] * c.sum;
        out.tail += k.weights[i] * c.tail;
      }
      return out;
    }
  };
  MassCheck out = std::visit(Visitor{limit}, mu.kernel());
  if (!std::holds_alternative<MixtureKernel>(mu.kernel())) {
    out.sum *= mu.total_mass();
    out.tail *= mu.total_mass();
  }
  return out;
}

double vague_gap(const ShiftMeasure& mu, const ShiftMeasure& nu, int depth, int alphabet_limit) {
  if (depth < 1 || alphabet_limit < 1)
    throw std::invalid_argument("vague_gap: depth and alphabet_limit must be >= 1");
  double words = 0.0;
  for (int len = 1; len <= depth; ++len) words += std::pow(alphabet_limit, len);
  if (words > 2e8)
    throw BudgetError(static_cast<std::uint64_t>(words), 200000000ull);
  double gap = 0.0;
  Word w;
  for (int len = 1; len <= depth; ++len) {
    w.assign(static_cast<std::size_t>(len), 0);
    while (true) {
      const double a = std::exp(mu.cylinder_log_mass(w));
      const double b = std::exp(nu.cylinder_log_mass(w));
      gap = std::max(gap, std::abs(a - b));
      int i = len - 1;
      while (i >= 0 && w[static_cast<std::size_t>(i)] == alphabet_limit - 1) {
        w[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++w[static_cast<std::size_t>(i)];
    }
  }
  return gap;
}

ProperWeight ProperWeight::Affine(double slope, double offset) {
  if (slope < 0.0 || offset < 0.0)
    throw std::invalid_argument("proper weight must be nonnegative");
  ProperWeight f;
  f.slope = slope;
  f.offset = offset;
  return f;
}

ProperWeight ProperWeight::Table(std::vector<double> values) {
  for (double v : values)
    if (v < 0.0) throw std::invalid_argument("proper weight must be nonnegative");
  ProperWeight f;
  f.table = std::move(values);
  return f;
}

double ProperWeight::operator()(Symbol a) const {
  if (affine()) return slope * static_cast<double>(a) + offset;
  if (a < 0 || a >= static_cast<int>(table.size()))
    throw std::out_of_range("proper weight table has no value for symbol");
  return table[static_cast<std::size_t>(a)];
}

std::optional<double> weight_integral(const ShiftMeasure& mu, const ProperWeight& f) {
  struct Visitor {
    const ProperWeight& f;
    std::optional<double> operator()(const BernoulliKernel& k) const {
      double s = 0.0;
      for (std::size_t i = 0; i < k.support.size(); ++i) {
        if (!f.affine() && k.support[i] >= static_cast<int>(f.table.size())) return std::nullopt;
        s += k.weights[i] * f(k.support[i]);
      }
      return s;
    }
    std::optional<double> operator()(const GeometricKernel& k) const {
      if (!f.affine()) return std::nullopt;  // tail not certifiable from a finite table
      return f.slope * k.ratio / (1.0 - k.ratio) + f.offset;
    }
    std::optional<double> operator()(const MarkovKernel& k) const {
      double s = 0.0;
      for (std::size_t i = 0; i < k.symbols.size(); ++i) {
        if (!f.affine() && k.symbols[i] >= static_cast<int>(f.table.size())) return std::nullopt;
        s += k.pi[i] * f(k.symbols[i]);
      }
      return s;
    }
    std::optional<double> operator()(const OrbitKernel& k) const {
      double s = 0.0;
      for (Symbol a : k.cycle) {
        if (!f.affine() && a >= static_cast<int>(f.table.size())) return std::nullopt;
        s += f(a);
      }
      return s / static_cast<double>(k.cycle.size());
    }
    std::optional<double> operator()(const MixtureKernel& k) const {
      double s = 0.0;
      for (std::size_t i = 0; i < k.components.size(); ++i) {
        auto c = weight_integral(k.components[i], f);
        if (!c) return std::nullopt;
        s += k.weights[i] * *c;
      }
      return s;
    }
  };
  auto out = std::visit(Visitor{f}, mu.kernel());
  if (out && !std::holds_alternative<MixtureKernel>(mu.kernel())) *out *= mu.total_mass();
  return out;
}

TightnessVerdict tightness_verdict(const std::vector<ShiftMeasure>& seq, const ProperWeight& f,
                                   double bound) {
  if (seq.empty()) throw std::invalid_argument("tightness_verdict: empty sequence");
  TightnessVerdict out{TightnessStatus::Tight, -1, {}};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto integral = weight_integral(seq[i], f);
    if (!integral) {
      out.status = TightnessStatus::Inconclusive;
      return out;
    }
    out.integrals.push_back(*integral);
    if (*integral > bound) {
      out.status = TightnessStatus::BoundViolated;
      out.violated_index = static_cast<int>(i);
      return out;
    }
  }
  return out;
}

KacResult kac_return_masses(const ShiftMeasure& mu, const std::vector<Symbol>& k_set, int n_max) {
  if (n_max < 1) throw std::invalid_argument("kac: n_max must be >= 1");
  const MarkovKernel kernel = as_markov(mu);
  const std::size_t n = kernel.symbols.size();
  std::vector<char> in_k(n, 0);
  for (Symbol a : k_set) {
    const int i = index_of(kernel.symbols, a);
    if (i >= 0) in_k[static_cast<std::size_t>(i)] = 1;
  }
  double mass_k = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (in_k[i]) mass_k += kernel.pi[i];
  if (!(mass_k > 0.0)) throw std::domain_error("kac: mu(K) = 0");

  const double scale = mu.total_mass();
  KacResult out;
  out.masses.resize(static_cast<std::size_t>(n_max), 0.0);

  // A_1: stay in K for one step.
  {
    double m1 = 0.0;
    for (std::size_t a = 0; a < n; ++a)
      if (in_k[a])
        for (std::size_t b = 0; b < n; ++b)
          if (in_k[b]) m1 += kernel.pi[a] * kernel.rows[a][b];
    out.masses[0] = scale * m1;
  }

  // v[c] = mass of paths currently exiled at symbol c, taboo K.
  std::vector<double> v(n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    if (in_k[a])
      for (std::size_t c = 0; c < n; ++c)
        if (!in_k[c]) v[c] += kernel.pi[a] * kernel.rows[a][c];

  for (int step = 2; step <= n_max; ++step) {
    double re_enter = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (in_k[c] || v[c] == 0.0) continue;
      for (std::size_t b = 0; b < n; ++b)
        if (in_k[b]) re_enter += v[c] * kernel.rows[c][b];
    }
    out.masses[static_cast<std::size_t>(step - 1)] = scale * re_enter;
    if (step == n_max) break;
    std::vector<double> next(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      if (in_k[c] || v[c] == 0.0) continue;
      for (std::size_t d = 0; d < n; ++d)
        if (!in_k[d]) next[d] += v[c] * kernel.rows[c][d];
    }
    v = std::move(next);
  }

  CompensatedSum ws;
  for (int i = 0; i < n_max; ++i)
    ws.add(static_cast<double>(i + 1) * out.masses[static_cast<std::size_t>(i)]);
  out.weighted_sum = ws.value();

  // Exile mass after the last computed step decays at least geometrically at
  // the worst taboo row sum.
  double rho = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    if (in_k[c]) continue;
    double rs = 0.0;
    for (std::size_t d = 0; d < n; ++d)
      if (!in_k[d]) rs += kernel.rows[c][d];
    rho = std::max(rho, rs);
  }
  double vnorm = 0.0;
  for (std::size_t c = 0; c < n; ++c)
    if (!in_k[c]) vnorm += v[c];
  vnorm *= scale;
  if (vnorm <= 0.0) {
    out.tail_bound = 0.0;
  } else if (rho < 1.0) {
    out.tail_bound =
        vnorm * ((static_cast<double>(n_max) + 1.0) / (1.0 - rho) + rho / ((1.0 - rho) * (1.0 - rho)));
  } else {
    out.tail_bound = std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace entlab
