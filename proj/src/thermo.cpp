#include "entlab/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "entlab/logspace.hpp"

namespace entlab {

Potential::Potential(int depth, std::map<Word, double> values, std::optional<double> sup_bound)
    : depth_(depth), values_(std::move(values)) {
  if (depth_ < 1) throw std::invalid_argument("potential depth must be >= 1");
  double sup = kNegInf;
  for (const auto& [w, v] : values_) {
    if (static_cast<int>(w.size()) != depth_)
      throw std::invalid_argument("potential value keyed by word of wrong length");
    sup = std::max(sup, v);
  }
  sup_ = sup_bound.value_or(sup);
}

Potential Potential::Affine(double slope, double offset) {
  Potential p(1, {});
  p.affine_ = true;
  p.slope_ = slope;
  p.offset_ = offset;
  p.sup_ = slope > 0.0 ? std::numeric_limits<double>::infinity() : offset;
  return p;
}

Potential Potential::Constant(double c) { return Affine(0.0, c); }

double Potential::value(const Word& k_word) const {
  if (static_cast<int>(k_word.size()) != depth_)
    throw std::invalid_argument("potential evaluated on word of wrong length");
  if (affine_) return slope_ * static_cast<double>(k_word[0]) + offset_;
  auto it = values_.find(k_word);
  if (it == values_.end())
    throw std::out_of_range("potential has no value for word " + word_to_string(k_word));
  return it->second;
}

double Potential::value(Symbol a) const { return value(Word{a}); }
double Potential::value(Symbol a, Symbol b) const { return value(Word{a, b}); }

double Potential::birkhoff_sum(const Word& w, const TransitionStructure& trans,
                               int truncation_limit) const {
  if (w.empty()) return 0.0;
  double s = 0.0;
  if (depth_ == 1) {
    for (Symbol a : w) s += value(a);
    return s;
  }
  if (depth_ != 2) throw std::invalid_argument("birkhoff_sum supports depth <= 2");
  for (std::size_t i = 0; i + 1 < w.size(); ++i) s += value(w[i], w[i + 1]);
  const auto succ = trans.successors(w.back(), truncation_limit);
  if (succ.empty())
    throw std::invalid_argument("birkhoff_sum: last symbol has no successor in truncation");
  s += value(w.back(), succ.front());
  return s;
}

Mat weighted_matrix(const TransitionStructure& trans, int truncation_index,
                    const std::function<double(Symbol, Symbol)>& log_weight) {
  const int m = trans.truncation_size(truncation_index);
  Mat out(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m), 0.0));
  for (Symbol a = 0; a < m; ++a)
    for (Symbol b : trans.successors(a, m))
      out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = std::exp(log_weight(a, b));
  return out;
}

double pressure_of_matrix(const Mat& weighted) { return std::log(perron(weighted).lambda); }

namespace {

std::function<double(Symbol, Symbol)> as_log_weight(const Potential& phi) {
  if (phi.depth() == 1) return [&phi](Symbol a, Symbol) { return phi.value(a); };
  if (phi.depth() == 2) return [&phi](Symbol a, Symbol b) { return phi.value(a, b); };
  throw std::invalid_argument("pressure machinery supports depth <= 2 potentials");
}

void require_primitive(const TransitionStructure& trans, int truncation_index) {
  if (!check_primitive(trans, truncation_index).primitive)
    throw std::invalid_argument(
        "truncation is not primitive; run check_primitive and pick a mixing truncation");
}

}  // namespace

double transfer_pressure(const Potential& phi, const TransitionStructure& trans,
                         int truncation_index) {
  require_primitive(trans, truncation_index);
  return pressure_of_matrix(weighted_matrix(trans, truncation_index, as_log_weight(phi)));
}

PressureSchedule pressure_schedule(const Potential& phi, const TransitionStructure& trans) {
  PressureSchedule out;
  for (std::size_t i = 0; i < trans.truncations().size(); ++i)
    out.values.push_back(transfer_pressure(phi, trans, static_cast<int>(i)));
  const std::size_t n = out.values.size();
  if (n >= 2) out.last_increment = out.values[n - 1] - out.values[n - 2];
  if (n >= 3) out.previous_increment = out.values[n - 2] - out.values[n - 3];
  return out;
}

ShiftMeasure rpf_equilibrium(const Potential& phi, const TransitionStructure& trans,
                             int truncation_index) {
  require_primitive(trans, truncation_index);
  const Mat weighted = weighted_matrix(trans, truncation_index, as_log_weight(phi));
  const PerronData pd = perron(weighted);
  const std::size_t m = weighted.size();

  MarkovKernel kernel;
  kernel.symbols.resize(m);
  for (std::size_t a = 0; a < m; ++a) kernel.symbols[a] = static_cast<Symbol>(a);
  kernel.rows.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t a = 0; a < m; ++a) {
    double rs = 0.0;
    for (std::size_t b = 0; b < m; ++b) {
      kernel.rows[a][b] = weighted[a][b] * pd.right[b] / (pd.lambda * pd.right[a]);
      rs += kernel.rows[a][b];
    }
    // renormalize the power-iteration residue so the row is exactly stochastic
    for (std::size_t b = 0; b < m; ++b) kernel.rows[a][b] /= rs;
  }
  kernel.pi.resize(m);
  double ps = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    kernel.pi[a] = pd.left[a] * pd.right[a];
    ps += kernel.pi[a];
  }
  for (std::size_t a = 0; a < m; ++a) kernel.pi[a] /= ps;
  return ShiftMeasure(std::move(kernel), 1.0);
}

double potential_integral(const ShiftMeasure& mu, const Potential& phi) {
  if (phi.depth() > 2)
    throw std::invalid_argument("potential_integral supports depth <= 2");
  struct Visitor {
    const Potential& phi;
    double operator()(const BernoulliKernel& k) const {
      if (phi.depth() == 1) {
        double s = 0.0;
        for (std::size_t i = 0; i < k.support.size(); ++i) s += k.weights[i] * phi.value(k.support[i]);
        return s;
      }
      double s = 0.0;
      for (std::size_t i = 0; i < k.support.size(); ++i)
        for (std::size_t j = 0; j < k.support.size(); ++j)
          s += k.weights[i] * k.weights[j] * phi.value(k.support[i], k.support[j]);
      return s;
    }
    double operator()(const GeometricKernel& k) const {
      if (!(phi.depth() == 1 && phi.affine()))
        throw std::domain_error("integral against a geometric kernel needs an affine depth-1 potential");
      return phi.slope() * k.ratio / (1.0 - k.ratio) + phi.offset();
    }
    double operator()(const MarkovKernel& k) const {
      double s = 0.0;
      for (std::size_t i = 0; i < k.symbols.size(); ++i) {
        if (phi.depth() == 1) {
          s += k.pi[i] * phi.value(k.symbols[i]);
        } else {
          for (std::size_t j = 0; j < k.symbols.size(); ++j)
            if (k.rows[i][j] > 0.0) s += k.pi[i] * k.rows[i][j] * phi.value(k.symbols[i], k.symbols[j]);
        }
      }
      return s;
    }
    double operator()(const OrbitKernel& k) const {
      const std::size_t p = k.cycle.size();
      double s = 0.0;
      for (std::size_t i = 0; i < p; ++i)
        s += phi.depth() == 1 ? phi.value(k.cycle[i]) : phi.value(k.cycle[i], k.cycle[(i + 1) % p]);
      return s / static_cast<double>(p);
    }
    double operator()(const MixtureKernel& k) const {
      double s = 0.0;
      for (std::size_t i = 0; i < k.components.size(); ++i)
        s += k.weights[i] * potential_integral(k.components[i], phi);
      return s;
    }
  };
  double out = std::visit(Visitor{phi}, mu.kernel());
  if (!std::holds_alternative<MixtureKernel>(mu.kernel())) out *= mu.total_mass();
  return out;
}

GibbsCertificate gibbs_certificate(const ShiftMeasure& mu, const Potential& phi, double pressure,
                                   int max_len, const TransitionStructure& trans,
                                   int truncation_index) {
  GibbsCertificate out;
  out.pressure = pressure;
  out.depth_tested = max_len;
  const int limit = trans.truncation_size(truncation_index);
  double worst = 0.0;
  for (int len = 1; len <= max_len; ++len) {
    for (const Word& w : enumerate_cylinders(trans, truncation_index, len)) {
      const double lm = mu.cylinder_log_mass(w);
      if (lm == kNegInf) {
        out.unbounded = true;
        out.worst_word = w;
        out.distortion = std::numeric_limits<double>::infinity();
        return out;
      }
      const double dev = std::abs(lm + static_cast<double>(len) * pressure -
                                  phi.birkhoff_sum(w, trans, limit));
      if (dev > worst) {
        worst = dev;
        out.worst_word = w;
      }
    }
  }
  out.distortion = std::exp(worst);
  return out;
}

double equilibrium_gap(const ShiftMeasure& mu, const Potential& phi,
                       const TransitionStructure& trans, int truncation_index) {
  const double p = transfer_pressure(phi, trans, truncation_index);
  return p - (markov_entropy(mu) + potential_integral(mu, phi));
}

ConstrainedPressureResult constrained_pressure(const Potential& f, const Potential& constraint,
                                               double budget, const TransitionStructure& trans,
                                               int truncation_index) {
  if (constraint.depth() != 1)
    throw std::invalid_argument("constrained_pressure: constraint must be a depth-1 potential");
  require_primitive(trans, truncation_index);

  auto f_weight = as_log_weight(f);
  auto tilted = [&](double t) {
    return weighted_matrix(trans, truncation_index, [&](Symbol a, Symbol b) {
      return f_weight(a, b) - t * constraint.value(a);
    });
  };
  auto dual = [&](double t) { return pressure_of_matrix(tilted(t)) + t * budget; };
  auto equilibrium_at = [&](double t) {
    const Mat weighted = tilted(t);
    const PerronData pd = perron(weighted);
    const std::size_t m = weighted.size();
    MarkovKernel kernel;
    kernel.symbols.resize(m);
    for (std::size_t a = 0; a < m; ++a) kernel.symbols[a] = static_cast<Symbol>(a);
    kernel.rows.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t a = 0; a < m; ++a) {
      double rs = 0.0;
      for (std::size_t b = 0; b < m; ++b) {
        kernel.rows[a][b] = weighted[a][b] * pd.right[b] / (pd.lambda * pd.right[a]);
        rs += kernel.rows[a][b];
      }
      for (std::size_t b = 0; b < m; ++b) kernel.rows[a][b] /= rs;
    }
    kernel.pi.resize(m);
    double ps = 0.0;
    for (std::size_t a = 0; a < m; ++a) ps += (kernel.pi[a] = pd.left[a] * pd.right[a]);
    for (std::size_t a = 0; a < m; ++a) kernel.pi[a] /= ps;
    return ShiftMeasure(std::move(kernel), 1.0);
  };

  const ShiftMeasure unconstrained = equilibrium_at(0.0);
  const double unconstrained_load = potential_integral(unconstrained, constraint);
  if (unconstrained_load <= budget + 1e-12) {
    const double value = dual(0.0);
    const double slack = value - (markov_entropy(unconstrained) + potential_integral(unconstrained, f));
    return {budget, value, 0.0, false, unconstrained, unconstrained_load, slack};
  }

  // Grow the bracket until the dual slope D - int F d(mu_t) turns positive;
  // the dual is convex in t, so golden-section on the bracket suffices.
  double t_hi = 1.0;
  while (t_hi < 1024.0 && potential_integral(equilibrium_at(t_hi), constraint) > budget) t_hi *= 2.0;

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = t_hi;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = dual(x1), f2 = dual(x2);
  while (hi - lo > 1e-10) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = dual(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = dual(x2);
    }
  }
  double t_star = 0.5 * (lo + hi);
  double value = dual(t_star);
  // endpoints can win when the dual is monotone over the bracket
  for (double t : {0.0, t_hi}) {
    const double v = dual(t);
    if (v < value) {
      value = v;
      t_star = t;
    }
  }
  // Nudge the multiplier upward until the witness is feasible: int F d(mu_t)
  // is nonincreasing in t, and only a feasible witness makes the reported
  // slack a genuine weak-duality gap (hence nonnegative).
  ShiftMeasure witness = equilibrium_at(t_star);
  double load = potential_integral(witness, constraint);
  for (int tries = 0; load > budget && t_star < t_hi && tries < 64; ++tries) {
    t_star = std::min(t_hi, t_star * (1.0 + 1e-7) + 1e-12);
    witness = equilibrium_at(t_star);
    load = potential_integral(witness, constraint);
  }
  const double slack = value - (markov_entropy(witness) + potential_integral(witness, f));
  return {budget, value, t_star, t_star > 1e-8, witness, load, slack};
}

}  // namespace entlab
