#include "entlab/shift.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace entlab {

std::string word_to_string(const Word& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ',';
    os << w[i];
  }
  os << ')';
  return os.str();
}

BudgetError::BudgetError(std::uint64_t count_, std::uint64_t budget_)
    : std::runtime_error("cylinder count " + std::to_string(count_) +
                         " exceeds budget " + std::to_string(budget_)),
      count(count_),
      budget(budget_) {}

Alphabet Alphabet::Finite(int n) {
  if (n < 1) throw std::invalid_argument("finite alphabet needs size >= 1");
  Alphabet a;
  a.finite = true;
  a.size = n;
  return a;
}

Alphabet Alphabet::Countable() {
  Alphabet a;
  a.finite = false;
  a.size = 0;
  return a;
}

TransitionStructure::TransitionStructure(Alphabet alphabet,
                                         std::map<Symbol, std::vector<Symbol>> successors,
                                         std::vector<int> truncations)
    : alphabet_(alphabet),
      rule_(Rule::Explicit),
      succ_(std::move(successors)),
      truncations_(std::move(truncations)) {
  if (!alphabet_.finite)
    throw std::invalid_argument("explicit successor lists require a finite alphabet");
  for (const auto& [a, list] : succ_) {
    if (!alphabet_.contains(a))
      throw std::invalid_argument("successor list for symbol outside the alphabet");
    if (!std::is_sorted(list.begin(), list.end()))
      throw std::invalid_argument("successor lists must be sorted");
    for (Symbol b : list)
      if (!alphabet_.contains(b))
        throw std::invalid_argument("successor outside the alphabet");
  }
  if (truncations_.empty()) truncations_ = {alphabet_.size};
  validate_truncations();
}

TransitionStructure::TransitionStructure(Alphabet alphabet, Rule rule, int width,
                                         std::vector<int> truncations)
    : alphabet_(alphabet), rule_(rule), band_width_(width), truncations_(std::move(truncations)) {
  if (truncations_.empty()) {
    if (!alphabet_.finite)
      throw std::invalid_argument("countable structure needs a truncation schedule");
    truncations_ = {alphabet_.size};
  }
  validate_truncations();
}

TransitionStructure TransitionStructure::FullShift(Alphabet alphabet, std::vector<int> truncations) {
  return TransitionStructure(alphabet, Rule::Full, 0, std::move(truncations));
}

TransitionStructure TransitionStructure::BandShift(Alphabet alphabet, int width,
                                                   std::vector<int> truncations) {
  if (width < 1) throw std::invalid_argument("band width must be >= 1");
  return TransitionStructure(alphabet, Rule::Band, width, std::move(truncations));
}

void TransitionStructure::validate_truncations() const {
  int prev = 0;
  for (int m : truncations_) {
    if (m <= prev) throw std::invalid_argument("truncation schedule must be strictly increasing");
    if (alphabet_.finite && m > alphabet_.size)
      throw std::invalid_argument("truncation exceeds the alphabet");
    // every truncation must be a genuine subshift: no dead symbols
    for (Symbol a = 0; a < m; ++a)
      if (successors(a, m).empty())
        throw std::invalid_argument("symbol " + std::to_string(a) +
                                    " has no successor inside truncation " + std::to_string(m));
    prev = m;
  }
}

bool TransitionStructure::allowed(Symbol a, Symbol b) const {
  if (!alphabet_.contains(a) || !alphabet_.contains(b)) return false;
  switch (rule_) {
    case Rule::Full:
      return true;
    case Rule::Band:
      return std::abs(a - b) <= band_width_;
    case Rule::Explicit: {
      auto it = succ_.find(a);
      if (it == succ_.end()) return false;
      return std::binary_search(it->second.begin(), it->second.end(), b);
    }
  }
  return false;
}

std::vector<Symbol> TransitionStructure::successors(Symbol a, int limit) const {
  std::vector<Symbol> out;
  switch (rule_) {
    case Rule::Full:
      out.reserve(limit);
      for (Symbol b = 0; b < limit; ++b) out.push_back(b);
      break;
    case Rule::Band: {
      const Symbol lo = std::max(0, a - band_width_);
      const Symbol hi = std::min(limit - 1, a + band_width_);
      for (Symbol b = lo; b <= hi; ++b) out.push_back(b);
      break;
    }
    case Rule::Explicit: {
      auto it = succ_.find(a);
      if (it != succ_.end())
        for (Symbol b : it->second)
          if (b < limit) out.push_back(b);
      break;
    }
  }
  return out;
}

int TransitionStructure::truncation_size(int index) const {
  if (index < 0 || index >= static_cast<int>(truncations_.size()))
    throw std::out_of_range("truncation index out of range");
  return truncations_[index];
}

bool is_admissible(const Word& w, const TransitionStructure& trans) {
  for (Symbol a : w)
    if (!trans.alphabet().contains(a))
      throw std::domain_error("symbol " + std::to_string(a) + " outside the alphabet");
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (!trans.allowed(w[i], w[i + 1])) return false;
  return true;
}

Word ball_as_cylinder(const Word& center_prefix, int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("ball_as_cylinder: n, k must be nonnegative");
  const std::size_t len = static_cast<std::size_t>(n) + static_cast<std::size_t>(k) + 1;
  if (center_prefix.size() < len)
    throw std::invalid_argument("ball_as_cylinder: prefix shorter than N+k+1 symbols");
  return Word(center_prefix.begin(), center_prefix.begin() + static_cast<std::ptrdiff_t>(len));
}

DthetaResult d_theta(const Word& x, const Word& y, MetricParams params) {
  if (!(params.theta > 0.0 && params.theta < 1.0))
    throw std::domain_error("d_theta: theta must lie in (0,1)");
  if (x.empty() || y.empty()) throw std::invalid_argument("d_theta: empty word");
  const std::size_t len = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < len; ++i)
    if (x[i] != y[i]) return {std::pow(params.theta, static_cast<double>(i)), true};
  // coincidence over the whole compared range: only a lower bound is known
  return {0.0, false};
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s < a ? UINT64_MAX : s;
}

}  // namespace

std::uint64_t count_cylinders(const TransitionStructure& trans, int truncation_index, int n) {
  if (n < 1) throw std::invalid_argument("count_cylinders: n must be >= 1");
  const int m = trans.truncation_size(truncation_index);
  std::vector<std::uint64_t> c(m, 1);  // words of current length ending at each symbol
  for (int len = 1; len < n; ++len) {
    std::vector<std::uint64_t> next(m, 0);
    for (Symbol a = 0; a < m; ++a) {
      if (c[a] == 0) continue;
      for (Symbol b : trans.successors(a, m)) next[b] = sat_add(next[b], c[a]);
    }
    c = std::move(next);
  }
  std::uint64_t total = 0;
  for (std::uint64_t x : c) total = sat_add(total, x);
  return total;
}

std::vector<Word> enumerate_cylinders(const TransitionStructure& trans, int truncation_index,
                                      int n, std::uint64_t budget) {
  const std::uint64_t count = count_cylinders(trans, truncation_index, n);
  if (count > budget) throw BudgetError(count, budget);
  const int m = trans.truncation_size(truncation_index);
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(count));
  Word cur;
  cur.reserve(static_cast<std::size_t>(n));
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    if (cur.empty()) {
      for (Symbol a = 0; a < m; ++a) {
        cur.push_back(a);
        self(self);
        cur.pop_back();
      }
    } else {
      for (Symbol b : trans.successors(cur.back(), m)) {
        cur.push_back(b);
        self(self);
        cur.pop_back();
      }
    }
  };
  rec(rec);
  return out;
}

PrimitivityResult check_primitive(const TransitionStructure& trans, int truncation_index) {
  const int m = trans.truncation_size(truncation_index);
  std::vector<std::vector<char>> base(m, std::vector<char>(m, 0));
  for (Symbol a = 0; a < m; ++a)
    for (Symbol b : trans.successors(a, m)) base[a][b] = 1;
  auto all_positive = [m](const std::vector<std::vector<char>>& mat) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (!mat[i][j]) return false;
    return true;
  };
  auto bmul = [m](const std::vector<std::vector<char>>& a, const std::vector<std::vector<char>>& b) {
    std::vector<std::vector<char>> out(m, std::vector<char>(m, 0));
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k)
        if (a[i][k])
          for (int j = 0; j < m; ++j)
            if (b[k][j]) out[i][j] = 1;
    return out;
  };
  const int max_power = (m - 1) * (m - 1) + 1;  // Wielandt bound
  std::vector<std::vector<char>> cur = base;
  for (int p = 1; p <= max_power; ++p) {
    if (all_positive(cur)) return {true, p};
    cur = bmul(cur, base);
  }
  return {false, 0};
}

}  // namespace entlab
