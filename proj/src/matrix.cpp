#include "entlab/matrix.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace entlab {

std::vector<double> mat_vec(const Mat& m, const std::vector<double>& v) {
  const std::size_t n = m.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += m[i][j] * v[j];
    out[i] = s;
  }
  return out;
}

std::vector<double> vec_mat(const std::vector<double>& v, const Mat& m) {
  const std::size_t n = m.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double vi = v[i];
    if (vi == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) out[j] += vi * m[i][j];
  }
  return out;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a[i][k];
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += aik * b[k][j];
    }
  return out;
}

namespace {

std::vector<double> power_iterate(const Mat& m, bool left, double& lambda_out) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("perron: empty matrix");
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  double lambda = 0.0;
  constexpr int kMaxIter = 2000000;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    std::vector<double> w = left ? vec_mat(v, m) : mat_vec(m, v);
    lambda = 0.0;
    for (double x : w) lambda += x;
    if (!(lambda > 0.0)) throw std::runtime_error("perron: zero spectral radius on the iterate");
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i) resid = std::max(resid, std::abs(w[i] - lambda * v[i]));
    for (double& x : w) x /= lambda;
    v = std::move(w);
    if (resid <= 1e-12 * std::max(1.0, lambda)) {
      lambda_out = lambda;
      return v;
    }
  }
  throw std::runtime_error("perron: power iteration did not converge");
}

}  // namespace

PerronData perron(const Mat& m) {
  PerronData out;
  double lr = 0.0, ll = 0.0;
  out.right = power_iterate(m, /*left=*/false, lr);
  out.left = power_iterate(m, /*left=*/true, ll);
  out.lambda = lr;
  return out;
}

std::vector<double> stationary_distribution(const Mat& stochastic) {
  // Direct solve of pi (P - I) = 0 with the last equation replaced by
  // sum(pi) = 1; sharper than iterating when the result feeds exact identities.
  const std::size_t n = stochastic.size();
  Mat a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = stochastic[j][i] - (i == j ? 1.0 : 0.0);
  }
  for (std::size_t j = 0; j < n; ++j) a[n - 1][j] = 1.0;
  a[n - 1][n] = 1.0;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) throw std::runtime_error("stationary_distribution: singular system");
    std::swap(a[col], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  std::vector<double> pi(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = a[i][n] / a[i][i];
    if (pi[i] < 0.0 && pi[i] > -1e-14) pi[i] = 0.0;
    s += pi[i];
  }
  for (double& x : pi) x /= s;
  return pi;
}

}  // namespace entlab
