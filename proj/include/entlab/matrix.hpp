#pragma once

#include <vector>

namespace entlab {

using Mat = std::vector<std::vector<double>>;

struct PerronData {
  double lambda = 0.0;
  std::vector<double> right;  // l1-normalized, entrywise positive
  std::vector<double> left;
};

// Dominant eigenvalue and both eigenvectors of a nonnegative matrix by power
// iteration, residual 1e-12. Throws std::runtime_error on non-convergence.
PerronData perron(const Mat& m);

Mat mat_mul(const Mat& a, const Mat& b);

std::vector<double> mat_vec(const Mat& m, const std::vector<double>& v);
std::vector<double> vec_mat(const std::vector<double>& v, const Mat& m);

// Stationary row vector of a row-stochastic matrix.
std::vector<double> stationary_distribution(const Mat& stochastic);

}  // namespace entlab
