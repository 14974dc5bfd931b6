#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the code paths it is used to check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Gauss quadrature nodes/weights by Golub-Welsch from the monic three-term
/// recurrence of the weight function.
struct Quadrature {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;  // sum to 1 (probability measure)
};

inline Quadrature golub_welsch(int n, const std::function<double(int)>& off_diag_sq) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(off_diag_sq(k));
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  Quadrature q{eig.eigenvalues(), eig.eigenvectors().row(0).transpose().array().square()};
  return q;
}

/// Uniform density 1/2 on [-1, 1]: beta_k = k^2 / (4k^2 - 1).
inline Quadrature gauss_legendre(int n) {
  return golub_welsch(n, [](int k) { return k * k / (4.0 * k * k - 1.0); });
}

/// Standard normal density: beta_k = k.
inline Quadrature gauss_hermite(int n) {
  return golub_welsch(n, [](int k) { return static_cast<double>(k); });
}

/// Explicit orthonormal closed forms of degree <= 3.
inline double legendre_closed(int k, double u) {
  switch (k) {
    case 0: return 1.0;
    case 1: return std::sqrt(3.0) * u;
    case 2: return std::sqrt(5.0) * 0.5 * (3 * u * u - 1);
    case 3: return std::sqrt(7.0) * 0.5 * (5 * u * u * u - 3 * u);
  }
  return NAN;
}

inline double hermite_closed(int k, double u) {
  switch (k) {
    case 0: return 1.0;
    case 1: return u;
    case 2: return (u * u - 1) / std::sqrt(2.0);
    case 3: return (u * u * u - 3 * u) / std::sqrt(6.0);
  }
  return NAN;
}

/// Every alpha in {0..p}^M with rank <= r and (sum alpha^q)^(1/q) <= p.
inline std::vector<std::vector<int>> exhaustive_truncation(int m, int p, double q, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  while (true) {
    int rank = 0;
    double s = 0.0;
    for (int x : a) {
      if (x > 0) {
        ++rank;
        s += std::pow(x, q);
      }
    }
    const double norm = s > 0 ? std::pow(s, 1.0 / q) : 0.0;
    if (rank <= r && norm <= p * (1 + 1e-9)) out.push_back(a);
    int i = 0;
    while (i < m && a[static_cast<std::size_t>(i)] == p) a[static_cast<std::size_t>(i++)] = 0;
    if (i == m) break;
    ++a[static_cast<std::size_t>(i)];
  }
  return out;
}

inline double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

/// (Psi^T Psi)^-1 Psi^T y by explicit inversion.
inline Eigen::VectorXd normal_equations(const Eigen::MatrixXd& psi, const Eigen::VectorXd& y) {
  const Eigen::MatrixXd gram = psi.transpose() * psi;
  return gram.inverse() * (psi.transpose() * y);
}

inline double unbiased_variance(const Eigen::VectorXd& y) {
  return (y.array() - y.mean()).square().sum() / static_cast<double>(y.size() - 1);
}

/// Leave-one-out by N explicit refits, normalized by the sample variance.
inline double loo_by_refits(const Eigen::MatrixXd& psi, const Eigen::VectorXd& y) {
  const Eigen::Index n = psi.rows();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::MatrixXd a(n - 1, psi.cols());
    Eigen::VectorXd b(n - 1);
    for (Eigen::Index r = 0, k = 0; r < n; ++r) {
      if (r == i) continue;
      a.row(k) = psi.row(r);
      b[k++] = y[r];
    }
    const Eigen::VectorXd c = normal_equations(a, b);
    const double e = y[i] - psi.row(i).dot(c);
    sum += e * e;
  }
  return sum / static_cast<double>(n) / unbiased_variance(y);
}

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = dist(rng);
  return m;
}

}  // namespace oracle
