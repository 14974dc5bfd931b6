#include "spce/inputs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "spce/error.hpp"

namespace spce {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate(const Marginal& m) {
  std::visit(overloaded{
                 [](const Uniform& u) {
                   if (!(std::isfinite(u.lower) && std::isfinite(u.upper) &&
                         u.lower < u.upper)) {
                     throw Error(ErrorKind::InvalidInput,
                                 "uniform marginal needs finite lower < upper");
                   }
                 },
                 [](const Gaussian& g) {
                   if (!(std::isfinite(g.mean) && std::isfinite(g.sd) && g.sd > 0.0)) {
                     throw Error(ErrorKind::InvalidInput,
                                 "gaussian marginal needs finite mean and sd > 0");
                   }
                 }},
             m);
}

// Uniform doubles in [0, 1) from the top 53 bits of the engine output.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Open-interval variant for quantile maps of unbounded marginals.
double open_unit(double v) {
  constexpr double eps = 0x1.0p-54;
  return std::clamp(v, eps, 1.0 - eps);
}

}  // namespace

InputModel::InputModel(std::vector<Marginal> marginals)
    : marginals_(std::move(marginals)) {
  for (const auto& m : marginals_) validate(m);
}

InputModel InputModel::iid(std::size_t dimension, const Marginal& marginal) {
  return InputModel(std::vector<Marginal>(dimension, marginal));
}

std::vector<PolyFamily> InputModel::families() const {
  std::vector<PolyFamily> out;
  out.reserve(marginals_.size());
  for (const auto& m : marginals_) {
    out.push_back(std::holds_alternative<Uniform>(m) ? PolyFamily::Legendre
                                                     : PolyFamily::Hermite);
  }
  return out;
}

bool InputModel::in_support(std::size_t dim, double x) const {
  if (!std::isfinite(x)) return false;
  if (const auto* u = std::get_if<Uniform>(&marginals_[dim])) {
    return x >= u->lower && x <= u->upper;
  }
  return true;
}

std::vector<double> InputModel::standardize(std::span<const double> x) const {
  if (x.size() != marginals_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "point dimension does not match input model");
  }
  std::vector<double> u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!in_support(i, x[i])) {
      throw Error(ErrorKind::OutOfSupport,
                  "value " + std::to_string(x[i]) + " outside support of input " +
                      std::to_string(i + 1));
    }
    u[i] = std::visit(
        overloaded{[&](const Uniform& m) {
                     return 2.0 * (x[i] - m.lower) / (m.upper - m.lower) - 1.0;
                   },
                   [&](const Gaussian& m) { return (x[i] - m.mean) / m.sd; }},
        marginals_[i]);
  }
  return u;
}

std::vector<double> InputModel::unstandardize(std::span<const double> u) const {
  if (u.size() != marginals_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "point dimension does not match input model");
  }
  std::vector<double> x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    x[i] = std::visit(
        overloaded{[&](const Uniform& m) {
                     return m.lower + (u[i] + 1.0) * 0.5 * (m.upper - m.lower);
                   },
                   [&](const Gaussian& m) { return m.mean + m.sd * u[i]; }},
        marginals_[i]);
  }
  return x;
}

Eigen::MatrixXd InputModel::standardize(const Eigen::MatrixXd& x) const {
  if (static_cast<std::size_t>(x.cols()) != marginals_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "design dimension does not match input model");
  }
  Eigen::MatrixXd u(x.rows(), x.cols());
  std::vector<double> row(marginals_.size());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) row[j] = x(i, j);
    const auto s = standardize(row);
    for (Eigen::Index j = 0; j < x.cols(); ++j) u(i, j) = s[j];
  }
  return u;
}

double InputModel::quantile(std::size_t dim, double v) const {
  return std::visit(
      overloaded{[&](const Uniform& m) {
                   return std::min(m.lower + v * (m.upper - m.lower), m.upper);
                 },
                 [&](const Gaussian& m) {
                   return m.mean + m.sd * normal_quantile(open_unit(v));
                 }},
      marginals_[dim]);
}

double normal_quantile(double v) {
  if (!(v > 0.0 && v < 1.0)) {
    throw Error(ErrorKind::InvalidInput, "normal quantile level must lie in (0, 1)");
  }
  // Acklam's rational approximation (relative error ~1.2e-9).
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  double x;
  if (v < low) {
    const double q = std::sqrt(-2.0 * std::log(v));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (v <= 1.0 - low) {
    const double q = v - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-v));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - v;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

Eigen::MatrixXd lhs_sample(const InputModel& model, Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "LHS size must be >= 1");
  const auto m = static_cast<Eigen::Index>(model.dimension());
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd x(n, m);
  std::vector<Eigen::Index> strata(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < m; ++j) {
    std::iota(strata.begin(), strata.end(), Eigen::Index{0});
    std::shuffle(strata.begin(), strata.end(), rng);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = (static_cast<double>(strata[i]) + unit_uniform(rng)) /
                       static_cast<double>(n);
      x(i, j) = model.quantile(static_cast<std::size_t>(j), v);
    }
  }
  return x;
}

Eigen::MatrixXd monte_carlo_sample(const InputModel& model, Eigen::Index n,
                                   std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "sample size must be >= 1");
  const auto m = static_cast<Eigen::Index>(model.dimension());
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd x(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      x(i, j) = model.quantile(static_cast<std::size_t>(j), unit_uniform(rng));
    }
  }
  return x;
}

}  // namespace spce
