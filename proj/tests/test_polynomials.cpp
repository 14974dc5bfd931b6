#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "spce/error.hpp"
#include "spce/multiindex.hpp"
#include "spce/polynomials.hpp"

using namespace spce;

TEST_CASE("univariate examples") {
  CHECK(eval_univariate(PolyFamily::Legendre, 0, 0.3) == 1.0);
  CHECK(eval_univariate(PolyFamily::Legendre, 1, 1.0) == doctest::Approx(1.7320508075688772).epsilon(1e-15));
  CHECK(eval_univariate(PolyFamily::Hermite, 2, 0.0) == doctest::Approx(-0.7071067811865475).epsilon(1e-15));
}

TEST_CASE("univariate errors") {
  CHECK_THROWS_AS(eval_univariate(PolyFamily::Legendre, 51, 0.1), Error);
  try {
    eval_univariate(PolyFamily::Hermite, 60, 0.1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeOverflow);
  }
  try {
    eval_univariate(PolyFamily::Legendre, 2, NAN);
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
  CHECK_NOTHROW(eval_univariate(PolyFamily::Legendre, 50, 0.5));
}

TEST_CASE("recurrence matches closed forms up to degree 3") {
  for (double u = -1.0; u <= 1.0; u += 0.0625) {
    for (int k = 0; k <= 3; ++k) {
      CHECK(std::abs(eval_univariate(PolyFamily::Legendre, k, u) - oracle::legendre_closed(k, u)) < 1e-12);
      const double h = 3.0 * u;
      CHECK(std::abs(eval_univariate(PolyFamily::Hermite, k, h) - oracle::hermite_closed(k, h)) < 1e-12);
    }
  }
}

TEST_CASE("orthonormality by Gauss quadrature") {
  for (const auto family : {PolyFamily::Legendre, PolyFamily::Hermite}) {
    const auto quad = family == PolyFamily::Legendre ? oracle::gauss_legendre(64)
                                                     : oracle::gauss_hermite(64);
    double worst = 0.0;
    for (int j = 0; j <= 10; ++j) {
      for (int k = 0; k <= 10; ++k) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < quad.nodes.size(); ++i) {
          s += quad.weights[i] * eval_univariate(family, j, quad.nodes[i]) *
               eval_univariate(family, k, quad.nodes[i]);
        }
        worst = std::max(worst, std::abs(s - (j == k ? 1.0 : 0.0)));
      }
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("batch evaluation agrees with single evaluation") {
  std::vector<double> out(11);
  eval_univariate_all(PolyFamily::Hermite, 10, 1.3, out);
  for (int k = 0; k <= 10; ++k) CHECK(out[k] == eval_univariate(PolyFamily::Hermite, k, 1.3));
}

TEST_CASE("multivariate examples") {
  const std::vector<PolyFamily> leg2 = {PolyFamily::Legendre, PolyFamily::Legendre};
  const std::vector<double> u = {1.0, 0.7};
  CHECK(eval_multivariate(leg2, MultiIndex{0, 0}, u) == 1.0);
  CHECK(eval_multivariate(leg2, MultiIndex{1, 0}, u) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  const std::vector<double> ones = {1.0, 1.0};
  CHECK(eval_multivariate(leg2, MultiIndex{1, 1}, ones) == doctest::Approx(3.0).epsilon(1e-15));
  try {
    eval_multivariate(leg2, MultiIndex{1, 0, 0}, u);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("multivariate value is the product of univariate factors") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(0, 6);
  const std::vector<PolyFamily> fam = {PolyFamily::Legendre, PolyFamily::Hermite,
                                       PolyFamily::Legendre, PolyFamily::Hermite};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> a(4);
    std::vector<double> u(4);
    for (int i = 0; i < 4; ++i) {
      a[i] = deg(rng);
      u[i] = unif(rng);
    }
    double expected = 1.0;
    for (int i = 0; i < 4; ++i) {
      if (a[i] > 0) expected *= eval_univariate(fam[i], a[i], u[i]);
    }
    CHECK(eval_multivariate(fam, MultiIndex(a), u) == expected);
  }
}

TEST_CASE("univariate table columns") {
  Eigen::MatrixXd pts(3, 2);
  pts << 1.0, 0.2, 0.0, -0.4, -1.0, 0.9;
  const std::vector<PolyFamily> fam = {PolyFamily::Legendre, PolyFamily::Hermite};
  const UnivariateTable table(pts, fam, 4);
  const Eigen::VectorXd col = table.column(MultiIndex{2, 3});
  for (int i = 0; i < 3; ++i) {
    const std::vector<double> u = {pts(i, 0), pts(i, 1)};
    CHECK(col[i] == doctest::Approx(eval_multivariate(fam, MultiIndex{2, 3}, u)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(table.column(MultiIndex{5, 0}), Error);
}
