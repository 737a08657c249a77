#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "plurirand/random_poly.hpp"

using namespace plurirand;

namespace {

std::shared_ptr<const OrthonormalBasis> circle_basis(int n) {
  return std::make_shared<OrthonormalBasis>(closed_form_circle(n));
}

}  // namespace

TEST_CASE("make_random_poly basics") {
  const auto dist = CoefficientDistribution::complex_gaussian();
  SUBCASE("n=0 basis gives the constant a_0 p_0") {
    auto basis = circle_basis(0);
    const RandomPolynomial poly = make_random_poly(basis, dist, 3, 0);
    REQUIRE(poly.coefficients().size() == 1);
    const double expected = std::log(std::abs(poly.coefficients()[0]));
    CHECK(log_abs_H(poly, Cpx(0.7, -2.0)) == doctest::Approx(expected).epsilon(1e-13));
  }
  SUBCASE("circle basis: monomial coefficients equal the samples") {
    auto basis = circle_basis(12);
    const RandomPolynomial poly = make_random_poly(basis, dist, 11, 4);
    const Eigen::VectorXcd direct = sample_coefficients(dist, 13, 11, 4);
    for (Eigen::Index i = 0; i < direct.size(); ++i) {
      CHECK(poly.coefficients()[i] == direct[i]);
    }
  }
  SUBCASE("deterministic replay") {
    auto basis = circle_basis(5);
    const RandomPolynomial a = make_random_poly(basis, dist, 1, 2);
    const RandomPolynomial b = make_random_poly(basis, dist, 1, 2);
    for (Eigen::Index i = 0; i < a.coefficients().size(); ++i) {
      CHECK(a.coefficients()[i] == b.coefficients()[i]);
    }
    CHECK(a.seed_record().master_seed == 1);
    CHECK(a.seed_record().stream == 2);
    CHECK(a.seed_record().distribution_key == "complex_gaussian");
  }
}

TEST_CASE("log_abs_H pinned values") {
  auto basis = circle_basis(8);
  SUBCASE("H = p_0 evaluates to 0 everywhere") {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(9);
    a[0] = 1.0;
    const RandomPolynomial poly(basis, a, {});
    for (const Cpx z : {Cpx(0.0), Cpx(2.0, 1.0), Cpx(-4.0)}) {
      CHECK(log_abs_H(poly, z) == doctest::Approx(0.0).epsilon(1e-14));
    }
  }
  SUBCASE("H = top monomial at z=2 gives n log 2") {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(9);
    a[8] = 1.0;
    const RandomPolynomial poly(basis, a, {});
    CHECK(log_abs_H(poly, Cpx(2.0)) == doctest::Approx(8.0 * std::log(2.0)).epsilon(1e-13));
  }
  SUBCASE("agrees with direct evaluation") {
    const auto dist = CoefficientDistribution::complex_gaussian();
    const RandomPolynomial poly = make_random_poly(basis, dist, 21, 0);
    for (const Cpx z : {Cpx(0.5, 0.5), Cpx(-1.0, 2.0)}) {
      Cpx direct = 0.0;
      for (Eigen::Index j = 0; j < 9; ++j) {
        direct += poly.coefficients()[j] * std::pow(z, j);
      }
      CHECK(log_abs_H(poly, z) ==
            doctest::Approx(std::log(std::abs(direct))).epsilon(1e-11));
    }
  }
}

TEST_CASE("scale equivariance: lambda a shifts log|H| by log|lambda|") {
  auto basis = circle_basis(10);
  const auto dist = CoefficientDistribution::heavy_tail();
  const RandomPolynomial poly = make_random_poly(basis, dist, 5, 9);
  const Cpx lambda(3.0, -4.0);  // |lambda| = 5
  const RandomPolynomial scaled(basis, lambda * poly.coefficients(), {});
  for (const Cpx z : {Cpx(0.1), Cpx(1.0, 1.0), Cpx(-2.5, 0.3)}) {
    CHECK(log_abs_H(scaled, z) ==
          doctest::Approx(log_abs_H(poly, z) + std::log(5.0)).epsilon(1e-12));
  }
}

TEST_CASE("pointwise convergence at z=4 (circle, complex gaussian, n=100)") {
  auto basis = circle_basis(100);
  const auto dist = CoefficientDistribution::complex_gaussian();
  int within = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const RandomPolynomial poly =
        make_random_poly(basis, dist, 4242, static_cast<std::uint64_t>(t));
    const double v = log_abs_H(poly, Cpx(4.0)) / 100.0;
    if (std::abs(v - std::log(4.0)) <= 0.15) ++within;
  }
  CHECK(within >= 95);
}

TEST_CASE("log_norm_F") {
  auto basis = circle_basis(6);
  const auto dist = CoefficientDistribution::complex_gaussian();
  SUBCASE("k=1 equals log_abs_H") {
    const RandomPolynomialMap map = make_random_map(basis, dist, 1, 17, 0);
    for (const Cpx z : {Cpx(0.2, 0.1), Cpx(2.0, -1.0)}) {
      CHECK(log_norm_F(map, std::vector<Cpx>{z}) ==
            doctest::Approx(log_abs_H(map.component(0), z)).epsilon(1e-13));
    }
  }
  SUBCASE("two identical components add half log 2") {
    auto torus = std::make_shared<const OrthonormalBasis>(closed_form_torus(2, 4));
    const RandomPolynomial poly = make_random_poly(torus, dist, 23, 0);
    const RandomPolynomialMap map(std::vector<RandomPolynomial>{poly, poly});
    const std::vector<Cpx> z = {Cpx(1.5, 0.5), Cpx(-0.25, 1.0)};
    CHECK(log_norm_F(map, z) ==
          doctest::Approx(log_abs_H(poly, z) + 0.5 * std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("k must not exceed the dimension") {
    CHECK_THROWS_AS(make_random_map(basis, dist, 2, 1, 0), std::invalid_argument);
  }
}

TEST_CASE("map convergence at (2,3): torus m=2, k=2, n=60") {
  auto basis = std::make_shared<const OrthonormalBasis>(closed_form_torus(2, 60));
  const auto dist = CoefficientDistribution::complex_gaussian();
  const std::vector<Cpx> z = {Cpx(2.0), Cpx(3.0)};
  int within = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const RandomPolynomialMap map =
        make_random_map(basis, dist, 2, 31337, static_cast<std::uint64_t>(2 * t));
    const double v = log_norm_F(map, z) / 60.0;
    if (std::abs(v - std::log(3.0)) <= 0.1) ++within;
  }
  CHECK(within >= 90);
}

TEST_CASE("uncertified distributions cannot feed polynomials") {
  auto basis = circle_basis(3);
  const auto bad = CoefficientDistribution::cauchy_like();
  CHECK_THROWS_AS(make_random_poly(basis, bad, 1, 0), std::logic_error);
}
