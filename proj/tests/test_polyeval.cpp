#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "plurirand/polyeval.hpp"

using namespace plurirand;

namespace {

Eigen::VectorXcd ones(Eigen::Index n) { return Eigen::VectorXcd::Constant(n, 1.0); }

}  // namespace

TEST_CASE("eval_monomials: direct products") {
  SUBCASE("z=(2,3), component nu=(1,2) is 18") {
    const MultiIndexOrder order = enumerate_multiindices(2, 3);
    const std::vector<Cpx> z = {2.0, 3.0};
    const Eigen::VectorXcd values = eval_monomials(z, order);
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[i].exponents == std::vector<int>{1, 2}) {
        CHECK(std::abs(values[static_cast<Eigen::Index>(i)] - Cpx(18.0)) < 1e-12);
      }
    }
  }
  SUBCASE("origin: 1 in the constant slot, 0 elsewhere") {
    const MultiIndexOrder order = enumerate_multiindices(3, 4);
    const std::vector<Cpx> z = {0.0, 0.0, 0.0};
    const Eigen::VectorXcd values = eval_monomials(z, order);
    CHECK(values[0] == Cpx(1.0));
    for (Eigen::Index i = 1; i < values.size(); ++i) CHECK(values[i] == Cpx(0.0));
  }
  SUBCASE("powers of 2") {
    const MultiIndexOrder order = enumerate_multiindices(1, 3);
    const std::vector<Cpx> z = {2.0};
    const Eigen::VectorXcd values = eval_monomials(z, order);
    const double expected[] = {1.0, 2.0, 4.0, 8.0};
    for (Eigen::Index i = 0; i < 4; ++i) {
      CHECK(std::abs(values[i] - Cpx(expected[i])) < 1e-12);
    }
  }
}

TEST_CASE("eval_monomials agrees with direct products at random complex points") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int m : {1, 2, 3}) {
    const MultiIndexOrder order = enumerate_multiindices(m, 6);
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<Cpx> z(static_cast<std::size_t>(m));
      for (auto& c : z) c = Cpx(unif(rng), unif(rng));
      const Eigen::VectorXcd values = eval_monomials(z, order);
      for (std::size_t i = 0; i < order.size(); ++i) {
        const Cpx direct = oracles::monomial_direct(z, order[i].exponents);
        CHECK(std::abs(values[static_cast<Eigen::Index>(i)] - direct) <=
              1e-12 * (1.0 + std::abs(direct)));
      }
    }
  }
}

TEST_CASE("log_abs_eval: pinned values") {
  SUBCASE("constant 1 evaluates to log 1 = 0") {
    const MultiIndexOrder order = enumerate_multiindices(1, 0);
    Eigen::VectorXcd coeffs(1);
    coeffs << Cpx(1.0);
    const std::vector<Cpx> z = {Cpx(123.4, -5.0)};
    CHECK(log_abs_eval(coeffs, order, z) == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("identity polynomial at z=e gives 1") {
    const MultiIndexOrder order = enumerate_multiindices(1, 1);
    Eigen::VectorXcd coeffs(2);
    coeffs << Cpx(0.0), Cpx(1.0);
    const std::vector<Cpx> z = {std::exp(1.0)};
    CHECK(log_abs_eval(coeffs, order, z) == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("all-ones coefficients, n=200, z=2: geometric series") {
    const int n = 200;
    const MultiIndexOrder order = enumerate_multiindices(1, n);
    const std::vector<Cpx> z = {2.0};
    // log(2^{201} - 1), assembled in the log domain.
    const double expected = 201.0 * std::log(2.0) + std::log1p(-std::pow(2.0, -201.0));
    CHECK(log_abs_eval(ones(n + 1), order, z) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("log_abs_eval matches direct evaluation for |z| <= 2, n <= 30") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int m : {1, 2}) {
    for (int n : {1, 5, 12, 30}) {
      if (m == 2 && n > 12) continue;
      const MultiIndexOrder order = enumerate_multiindices(m, n);
      Eigen::VectorXcd coeffs(static_cast<Eigen::Index>(order.size()));
      for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        coeffs[i] = Cpx(unif(rng), unif(rng));
      }
      for (int rep = 0; rep < 10; ++rep) {
        std::vector<Cpx> z(static_cast<std::size_t>(m));
        for (auto& c : z) c = 2.0 * std::sqrt(0.5) * Cpx(unif(rng), unif(rng));
        const Cpx direct = oracles::poly_direct(
            std::span<const Cpx>(coeffs.data(), static_cast<std::size_t>(coeffs.size())),
            order, z);
        if (std::abs(direct) < 1e-8) continue;  // near-cancellation: no clean oracle
        CHECK(log_abs_eval(coeffs, order, z) ==
              doctest::Approx(std::log(std::abs(direct))).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("log_abs_eval stays finite where direct evaluation overflows") {
  const int n = 500;
  const MultiIndexOrder order = enumerate_multiindices(1, n);
  const std::vector<Cpx> z = {10.0};
  const double value = log_abs_eval(ones(n + 1), order, z);
  CHECK(std::isfinite(value));
  CHECK(value == doctest::Approx(oracles::log_geometric_sum(10.0, n)).epsilon(1e-12));
}

TEST_CASE("log_abs_eval returns -inf exactly on the zero polynomial") {
  const MultiIndexOrder order = enumerate_multiindices(1, 3);
  const std::vector<Cpx> z = {Cpx(0.3, 0.4)};
  CHECK(log_abs_eval(Eigen::VectorXcd::Zero(4), order, z) ==
        -std::numeric_limits<double>::infinity());
}

TEST_CASE("log_abs_eval rejects mismatched lengths") {
  const MultiIndexOrder order = enumerate_multiindices(1, 3);
  const std::vector<Cpx> z = {1.0};
  CHECK_THROWS_AS(log_abs_eval(ones(3), order, z), std::invalid_argument);
}

TEST_CASE("log_sum_exp basics") {
  const std::vector<double> values = {700.0, 700.0};
  CHECK(log_sum_exp(values) == doctest::Approx(700.0 + std::log(2.0)));
  const std::vector<double> empty;
  CHECK(log_sum_exp(empty) == -std::numeric_limits<double>::infinity());
}
