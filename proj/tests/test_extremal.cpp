#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "plurirand/extremal.hpp"

using namespace plurirand;

TEST_CASE("log_bergman_diag closed forms on the circle") {
  SUBCASE("n=10, z=2: geometric series sum 4^j") {
    const OrthonormalBasis basis = closed_form_circle(10);
    const double expected = oracles::log_geometric_sum(4.0, 10);
    CHECK(log_bergman_diag(basis, std::vector<Cpx>{Cpx(2.0)}) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("|z| = 1: all terms are 1, log(n+1)") {
    const OrthonormalBasis basis = closed_form_circle(25);
    const std::vector<Cpx> z = {std::polar(1.0, 0.83)};
    CHECK(log_bergman_diag(basis, z) == doctest::Approx(std::log(26.0)).epsilon(1e-12));
  }
  SUBCASE("S_n >= |p_0|^2 > 0 everywhere, including deep inside") {
    const OrthonormalBasis basis = closed_form_circle(40);
    const std::vector<Cpx> z = {Cpx(1e-8, 0.0)};
    CHECK(log_bergman_diag(basis, z) >= 0.0);  // |p_0|^2 = 1
    CHECK(std::isfinite(log_bergman_diag(basis, std::vector<Cpx>{Cpx(0.0)})));
  }
}

TEST_CASE("extremal_estimate pinned values") {
  SUBCASE("circle n=10, z=2") {
    const OrthonormalBasis basis = closed_form_circle(10);
    const double expected = oracles::log_geometric_sum(4.0, 10) / 20.0;
    CHECK(extremal_estimate(basis, Cpx(2.0)) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.7075).epsilon(1e-3));
  }
  SUBCASE("circle n=50, z=1: log(51)/100") {
    const OrthonormalBasis basis = closed_form_circle(50);
    CHECK(extremal_estimate(basis, Cpx(1.0)) ==
          doctest::Approx(std::log(51.0) / 100.0).epsilon(1e-12));
  }
  SUBCASE("degree-0 basis is rejected") {
    const OrthonormalBasis basis = closed_form_circle(0);
    CHECK_THROWS_AS(extremal_estimate(basis, Cpx(2.0)), std::invalid_argument);
  }
}

TEST_CASE("oracle_extremal") {
  CHECK(oracle_extremal(ExtremalModel::Circle, Cpx(std::exp(1.0))) ==
        doctest::Approx(1.0));
  CHECK(oracle_extremal(ExtremalModel::Circle, Cpx(0.3, 0.2)) == 0.0);
  CHECK(oracle_extremal(ExtremalModel::Torus,
                        std::vector<Cpx>{Cpx(0.5), Cpx(0.5)}) == 0.0);
  CHECK(oracle_extremal(ExtremalModel::Torus, std::vector<Cpx>{Cpx(2.0), Cpx(3.0)}) ==
        doctest::Approx(std::log(3.0)));
  SUBCASE("weyl profile and continuity at |z| = 1") {
    CHECK(oracle_extremal(ExtremalModel::Weyl, Cpx(1.0)) == doctest::Approx(0.5));
    CHECK(oracle_extremal(ExtremalModel::Weyl, Cpx(0.0)) == 0.0);
    CHECK(oracle_extremal(ExtremalModel::Weyl, Cpx(2.0)) ==
          doctest::Approx(std::log(2.0) + 0.5));
    const double inside = oracle_extremal(ExtremalModel::Weyl, Cpx(1.0 - 1e-12));
    const double outside = oracle_extremal(ExtremalModel::Weyl, Cpx(1.0 + 1e-12));
    CHECK(std::abs(inside - outside) < 1e-11);
  }
}

TEST_CASE("grid_error") {
  const std::vector<double> radii = {0.5, 2.0};
  const EvaluationGrid grid = EvaluationGrid::ring(radii, 16);
  SUBCASE("identical functions give zero") {
    const GridFunction f = [](std::span<const Cpx> z) { return std::abs(z[0]); };
    const GridError err = grid_error(f, f, grid);
    CHECK(err.sup_error == 0.0);
    CHECK(err.mean_abs_error == 0.0);
  }
  SUBCASE("constant offset eps reports (eps, eps)") {
    const GridFunction f = [](std::span<const Cpx>) { return 1.0; };
    const GridFunction g = [](std::span<const Cpx>) { return 1.0 + 0.125; };
    const GridError err = grid_error(f, g, grid);
    CHECK(err.sup_error == doctest::Approx(0.125));
    CHECK(err.mean_abs_error == doctest::Approx(0.125));
  }
  SUBCASE("circle n=50 on the ring |z|=2: exact closed form") {
    const OrthonormalBasis basis = closed_form_circle(50);
    const std::vector<double> two = {2.0};
    const EvaluationGrid ring2 = EvaluationGrid::ring(two, 32);
    const GridError err = grid_error(
        [&](std::span<const Cpx> z) { return extremal_estimate(basis, z); },
        [&](std::span<const Cpx> z) { return oracle_extremal(ExtremalModel::Circle, z); },
        ring2);
    const double exact = oracles::log_geometric_sum(4.0, 50) / 100.0 - std::log(2.0);
    CHECK(err.sup_error == doctest::Approx(exact).epsilon(1e-10));
    CHECK(exact == doctest::Approx(0.0028770).epsilon(1e-3));
  }
}

TEST_CASE("monotone approach from above: circle at |z| = 2") {
  double prev = std::numeric_limits<double>::infinity();
  for (int n : {10, 20, 40, 80}) {
    const OrthonormalBasis basis = closed_form_circle(n);
    const double est = extremal_estimate(basis, Cpx(2.0));
    CHECK(est > std::log(2.0));
    CHECK(est < prev);
    prev = est;
  }
}

TEST_CASE("basis independence: quadrature and closed-form estimates agree") {
  for (int n : {5, 10, 20}) {
    const OrthonormalBasis quad = build_basis_qr(circle_sites(2 * n + 1), n);
    const OrthonormalBasis closed = closed_form_circle(n);
    for (const Cpx z : {Cpx(0.5, 0.1), Cpx(1.0, 0.0), Cpx(-2.0, 1.0)}) {
      CHECK(extremal_estimate(quad, z) ==
            doctest::Approx(extremal_estimate(closed, z)).epsilon(1e-6));
    }
  }
  const OrthonormalBasis quad = build_basis_qr(torus_sites(2, 13), 6);
  const OrthonormalBasis closed = closed_form_torus(2, 6);
  const std::vector<Cpx> z = {Cpx(2.0, 0.0), Cpx(0.0, 3.0)};
  CHECK(extremal_estimate(quad, z) ==
        doctest::Approx(extremal_estimate(closed, z)).epsilon(1e-6));
}

TEST_CASE("oracle majorization with slack (fitted constant C = 2)") {
  for (int n : {10, 25, 50}) {
    const OrthonormalBasis basis = closed_form_circle(n);
    const double slack = std::log(2.0 * (n + 1)) / n;
    for (const Cpx z : {Cpx(0.25), Cpx(0.9), Cpx(1.0), Cpx(1.1), Cpx(2.0), Cpx(4.0)}) {
      CHECK(extremal_estimate(basis, z) >=
            oracle_extremal(ExtremalModel::Circle, z) - slack);
    }
  }
  const OrthonormalBasis torus = closed_form_torus(2, 10);
  const double slack = std::log(2.0 * 66.0) / 10.0;
  for (const double r : {0.5, 1.0, 2.0}) {
    const std::vector<Cpx> z = {Cpx(r), Cpx(r)};
    CHECK(extremal_estimate(torus, z) >=
          oracle_extremal(ExtremalModel::Torus, z) - slack);
  }
}

TEST_CASE("grids validate their inputs") {
  const std::vector<double> radii = {1.0};
  CHECK_THROWS_AS(EvaluationGrid::ring({}, 8), std::invalid_argument);
  CHECK_THROWS_AS(EvaluationGrid::ring(radii, 0), std::invalid_argument);
  const EvaluationGrid grid = EvaluationGrid::product_ring(radii, 4);
  CHECK(grid.dimension() == 2);
  CHECK(grid.size() == 16);
}
