#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <vector>

#include "plurirand/random_poly.hpp"

namespace plurirand {

// Zero set of a degree-n polynomial with uniform mass 1/n per zero. When
// leading coefficients underflow the deflation threshold, the missing zeros
// are counted rather than invented.
struct EmpiricalZeroMeasure {
  std::vector<Cpx> points;
  int nominal_degree = 0;
  int deflated_count = 0;

  double mass_per_point() const { return 1.0 / nominal_degree; }
};

// Monomial coefficients of a univariate H = sum a_nu p_nu through the basis
// transform: c = T^t a.
Eigen::VectorXcd onb_to_monomial(const RandomPolynomial& poly);

// Roots via the balanced companion matrix. Trailing (top-degree) coefficients
// with |c_d| <= 1e-13 max|c| are deflated and counted; the nominal degree is
// coeffs.size() - 1. Throws std::runtime_error when every coefficient is
// below threshold.
EmpiricalZeroMeasure roots_1d(const Eigen::VectorXcd& monomial_coeffs);

EmpiricalZeroMeasure scale_zeros(EmpiricalZeroMeasure measure, double factor);

// Fraction of zeros with |z| <= r.
double radial_cdf(const EmpiricalZeroMeasure& measure, double r);

// Counts by argument over sectors [2 pi k/s, 2 pi (k+1)/s).
std::vector<int> angular_counts(const EmpiricalZeroMeasure& measure, int sectors);

// Fraction of zeros with r_lo < |z| <= r_hi.
double annulus_fraction(const EmpiricalZeroMeasure& measure, double r_lo, double r_hi);

// CSV rows trial,re,im over a collection of per-trial zero sets.
void write_zero_sets_csv(std::span<const EmpiricalZeroMeasure> measures,
                         const std::filesystem::path& path);

}  // namespace plurirand
