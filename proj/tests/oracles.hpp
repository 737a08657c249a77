// Independent reference computations for the tests. Everything here avoids
// the library's evaluation paths on purpose: direct products via std::pow,
// plain summation, and separate quadrature.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "plurirand/multiindex.hpp"

namespace oracles {

using Cpx = std::complex<double>;

// Direct evaluation of z^nu as an explicit product of powers.
inline Cpx monomial_direct(std::span<const Cpx> z, const std::vector<int>& exponents) {
  Cpx value = 1.0;
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    value *= std::pow(z[j], exponents[j]);
  }
  return value;
}

// Direct evaluation of sum c_nu z^nu.
inline Cpx poly_direct(std::span<const Cpx> coeffs,
                       const plurirand::MultiIndexOrder& order,
                       std::span<const Cpx> z) {
  Cpx total = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    total += coeffs[i] * monomial_direct(z, order[i].exponents);
  }
  return total;
}

// log of the geometric series sum_{j=0}^{n} q^j for q > 1, in the log domain.
inline double log_geometric_sum(double q, int n) {
  // (q^{n+1} - 1)/(q - 1)
  const double log_qn1 = (n + 1) * std::log(q);
  return log_qn1 + std::log1p(-std::exp(-log_qn1)) - std::log(q - 1.0);
}

// Composite Simpson on [a, b].
template <typename F>
double simpson(F f, double a, double b, int intervals) {
  if (intervals % 2 == 1) ++intervals;
  const double h = (b - a) / intervals;
  double total = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) {
    total += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return total * h / 3.0;
}

// E log|a| for the standard complex Gaussian (density e^{-|z|^2}/pi) by
// radial quadrature: int_0^inf log(r) e^{-r^2} 2r dr.
inline double complex_gaussian_mean_log() {
  return simpson([](double r) { return r <= 0.0 ? 0.0 : std::log(r) * std::exp(-r * r) * 2.0 * r; },
                 1e-12, 12.0, 200000);
}

// Regularized upper incomplete gamma Q(k, x) for integer k: the Poisson tail
// formula e^{-x} sum_{i<k} x^i/i!.
inline double gamma_upper_regularized(int k, double x) {
  double term = std::exp(-x);
  double total = term;
  for (int i = 1; i < k; ++i) {
    term *= x / i;
    total += term;
  }
  return total;
}

// Two-sample Kolmogorov-Smirnov distance.
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    const double fa = static_cast<double>(i) / a.size();
    const double fb = static_cast<double>(j) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

}  // namespace oracles
