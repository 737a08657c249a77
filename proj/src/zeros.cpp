#include "plurirand/zeros.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace plurirand {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Parlett-Reinsch balancing: diagonal similarity with powers of 2 until row
// and column 1-norms agree, which tames the huge dynamic range of companion
// matrices. Eigen's complex eigensolver does not balance on its own.
void balance(Eigen::MatrixXcd& A) {
  const Eigen::Index n = A.rows();
  const double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row_norm = 0.0, col_norm = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        col_norm += std::abs(A(j, i));
        row_norm += std::abs(A(i, j));
      }
      if (col_norm == 0.0 || row_norm == 0.0) continue;
      double f = 1.0;
      const double s = col_norm + row_norm;
      while (col_norm < row_norm / radix) {
        col_norm *= radix;
        row_norm /= radix;
        f *= radix;
      }
      while (col_norm > row_norm * radix) {
        col_norm /= radix;
        row_norm *= radix;
        f /= radix;
      }
      if ((col_norm + row_norm) < 0.95 * s && f != 1.0) {
        converged = false;
        A.col(i) *= f;
        A.row(i) /= f;
      }
    }
  }
}

}  // namespace

Eigen::VectorXcd onb_to_monomial(const RandomPolynomial& poly) {
  if (poly.basis().dimension() != 1) {
    throw std::invalid_argument("onb_to_monomial: basis must be univariate");
  }
  return poly.basis().transform().transpose() * poly.coefficients();
}

EmpiricalZeroMeasure roots_1d(const Eigen::VectorXcd& monomial_coeffs) {
  const Eigen::Index len = monomial_coeffs.size();
  if (len < 2) {
    throw std::invalid_argument("roots_1d: need a polynomial of degree >= 1");
  }
  double max_mag = 0.0;
  for (Eigen::Index i = 0; i < len; ++i) {
    max_mag = std::max(max_mag, std::abs(monomial_coeffs[i]));
  }
  if (!(max_mag > 0.0) || !std::isfinite(max_mag)) {
    throw std::runtime_error("roots_1d: degenerate polynomial (no usable coefficients)");
  }
  const double threshold = 1e-13 * max_mag;
  Eigen::Index d = -1;
  for (Eigen::Index i = len - 1; i >= 0; --i) {
    if (std::abs(monomial_coeffs[i]) > threshold) {
      d = i;
      break;
    }
  }
  if (d < 1) {
    throw std::runtime_error(
        "roots_1d: degenerate polynomial (effective degree 0 after deflation)");
  }

  EmpiricalZeroMeasure measure;
  measure.nominal_degree = static_cast<int>(len - 1);
  measure.deflated_count = static_cast<int>(len - 1 - d);

  // Top-row companion (descending coefficients across the first row): the QR
  // iteration resolves the graded small roots of wide-dynamic-range
  // polynomials far better in this orientation than in the last-column form.
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    companion(0, j) = -monomial_coeffs[d - 1 - j] / monomial_coeffs[d];
  }
  for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  balance(companion);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("roots_1d: eigenvalue iteration failed");
  }
  measure.points.resize(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    measure.points[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
  }
  return measure;
}

EmpiricalZeroMeasure scale_zeros(EmpiricalZeroMeasure measure, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("scale_zeros: factor must be > 0");
  for (Cpx& z : measure.points) z *= factor;
  return measure;
}

double radial_cdf(const EmpiricalZeroMeasure& measure, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("radial_cdf: r must be > 0");
  if (measure.points.empty()) return 0.0;
  std::size_t count = 0;
  for (const Cpx& z : measure.points) {
    if (std::abs(z) <= r) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(measure.points.size());
}

std::vector<int> angular_counts(const EmpiricalZeroMeasure& measure, int sectors) {
  if (sectors < 2) throw std::invalid_argument("angular_counts: sectors must be >= 2");
  std::vector<int> counts(static_cast<std::size_t>(sectors), 0);
  const double two_pi = 2.0 * std::numbers::pi;
  for (const Cpx& z : measure.points) {
    double theta = std::arg(z);
    if (theta < 0.0) theta += two_pi;
    int k = static_cast<int>(theta / two_pi * sectors);
    if (k >= sectors) k = 0;  // theta == 2 pi wraps to the first sector
    ++counts[static_cast<std::size_t>(k)];
  }
  return counts;
}

double annulus_fraction(const EmpiricalZeroMeasure& measure, double r_lo, double r_hi) {
  if (!(r_lo >= 0.0) || !(r_hi > r_lo)) {
    throw std::invalid_argument("annulus_fraction: need 0 <= r_lo < r_hi");
  }
  if (measure.points.empty()) return 0.0;
  std::size_t count = 0;
  for (const Cpx& z : measure.points) {
    const double r = std::abs(z);
    if (r > r_lo && r <= r_hi) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(measure.points.size());
}

void write_zero_sets_csv(std::span<const EmpiricalZeroMeasure> measures,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_zero_sets_csv: cannot open " + path.string());
  out << "trial,re,im\n";
  for (std::size_t t = 0; t < measures.size(); ++t) {
    for (const Cpx& z : measures[t].points) {
      out << t << "," << format_double(z.real()) << "," << format_double(z.imag())
          << "\n";
    }
  }
}

}  // namespace plurirand
