#include "plurirand/basis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace plurirand {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Weighted Vandermonde: A(i, gamma) = sqrt(w_i e^{-2 n q_i}) z_i^gamma.
Eigen::MatrixXcd weighted_vandermonde(const WeightedSiteSet& sites,
                                      const MultiIndexOrder& order, int degree) {
  const auto rows = static_cast<Eigen::Index>(sites.size());
  const auto cols = static_cast<Eigen::Index>(order.size());
  Eigen::MatrixXcd A(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double scale =
        std::sqrt(sites.weights()[i] * std::exp(-2.0 * degree * sites.q_values()[i]));
    A.row(i) = scale * eval_monomials(sites.point(static_cast<std::size_t>(i)), order)
                           .transpose();
  }
  return A;
}

}  // namespace

OrthonormalBasis::OrthonormalBasis(MultiIndexOrder order, int degree,
                                   Eigen::MatrixXcd transform, std::string source)
    : order_(std::move(order)),
      degree_(degree),
      transform_(std::move(transform)),
      source_(std::move(source)) {
  const auto n = static_cast<Eigen::Index>(order_.size());
  if (transform_.rows() != n || transform_.cols() != n) {
    throw std::invalid_argument("OrthonormalBasis: transform shape mismatch");
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!(transform_(k, k).real() > 0.0) || transform_(k, k).imag() != 0.0) {
      throw std::invalid_argument(
          "OrthonormalBasis: diagonal must be real positive");
    }
    for (Eigen::Index g = k + 1; g < n; ++g) {
      if (transform_(k, g) != Cpx(0.0, 0.0)) {
        throw std::invalid_argument("OrthonormalBasis: transform must be lower triangular");
      }
    }
  }
}

Eigen::MatrixXcd gram_matrix(const WeightedSiteSet& sites, int degree) {
  const MultiIndexOrder order = enumerate_multiindices(sites.dimension(), degree);
  const Eigen::MatrixXcd A = weighted_vandermonde(sites, order, degree);
  // (A^H A)[gamma, nu] = sum_i conj(z^gamma) z^nu w e^{-2nq}; conjugating
  // gives the G[nu, gamma] = <z^nu, z^gamma> entry convention.
  return (A.adjoint() * A).conjugate();
}

OrthonormalBasis build_basis_qr(const WeightedSiteSet& sites, int degree) {
  if (degree > kGeneralSetDegreeCap) {
    throw std::invalid_argument(
        "build_basis_qr: degree " + std::to_string(degree) + " exceeds the cap " +
        std::to_string(kGeneralSetDegreeCap) + " for general site sets");
  }
  const MultiIndexOrder order = enumerate_multiindices(sites.dimension(), degree);
  const auto dim = static_cast<Eigen::Index>(order.size());
  if (static_cast<Eigen::Index>(sites.size()) < dim) {
    throw std::invalid_argument(
        "build_basis_qr: " + std::to_string(sites.size()) + " sites cannot carry " +
        std::to_string(dim) + " basis polynomials");
  }

  const Eigen::MatrixXcd A = weighted_vandermonde(sites, order, degree);

  // Positive-definiteness of the Gram, checked before factorizing.
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(A.adjoint() * A);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 1e-13 * hi)) {
      throw std::runtime_error(
          "build_basis_qr: Gram numerically singular (eigenvalue ratio " +
          format_double(hi > 0 ? lo / hi : 0.0) + ") for '" + sites.label() + "'");
    }
  }

  Eigen::HouseholderQR<Eigen::MatrixXcd> qr1(A);
  Eigen::MatrixXcd R1 = qr1.matrixQR()
                            .topRows(dim)
                            .template triangularView<Eigen::Upper>();
  Eigen::MatrixXcd Q1 = qr1.householderQ() * Eigen::MatrixXcd::Identity(A.rows(), dim);

  // Re-orthogonalization pass: QR the computed Q once more and fold the
  // correction into R.
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr2(Q1);
  Eigen::MatrixXcd R2 = qr2.matrixQR()
                            .topRows(dim)
                            .template triangularView<Eigen::Upper>();
  Eigen::MatrixXcd R = R2 * R1;

  // Unitary diagonal adjustment: make diag(R) real positive. G = R^H R is
  // unchanged, and the resulting basis diagonal becomes positive real.
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Cpx d = R(k, k);
    const double mag = std::abs(d);
    if (!(mag > 0.0)) {
      throw std::runtime_error(
          "build_basis_qr: rank deficiency at degree " +
          std::to_string(order[static_cast<std::size_t>(k)].total_degree()) +
          " for '" + sites.label() + "'");
    }
    R.row(k) *= std::conj(d) / mag;
  }

  // Row k of the transform lists the monomial coefficients of p_k; with this
  // convention orthonormality reads T conj(G) T^H = I, solved by T = R^{-T}.
  Eigen::MatrixXcd Rinv = R.template triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXcd::Identity(dim, dim));
  Eigen::MatrixXcd transform = Rinv.transpose();
  // Scrub triangular-solve roundoff above the diagonal so the stored matrix
  // is exactly triangular.
  for (Eigen::Index k = 0; k < dim; ++k) {
    transform(k, k) = Cpx(transform(k, k).real(), 0.0);
    for (Eigen::Index g = k + 1; g < dim; ++g) transform(k, g) = Cpx(0.0, 0.0);
  }

  // Enforce the orthonormality contract against the discrete measure.
  const Eigen::MatrixXcd P = A * Rinv;
  const double dev = (P.adjoint() * P - Eigen::MatrixXcd::Identity(dim, dim))
                         .cwiseAbs()
                         .maxCoeff();
  if (!(dev <= 1e-8)) {
    throw std::runtime_error(
        "build_basis_qr: orthonormality residual " + format_double(dev) +
        " exceeds 1e-8 for '" + sites.label() + "'");
  }

  return OrthonormalBasis(order, degree, std::move(transform),
                          sites.label());
}

OrthonormalBasis closed_form_circle(int degree) {
  MultiIndexOrder order = enumerate_multiindices(1, degree);
  const auto dim = static_cast<Eigen::Index>(order.size());
  return OrthonormalBasis(std::move(order), degree,
                          Eigen::MatrixXcd::Identity(dim, dim), "circle");
}

OrthonormalBasis closed_form_torus(int m, int degree) {
  MultiIndexOrder order = enumerate_multiindices(m, degree);
  const auto dim = static_cast<Eigen::Index>(order.size());
  return OrthonormalBasis(std::move(order), degree,
                          Eigen::MatrixXcd::Identity(dim, dim),
                          "torus(" + std::to_string(m) + ")");
}

OrthonormalBasis closed_form_weyl(int degree) {
  if (degree < 1) throw std::invalid_argument("closed_form_weyl: degree must be >= 1");
  MultiIndexOrder order = enumerate_multiindices(1, degree);
  const auto dim = static_cast<Eigen::Index>(order.size());
  Eigen::MatrixXcd transform = Eigen::MatrixXcd::Zero(dim, dim);
  const double log_n = std::log(static_cast<double>(degree));
  for (Eigen::Index j = 0; j < dim; ++j) {
    // sqrt(n^{j+1} / (pi j!)) in the log domain.
    const double log_coeff = 0.5 * ((j + 1) * log_n - std::log(std::numbers::pi) -
                                    std::lgamma(static_cast<double>(j) + 1.0));
    transform(j, j) = std::exp(log_coeff);
  }
  return OrthonormalBasis(std::move(order), degree, std::move(transform),
                          "weyl(" + std::to_string(degree) + ")");
}

BasisLogEval eval_basis_log(const OrthonormalBasis& basis, std::span<const Cpx> z) {
  const MonomialLogEval mono = eval_monomials_log(z, basis.order());
  const Eigen::MatrixXcd& T = basis.transform();
  const Eigen::Index dim = T.rows();

  BasisLogEval out;
  out.log_mag.resize(dim);
  out.phase.resize(dim);

  std::vector<double> term_log;
  std::vector<Cpx> term_phase;
  for (Eigen::Index k = 0; k < dim; ++k) {
    term_log.clear();
    term_phase.clear();
    double max = kNegInf;
    for (Eigen::Index g = 0; g <= k; ++g) {
      const double a = std::abs(T(k, g));
      if (a == 0.0) continue;
      const double lm = std::log(a) + mono.log_mag[g];
      if (lm == kNegInf) continue;
      term_log.push_back(lm);
      term_phase.push_back((T(k, g) / a) * mono.phase[g]);
      if (lm > max) max = lm;
    }
    if (term_log.empty()) {
      out.log_mag[k] = kNegInf;
      out.phase[k] = 1.0;
      continue;
    }
    Cpx sum = 0.0;
    for (std::size_t t = 0; t < term_log.size(); ++t) {
      sum += std::exp(term_log[t] - max) * term_phase[t];
    }
    const double mag = std::abs(sum);
    if (mag == 0.0) {
      out.log_mag[k] = kNegInf;
      out.phase[k] = 1.0;
    } else {
      out.log_mag[k] = max + std::log(mag);
      out.phase[k] = sum / mag;
    }
  }
  return out;
}

Eigen::VectorXcd eval_basis(const OrthonormalBasis& basis, std::span<const Cpx> z) {
  return basis.transform() * eval_monomials(z, basis.order());
}

void export_transform_csv(const OrthonormalBasis& basis,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("export_transform_csv: cannot open " + path.string());
  }
  const Eigen::MatrixXcd& T = basis.transform();
  for (Eigen::Index k = 0; k < T.rows(); ++k) {
    for (Eigen::Index g = 0; g < T.cols(); ++g) {
      if (g > 0) out << ",";
      out << format_double(T(k, g).real()) << "," << format_double(T(k, g).imag());
    }
    out << "\n";
  }
}

}  // namespace plurirand
