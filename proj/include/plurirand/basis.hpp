#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <span>
#include <string>

#include "plurirand/multiindex.hpp"
#include "plurirand/polyeval.hpp"
#include "plurirand/sites.hpp"

namespace plurirand {

// Double-precision Vandermonde conditioning limits general site sets to this
// degree; closed-form bases are exempt.
inline constexpr int kGeneralSetDegreeCap = 30;

// Polynomials orthonormal in the discrete L2(e^{-2nQ} tau) inner product,
// stored as a change of basis from monomials: row k of transform() holds the
// monomial coefficients of p_k, lower triangular in graded-lex order with
// positive real diagonal.
class OrthonormalBasis {
 public:
  OrthonormalBasis(MultiIndexOrder order, int degree, Eigen::MatrixXcd transform,
                   std::string source);

  const MultiIndexOrder& order() const { return order_; }
  int degree() const { return degree_; }
  int dimension() const { return order_.dimension(); }
  Eigen::Index size() const { return transform_.rows(); }
  const Eigen::MatrixXcd& transform() const { return transform_; }
  const std::string& source() const { return source_; }

 private:
  MultiIndexOrder order_;
  int degree_;
  Eigen::MatrixXcd transform_;
  std::string source_;
};

// G[nu,gamma] = sum_i w_i z_i^nu conj(z_i^gamma) e^{-2 n q_i}; Hermitian PSD.
Eigen::MatrixXcd gram_matrix(const WeightedSiteSet& sites, int degree);

// Orthonormalization against the discrete measure via QR of the weighted
// Vandermonde (rows scaled by sqrt(w_i e^{-2 n q_i})) with one
// re-orthogonalization pass. Requires at least dim P_n sites and a Gram with
// eigenvalue ratio above 1e-13; failures name the offending degree.
OrthonormalBasis build_basis_qr(const WeightedSiteSet& sites, int degree);

// Analytic bases, no quadrature, no degree cap.
OrthonormalBasis closed_form_circle(int degree);
OrthonormalBasis closed_form_torus(int m, int degree);
// Weyl basis p_j(z) = z^j sqrt(n^{j+1}/(pi j!)), the normalization obtained by
// integrating |z|^{2j} e^{-n|z|^2} over the plane.
OrthonormalBasis closed_form_weyl(int degree);

// Basis values at a point as log-magnitudes plus unit phases, stable at
// degrees where direct evaluation of S_n would overflow.
using BasisLogEval = MonomialLogEval;
BasisLogEval eval_basis_log(const OrthonormalBasis& basis, std::span<const Cpx> z);

// Direct values; fine for modest degree, used mainly by tests.
Eigen::VectorXcd eval_basis(const OrthonormalBasis& basis, std::span<const Cpx> z);

// Transform matrix dump, row-major "re,im" pairs per entry.
void export_transform_csv(const OrthonormalBasis& basis,
                          const std::filesystem::path& path);

}  // namespace plurirand
