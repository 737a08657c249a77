#pragma once

#include <memory>
#include <vector>

#include "plurirand/basis.hpp"
#include "plurirand/distributions.hpp"

namespace plurirand {

// Enough to regenerate the coefficient vector exactly.
struct SeedRecord {
  std::uint64_t master_seed = 0;
  std::uint64_t stream = 0;
  std::string distribution_key;
};

// H_n = sum_nu a_nu p_nu over a fixed orthonormal basis.
class RandomPolynomial {
 public:
  RandomPolynomial(std::shared_ptr<const OrthonormalBasis> basis,
                   Eigen::VectorXcd coefficients, SeedRecord seed_record);

  const OrthonormalBasis& basis() const { return *basis_; }
  const std::shared_ptr<const OrthonormalBasis>& basis_ptr() const { return basis_; }
  const Eigen::VectorXcd& coefficients() const { return coefficients_; }
  const SeedRecord& seed_record() const { return seed_record_; }

 private:
  std::shared_ptr<const OrthonormalBasis> basis_;
  Eigen::VectorXcd coefficients_;
  SeedRecord seed_record_;
};

RandomPolynomial make_random_poly(std::shared_ptr<const OrthonormalBasis> basis,
                                  const CoefficientDistribution& dist,
                                  std::uint64_t seed, std::uint64_t stream);

// log|H(z)| by log-domain accumulation; -inf only at exact zeros.
double log_abs_H(const RandomPolynomial& poly, std::span<const Cpx> z);
// Same against precomputed basis values (grids evaluate the basis once per
// point and reuse it across trials).
double log_abs_H(const Eigen::VectorXcd& coefficients, const BasisLogEval& basis_values);

// k-tuple of random polynomials over one shared basis, 1 <= k <= m.
class RandomPolynomialMap {
 public:
  explicit RandomPolynomialMap(std::vector<RandomPolynomial> components);

  int k() const { return static_cast<int>(components_.size()); }
  const RandomPolynomial& component(int j) const {
    return components_[static_cast<std::size_t>(j)];
  }
  const OrthonormalBasis& basis() const { return components_.front().basis(); }

 private:
  std::vector<RandomPolynomial> components_;
};

// Component j draws from stream (stream_base + j).
RandomPolynomialMap make_random_map(std::shared_ptr<const OrthonormalBasis> basis,
                                    const CoefficientDistribution& dist, int k,
                                    std::uint64_t seed, std::uint64_t stream_base);

// (1/2) log sum_j |H_j(z)|^2 via log-sum-exp.
double log_norm_F(const RandomPolynomialMap& map, std::span<const Cpx> z);
double log_norm_F(const RandomPolynomialMap& map, const BasisLogEval& basis_values);

inline double log_abs_H(const RandomPolynomial& poly, Cpx z) {
  return log_abs_H(poly, std::span<const Cpx>(&z, 1));
}

}  // namespace plurirand
