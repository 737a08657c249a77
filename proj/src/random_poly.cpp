#include "plurirand/random_poly.hpp"

#include <cmath>
#include <stdexcept>

namespace plurirand {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

RandomPolynomial::RandomPolynomial(std::shared_ptr<const OrthonormalBasis> basis,
                                   Eigen::VectorXcd coefficients, SeedRecord seed_record)
    : basis_(std::move(basis)),
      coefficients_(std::move(coefficients)),
      seed_record_(std::move(seed_record)) {
  if (!basis_) throw std::invalid_argument("RandomPolynomial: null basis");
  if (coefficients_.size() != basis_->size()) {
    throw std::invalid_argument("RandomPolynomial: coefficient count mismatch");
  }
}

RandomPolynomial make_random_poly(std::shared_ptr<const OrthonormalBasis> basis,
                                  const CoefficientDistribution& dist,
                                  std::uint64_t seed, std::uint64_t stream) {
  if (!basis) throw std::invalid_argument("make_random_poly: null basis");
  Eigen::VectorXcd coeffs = sample_coefficients(
      dist, static_cast<std::size_t>(basis->size()), seed, stream);
  return RandomPolynomial(std::move(basis), std::move(coeffs),
                          SeedRecord{seed, stream, dist.key()});
}

double log_abs_H(const Eigen::VectorXcd& coefficients,
                 const BasisLogEval& basis_values) {
  if (coefficients.size() != basis_values.log_mag.size()) {
    throw std::invalid_argument("log_abs_H: coefficient count mismatch");
  }
  double max = kNegInf;
  for (Eigen::Index i = 0; i < coefficients.size(); ++i) {
    const double a = std::abs(coefficients[i]);
    if (a == 0.0) continue;
    const double lm = std::log(a) + basis_values.log_mag[i];
    if (lm > max) max = lm;
  }
  if (max == kNegInf) return kNegInf;
  Cpx sum = 0.0;
  for (Eigen::Index i = 0; i < coefficients.size(); ++i) {
    const double a = std::abs(coefficients[i]);
    if (a == 0.0) continue;
    const double lm = std::log(a) + basis_values.log_mag[i];
    if (lm == kNegInf) continue;
    sum += std::exp(lm - max) * (coefficients[i] / a) * basis_values.phase[i];
  }
  const double mag = std::abs(sum);
  if (mag == 0.0) return kNegInf;
  return max + std::log(mag);
}

double log_abs_H(const RandomPolynomial& poly, std::span<const Cpx> z) {
  return log_abs_H(poly.coefficients(), eval_basis_log(poly.basis(), z));
}

RandomPolynomialMap::RandomPolynomialMap(std::vector<RandomPolynomial> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("RandomPolynomialMap: needs at least one component");
  }
  const OrthonormalBasis* shared = &components_.front().basis();
  for (const auto& c : components_) {
    if (&c.basis() != shared) {
      throw std::invalid_argument("RandomPolynomialMap: components must share a basis");
    }
  }
  if (k() > shared->dimension()) {
    throw std::invalid_argument("RandomPolynomialMap: k must be <= dimension m");
  }
}

RandomPolynomialMap make_random_map(std::shared_ptr<const OrthonormalBasis> basis,
                                    const CoefficientDistribution& dist, int k,
                                    std::uint64_t seed, std::uint64_t stream_base) {
  if (k < 1) throw std::invalid_argument("make_random_map: k must be >= 1");
  std::vector<RandomPolynomial> components;
  components.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    components.push_back(
        make_random_poly(basis, dist, seed, stream_base + static_cast<std::uint64_t>(j)));
  }
  return RandomPolynomialMap(std::move(components));
}

double log_norm_F(const RandomPolynomialMap& map, const BasisLogEval& basis_values) {
  double max = kNegInf;
  std::vector<double> logs(static_cast<std::size_t>(map.k()));
  for (int j = 0; j < map.k(); ++j) {
    logs[static_cast<std::size_t>(j)] =
        log_abs_H(map.component(j).coefficients(), basis_values);
    max = std::max(max, logs[static_cast<std::size_t>(j)]);
  }
  if (max == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double l : logs) {
    if (l != kNegInf) sum += std::exp(2.0 * (l - max));
  }
  return max + 0.5 * std::log(sum);
}

double log_norm_F(const RandomPolynomialMap& map, std::span<const Cpx> z) {
  return log_norm_F(map, eval_basis_log(map.basis(), z));
}

}  // namespace plurirand
