#pragma once

#include <Eigen/Core>
#include <complex>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "plurirand/polyeval.hpp"

namespace plurirand {

// Discrete quadrature stand-in for a weighted triple (K, Q, tau): nodes,
// tau-mass per node, and the weight function Q sampled at the nodes.
// Integrals against e^{-2nQ} dtau become weighted sums over the nodes.
class WeightedSiteSet {
 public:
  WeightedSiteSet(int dimension, std::vector<Cpx> coords, Eigen::VectorXd weights,
                  Eigen::VectorXd q_values, std::string label);

  int dimension() const { return dimension_; }
  std::size_t size() const { return static_cast<std::size_t>(weights_.size()); }
  std::span<const Cpx> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dimension_),
            static_cast<std::size_t>(dimension_)};
  }
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::VectorXd& q_values() const { return q_values_; }
  const std::string& label() const { return label_; }
  double total_mass() const { return weights_.sum(); }

 private:
  int dimension_;
  std::vector<Cpx> coords_;  // row-major, size() * dimension_
  Eigen::VectorXd weights_;
  Eigen::VectorXd q_values_;
  std::string label_;
};

// N equally spaced points on the unit circle, tau = uniform probability
// measure, Q = 0. The discrete Gram of monomials up to degree n is exactly
// the identity whenever N > n (no aliased exponent differences).
WeightedSiteSet circle_sites(int N);

// Product of m copies of the N-point circle; weights 1/N^m, Q = 0.
WeightedSiteSet torus_sites(int m, int N);

// Truncation policy for unbounded weights: Q super-logarithmic with margin b,
// measure with moment exponent a, and a degree-indexed truncation radius.
struct UnboundedWeightSpec {
  double super_log_margin_b = 1.0;
  double moment_exponent_a = 1.0;
  std::function<double(int)> truncation_rule;

  // Fixed radius 3: weighted polynomials of degree <= n under Q = |z|^2/2
  // peak inside the unit disk, and the e^{-n|z|^2} moment tails beyond
  // radius 3 are negligible for every n >= 4.
  static UnboundedWeightSpec weyl_default();
  static UnboundedWeightSpec weyl_with_radius(double radius);

  void validate() const;
};

// Tensor polar quadrature for Lebesgue measure on the disk |z| <= R(n) with
// Q(z) = |z|^2/2: Gauss-Legendre in r^2, uniform in angle. Weights carry the
// plain area measure; the Gaussian factor enters through q_values.
WeightedSiteSet weyl_sites(int degree_n, int nodes_radial, int nodes_angular,
                           const UnboundedWeightSpec& spec);

// CSV with header {re,im,...,weight,q}; both re_1..re_m,im_1..im_m and
// re_1,im_1,...,re_m,im_m header orders are accepted. Failures report the
// offending line number.
WeightedSiteSet sites_from_file(const std::filesystem::path& path);

void write_sites_csv(const WeightedSiteSet& sites,
                     const std::filesystem::path& path);

}  // namespace plurirand
