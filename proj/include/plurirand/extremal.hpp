#pragma once

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "plurirand/basis.hpp"

namespace plurirand {

// Finite evaluation set standing in for "compact subsets of C^m".
class EvaluationGrid {
 public:
  EvaluationGrid(int dimension, std::vector<Cpx> coords, std::string tag);

  // radii x equally spaced angles in one variable.
  static EvaluationGrid ring(std::span<const double> radii, int angles,
                             std::string tag = "ring");
  // Cartesian product of two ring grids in C^2.
  static EvaluationGrid product_ring(std::span<const double> radii, int angles,
                                     std::string tag = "product_ring");

  int dimension() const { return dimension_; }
  std::size_t size() const {
    return coords_.size() / static_cast<std::size_t>(dimension_);
  }
  std::span<const Cpx> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dimension_),
            static_cast<std::size_t>(dimension_)};
  }
  const std::string& tag() const { return tag_; }

 private:
  int dimension_;
  std::vector<Cpx> coords_;
  std::string tag_;
};

// log S_n(z,z) = log sum_nu |p_nu(z)|^2, log-sum-exp over the basis values.
// Always finite from below: the constant polynomial contributes.
double log_bergman_diag(const OrthonormalBasis& basis, std::span<const Cpx> z);
double log_bergman_diag(const BasisLogEval& values);

// (1/2n) log S_n(z,z), the Bergman estimate of the extremal function.
double extremal_estimate(const OrthonormalBasis& basis, std::span<const Cpx> z);

enum class ExtremalModel { Circle, Torus, Weyl };

ExtremalModel extremal_model_from_string(const std::string& name);
std::string to_string(ExtremalModel model);

// Closed-form targets: circle -> log+|z|; torus -> max_j log+|z_j|;
// weyl -> |z|^2/2 inside the unit disk, log|z| + 1/2 outside (continuous
// across |z| = 1).
double oracle_extremal(ExtremalModel model, std::span<const Cpx> z);

struct GridError {
  double sup_error = 0.0;
  double mean_abs_error = 0.0;
};

using GridFunction = std::function<double(std::span<const Cpx>)>;

GridError grid_error(const GridFunction& estimate, const GridFunction& oracle,
                     const EvaluationGrid& grid);

// Per-point CSV: coordinates, estimate, oracle, abs_error.
void write_grid_csv(const EvaluationGrid& grid, std::span<const double> estimates,
                    std::span<const double> oracles,
                    const std::filesystem::path& path);

// Convenience for univariate call sites.
inline double extremal_estimate(const OrthonormalBasis& basis, Cpx z) {
  return extremal_estimate(basis, std::span<const Cpx>(&z, 1));
}
inline double oracle_extremal(ExtremalModel model, Cpx z) {
  return oracle_extremal(model, std::span<const Cpx>(&z, 1));
}

}  // namespace plurirand
