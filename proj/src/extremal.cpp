#include "plurirand/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <stdexcept>

namespace plurirand {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

EvaluationGrid::EvaluationGrid(int dimension, std::vector<Cpx> coords, std::string tag)
    : dimension_(dimension), coords_(std::move(coords)), tag_(std::move(tag)) {
  if (dimension_ < 1) throw std::invalid_argument("EvaluationGrid: dimension >= 1");
  if (coords_.empty() || coords_.size() % static_cast<std::size_t>(dimension_) != 0) {
    throw std::invalid_argument("EvaluationGrid: empty or ragged point list");
  }
}

EvaluationGrid EvaluationGrid::ring(std::span<const double> radii, int angles,
                                    std::string tag) {
  if (radii.empty() || angles < 1) {
    throw std::invalid_argument("EvaluationGrid::ring: need radii and angles >= 1");
  }
  std::vector<Cpx> coords;
  coords.reserve(radii.size() * static_cast<std::size_t>(angles));
  for (double r : radii) {
    for (int k = 0; k < angles; ++k) {
      const double theta = kTwoPi * k / angles;
      coords.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
  }
  return EvaluationGrid(1, std::move(coords), std::move(tag));
}

EvaluationGrid EvaluationGrid::product_ring(std::span<const double> radii, int angles,
                                            std::string tag) {
  const EvaluationGrid base = ring(radii, angles, "factor");
  std::vector<Cpx> coords;
  coords.reserve(base.size() * base.size() * 2);
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = 0; j < base.size(); ++j) {
      coords.push_back(base.point(i)[0]);
      coords.push_back(base.point(j)[0]);
    }
  }
  return EvaluationGrid(2, std::move(coords), std::move(tag));
}

double log_bergman_diag(const BasisLogEval& values) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  double max = neg_inf;
  for (Eigen::Index i = 0; i < values.log_mag.size(); ++i) {
    if (values.log_mag[i] > max) max = values.log_mag[i];
  }
  if (max == neg_inf) return neg_inf;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < values.log_mag.size(); ++i) {
    const double v = values.log_mag[i];
    if (v != neg_inf) sum += std::exp(2.0 * (v - max));
  }
  return 2.0 * max + std::log(sum);
}

double log_bergman_diag(const OrthonormalBasis& basis, std::span<const Cpx> z) {
  return log_bergman_diag(eval_basis_log(basis, z));
}

double extremal_estimate(const OrthonormalBasis& basis, std::span<const Cpx> z) {
  if (basis.degree() < 1) {
    throw std::invalid_argument("extremal_estimate: basis degree must be >= 1");
  }
  return log_bergman_diag(basis, z) / (2.0 * basis.degree());
}

ExtremalModel extremal_model_from_string(const std::string& name) {
  if (name == "circle") return ExtremalModel::Circle;
  if (name == "torus") return ExtremalModel::Torus;
  if (name == "weyl") return ExtremalModel::Weyl;
  throw std::invalid_argument("unknown extremal model '" + name + "'");
}

std::string to_string(ExtremalModel model) {
  switch (model) {
    case ExtremalModel::Circle: return "circle";
    case ExtremalModel::Torus: return "torus";
    case ExtremalModel::Weyl: return "weyl";
  }
  return "?";
}

double oracle_extremal(ExtremalModel model, std::span<const Cpx> z) {
  switch (model) {
    case ExtremalModel::Circle: {
      if (z.size() != 1) throw std::invalid_argument("circle oracle is univariate");
      return std::max(0.0, std::log(std::abs(z[0])));
    }
    case ExtremalModel::Torus: {
      double best = 0.0;
      for (const Cpx& zj : z) {
        best = std::max(best, std::log(std::abs(zj)));
      }
      return best;
    }
    case ExtremalModel::Weyl: {
      if (z.size() != 1) throw std::invalid_argument("weyl oracle is univariate");
      const double r = std::abs(z[0]);
      if (r <= 1.0) return 0.5 * r * r;
      return std::log(r) + 0.5;
    }
  }
  throw std::logic_error("oracle_extremal: unreachable");
}

GridError grid_error(const GridFunction& estimate, const GridFunction& oracle,
                     const EvaluationGrid& grid) {
  GridError err;
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto z = grid.point(i);
    const double d = std::abs(estimate(z) - oracle(z));
    err.sup_error = std::max(err.sup_error, d);
    total += d;
  }
  err.mean_abs_error = total / static_cast<double>(grid.size());
  return err;
}

void write_grid_csv(const EvaluationGrid& grid, std::span<const double> estimates,
                    std::span<const double> oracles,
                    const std::filesystem::path& path) {
  if (estimates.size() != grid.size() || oracles.size() != grid.size()) {
    throw std::invalid_argument("write_grid_csv: value lengths disagree with grid");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_grid_csv: cannot open " + path.string());
  const int m = grid.dimension();
  if (m == 1) {
    out << "re,im,estimate,oracle,abs_error\n";
  } else {
    for (int j = 1; j <= m; ++j) out << "re_" << j << ",im_" << j << ",";
    out << "estimate,oracle,abs_error\n";
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto z = grid.point(i);
    for (int j = 0; j < m; ++j) {
      out << format_double(z[static_cast<std::size_t>(j)].real()) << ","
          << format_double(z[static_cast<std::size_t>(j)].imag()) << ",";
    }
    out << format_double(estimates[i]) << "," << format_double(oracles[i]) << ","
        << format_double(std::abs(estimates[i] - oracles[i])) << "\n";
  }
}

}  // namespace plurirand
