#include "plurirand/polyeval.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace plurirand {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double log_sum_exp(std::span<const double> values) {
  double max = kNegInf;
  for (double v : values) {
    if (v > max) max = v;
  }
  if (max == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double v : values) {
    if (v != kNegInf) sum += std::exp(v - max);
  }
  return max + std::log(sum);
}

double log_abs_complex_sum(std::span<const double> log_mag,
                           std::span<const Cpx> phase) {
  double max = kNegInf;
  for (double v : log_mag) {
    if (v > max) max = v;
  }
  if (max == kNegInf) return kNegInf;
  Cpx sum = 0.0;
  for (std::size_t i = 0; i < log_mag.size(); ++i) {
    if (log_mag[i] != kNegInf) sum += std::exp(log_mag[i] - max) * phase[i];
  }
  const double mag = std::abs(sum);
  if (mag == 0.0) return kNegInf;
  return max + std::log(mag);
}

Eigen::VectorXcd eval_monomials(std::span<const Cpx> z,
                                const MultiIndexOrder& order) {
  if (static_cast<int>(z.size()) != order.dimension()) {
    throw std::invalid_argument("eval_monomials: point dimension mismatch");
  }
  Eigen::VectorXcd values(static_cast<Eigen::Index>(order.size()));
  values[0] = 1.0;
  for (std::size_t i = 1; i < order.size(); ++i) {
    values[static_cast<Eigen::Index>(i)] =
        values[static_cast<Eigen::Index>(order.parent(i))] *
        z[static_cast<std::size_t>(order.parent_variable(i))];
  }
  return values;
}

MonomialLogEval eval_monomials_log(std::span<const Cpx> z,
                                   const MultiIndexOrder& order) {
  if (static_cast<int>(z.size()) != order.dimension()) {
    throw std::invalid_argument("eval_monomials_log: point dimension mismatch");
  }
  const int m = order.dimension();
  std::vector<double> coord_log(static_cast<std::size_t>(m));
  std::vector<Cpx> coord_phase(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double a = std::abs(z[static_cast<std::size_t>(j)]);
    if (a == 0.0) {
      coord_log[static_cast<std::size_t>(j)] = kNegInf;
      coord_phase[static_cast<std::size_t>(j)] = 1.0;
    } else {
      coord_log[static_cast<std::size_t>(j)] = std::log(a);
      coord_phase[static_cast<std::size_t>(j)] = z[static_cast<std::size_t>(j)] / a;
    }
  }

  MonomialLogEval out;
  out.log_mag.resize(static_cast<Eigen::Index>(order.size()));
  out.phase.resize(static_cast<Eigen::Index>(order.size()));
  out.log_mag[0] = 0.0;
  out.phase[0] = 1.0;
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto p = static_cast<Eigen::Index>(order.parent(i));
    const auto j = static_cast<std::size_t>(order.parent_variable(i));
    out.log_mag[static_cast<Eigen::Index>(i)] = out.log_mag[p] + coord_log[j];
    out.phase[static_cast<Eigen::Index>(i)] = out.phase[p] * coord_phase[j];
  }
  return out;
}

double log_abs_eval(const Eigen::VectorXcd& coeffs, const MultiIndexOrder& order,
                    std::span<const Cpx> z) {
  if (coeffs.size() != static_cast<Eigen::Index>(order.size())) {
    throw std::invalid_argument(
        "log_abs_eval: coefficient count does not match the index order");
  }
  const MonomialLogEval mono = eval_monomials_log(z, order);

  double max = kNegInf;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    const double a = std::abs(coeffs[i]);
    if (a == 0.0) continue;
    const double lm = std::log(a) + mono.log_mag[i];
    if (lm > max) max = lm;
  }
  if (max == kNegInf) return kNegInf;

  Cpx sum = 0.0;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    const double a = std::abs(coeffs[i]);
    if (a == 0.0) continue;
    const double lm = std::log(a) + mono.log_mag[i];
    if (lm == kNegInf) continue;
    sum += std::exp(lm - max) * (coeffs[i] / a) * mono.phase[i];
  }
  const double mag = std::abs(sum);
  if (mag == 0.0) return kNegInf;
  return max + std::log(mag);
}

}  // namespace plurirand
