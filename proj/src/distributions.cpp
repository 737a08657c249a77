#include "plurirand/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "plurirand/quadrature.hpp"

namespace plurirand {

namespace {

constexpr double kPi = std::numbers::pi;
// Normalizer for the heavy-tail density c/(1+|z|^4): integral over C of
// 1/(1+|z|^4) dm2 is pi^2/2.
const double kHeavyTailC = 2.0 / (kPi * kPi);
// Normalizer for the failing Cauchy-type density c/(1+|z|^3): integral over C
// of 1/(1+|z|^3) dm2 is 2*pi * 2*pi/(3*sqrt(3)).
const double kCauchyLikeC = 3.0 * std::sqrt(3.0) / (4.0 * kPi * kPi);

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

std::mt19937_64 engine_for(std::uint64_t master_seed, std::uint64_t stream) {
  return std::mt19937_64(mix64(master_seed ^ mix64(stream)));
}

CoefficientDistribution::CoefficientDistribution(Kind kind, double param, double T,
                                                 std::string key)
    : kind_(kind), param_(param), T_(T), key_(std::move(key)) {
  certification_ = plurirand::certify(*this);
}

CoefficientDistribution CoefficientDistribution::complex_gaussian() {
  return CoefficientDistribution(Kind::ComplexGaussian, 0.0, 1.0, "complex_gaussian");
}

CoefficientDistribution CoefficientDistribution::real_gaussian() {
  return CoefficientDistribution(Kind::RealGaussian, 0.0, 1.0, "real_gaussian");
}

CoefficientDistribution CoefficientDistribution::uniform_disk(double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("uniform_disk: radius must be positive");
  }
  // Density bound 1/(pi r^2); the worst R^2 * tail over R >= 1 is r^2/4,
  // attained at R = r/sqrt(2) when r > sqrt(2).
  const double T = std::max(1.0 / (kPi * radius * radius), radius * radius / 4.0);
  return CoefficientDistribution(Kind::UniformDisk, radius, T,
                                 "uniform_disk:" + format_double(radius));
}

CoefficientDistribution CoefficientDistribution::heavy_tail() {
  return CoefficientDistribution(Kind::HeavyTail, 0.0, 1.0, "heavy_tail");
}

CoefficientDistribution CoefficientDistribution::cauchy_like() {
  return CoefficientDistribution(Kind::CauchyLike, 0.0, 1.0, "cauchy_like");
}

CoefficientDistribution CoefficientDistribution::from_key(const std::string& key) {
  if (key == "complex_gaussian") return complex_gaussian();
  if (key == "real_gaussian") return real_gaussian();
  if (key == "heavy_tail") return heavy_tail();
  if (key.rfind("uniform_disk", 0) == 0) {
    double radius = 1.0;
    const auto colon = key.find(':');
    if (colon != std::string::npos) radius = std::stod(key.substr(colon + 1));
    return uniform_disk(radius);
  }
  throw std::invalid_argument("unknown distribution key '" + key + "'");
}

double CoefficientDistribution::density(double r) const {
  switch (kind_) {
    case Kind::ComplexGaussian:
      return std::exp(-r * r) / kPi;
    case Kind::RealGaussian:
      return std::exp(-r * r) / std::sqrt(kPi);
    case Kind::UniformDisk:
      return std::abs(r) <= param_ ? 1.0 / (kPi * param_ * param_) : 0.0;
    case Kind::HeavyTail:
      return kHeavyTailC / (1.0 + r * r * r * r);
    case Kind::CauchyLike:
      return kCauchyLikeC / (1.0 + std::abs(r * r * r));
  }
  throw std::logic_error("density: unreachable");
}

double CoefficientDistribution::tail_mass_numeric(double R) const {
  // Substitution r = 1/t turns the infinite tail into a finite integral:
  // complex: int_R^inf 2 pi r f(r) dr = int_0^{1/R} 2 pi f(1/t)/t^3 dt
  // real:    2 int_R^inf f(x) dx      = int_0^{1/R} 2 f(1/t)/t^2 dt
  const QuadratureRule rule = gauss_legendre(400, 0.0, 1.0 / R);
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const double r = 1.0 / t;
    double g;
    if (real_valued()) {
      g = 2.0 * density(r) / (t * t);
    } else {
      g = 2.0 * kPi * density(r) * r / (t * t);
    }
    total += rule.weights[i] * g;
  }
  return total;
}

namespace {

// Marsaglia polar: uniform point in the unit disk minus the origin.
inline void disk_point(std::mt19937_64& engine, double& x, double& y, double& s) {
  do {
    x = 2.0 * uniform01(engine) - 1.0;
    y = 2.0 * uniform01(engine) - 1.0;
    s = x * x + y * y;
  } while (s >= 1.0 || s == 0.0);
}

}  // namespace

Cpx CoefficientDistribution::sample(std::mt19937_64& engine) const {
  if (!certified()) {
    throw std::logic_error("CoefficientDistribution '" + key_ +
                           "' is not certified and cannot produce samples");
  }
  switch (kind_) {
    case Kind::ComplexGaussian: {
      // Components N(0, 1/2), so |z|^2 is unit exponential.
      double x, y, s;
      disk_point(engine, x, y, s);
      const double f = std::sqrt(-std::log(s) / s);
      return Cpx(x * f, y * f);
    }
    case Kind::RealGaussian: {
      double x, y, s;
      disk_point(engine, x, y, s);
      return Cpx(x * std::sqrt(-std::log(s) / s), 0.0);
    }
    case Kind::UniformDisk: {
      double x, y, s;
      disk_point(engine, x, y, s);
      // (x, y)/sqrt(s) is a uniform phase; rescale to radius r sqrt(u).
      const double r = param_ * std::sqrt(uniform01(engine) / s);
      return Cpx(x * r, y * r);
    }
    case Kind::HeavyTail: {
      // radial CDF (2/pi) atan(r^2); inverse r = sqrt(tan(pi u / 2)).
      double x, y, s;
      disk_point(engine, x, y, s);
      const double r = std::sqrt(std::tan(0.5 * kPi * uniform01(engine)) / s);
      return Cpx(x * r, y * r);
    }
    case Kind::CauchyLike:
      break;  // never certified
  }
  throw std::logic_error("sample: unreachable");
}

void CoefficientDistribution::sample_into(std::span<Cpx> out,
                                          std::mt19937_64& engine) const {
  for (Cpx& v : out) v = sample(engine);
}

CertificationResult certify(const CoefficientDistribution& dist) {
  CertificationResult result;
  const double T = dist.T();

  // Density bound on a fine radial grid out to radius 64.
  double sup_density = 0.0;
  const int grid_points = 1 << 16;
  for (int i = 0; i <= grid_points; ++i) {
    const double r = 64.0 * i / grid_points;
    sup_density = std::max(sup_density, dist.density(r));
  }
  result.density_ok = sup_density <= T * (1.0 + 1e-12);
  if (!result.density_ok) {
    result.violation = "density bound violated: sup |phi| = " +
                       format_double(sup_density) + " > T = " + format_double(T);
  }

  // Tail bound at the declared radii.
  double worst_scaled_tail = 0.0;
  result.tail_ok = true;
  for (const double R : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double tail = dist.tail_mass_numeric(R);
    worst_scaled_tail = std::max(worst_scaled_tail, tail * R * R);
    if (tail > T / (R * R) + 1e-12 && result.tail_ok) {
      result.tail_ok = false;
      if (!result.violation.empty()) result.violation += "; ";
      result.violation += "tail bound violated at R = " + format_double(R) +
                          ": mass " + format_double(tail) + " > T/R^2 = " +
                          format_double(T / (R * R));
    }
  }
  result.measured_T = std::max(sup_density, worst_scaled_tail);
  return result;
}

Eigen::VectorXcd sample_coefficients(const CoefficientDistribution& dist,
                                     std::size_t count, std::uint64_t seed,
                                     std::uint64_t stream) {
  std::mt19937_64 engine = engine_for(seed, stream);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(count));
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = dist.sample(engine);
  return out;
}

}  // namespace plurirand
