#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <span>
#include <string>

#include "plurirand/polyeval.hpp"

namespace plurirand {

// Outcome of checking a coefficient density against the two standing
// hypotheses: boundedness |phi| <= T and tail mass <= T/R^2.
struct CertificationResult {
  bool density_ok = false;
  bool tail_ok = false;
  double measured_T = 0.0;  // smallest T the checks would accept
  std::string violation;    // empty iff ok()

  bool ok() const { return density_ok && tail_ok; }
};

// Coefficient law for random polynomial ensembles. Factories certify at
// construction; an object whose certification failed refuses to sample.
class CoefficientDistribution {
 public:
  enum class Kind { ComplexGaussian, RealGaussian, UniformDisk, HeavyTail, CauchyLike };

  // density (1/pi) e^{-|z|^2}; |z|^2 is unit-rate exponential.
  static CoefficientDistribution complex_gaussian();
  // density (1/sqrt(pi)) e^{-x^2} on the real axis.
  static CoefficientDistribution real_gaussian();
  // constant density on |z| <= radius.
  static CoefficientDistribution uniform_disk(double radius);
  // density (2/pi^2) / (1 + |z|^4): bounded, tail ~ (2/pi) / R^2, with heavy
  // log-moment tails.
  static CoefficientDistribution heavy_tail();
  // density ~ 1/(1+|z|^3): tail decays like 1/R, so certification fails.
  // Ships as the counterexample.
  static CoefficientDistribution cauchy_like();

  // Config keys: complex_gaussian | real_gaussian | uniform_disk:r | heavy_tail.
  static CoefficientDistribution from_key(const std::string& key);

  Kind kind() const { return kind_; }
  double T() const { return T_; }
  bool real_valued() const { return kind_ == Kind::RealGaussian; }
  const std::string& key() const { return key_; }
  const CertificationResult& certification() const { return certification_; }
  bool certified() const { return certification_.ok(); }

  // Radial density profile f(r) for complex kinds (2-D density at |z| = r),
  // or the 1-D density f(x) at x = r for real kinds.
  double density(double r) const;
  // Mass outside radius R by numeric radial integration.
  double tail_mass_numeric(double R) const;

  // One draw; real-valued kinds land on the real axis. Throws
  // std::logic_error for an uncertified distribution.
  Cpx sample(std::mt19937_64& engine) const;
  void sample_into(std::span<Cpx> out, std::mt19937_64& engine) const;

 private:
  CoefficientDistribution(Kind kind, double param, double T, std::string key);

  Kind kind_;
  double param_ = 0.0;  // radius for UniformDisk, unused otherwise
  double T_ = 0.0;
  std::string key_;
  CertificationResult certification_;
};

// Re-runs the density and tail checks for the distribution's declared T:
// density sup on a fine grid, tail mass at R in {1, 2, 4, 8, 16}.
CertificationResult certify(const CoefficientDistribution& dist);

// Deterministic per-trial engine from (master seed, stream index); mixing is
// splitmix64-style so neighboring streams are uncorrelated.
std::mt19937_64 engine_for(std::uint64_t master_seed, std::uint64_t stream);

// Uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& engine);

// count i.i.d. draws, fully determined by (seed, stream).
Eigen::VectorXcd sample_coefficients(const CoefficientDistribution& dist,
                                     std::size_t count, std::uint64_t seed,
                                     std::uint64_t stream);

}  // namespace plurirand
