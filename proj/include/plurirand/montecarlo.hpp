#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "plurirand/extremal.hpp"
#include "plurirand/random_poly.hpp"
#include "plurirand/zeros.hpp"

namespace plurirand {

// Per-trial rows plus aggregates and declared-tolerance checks. Aggregates
// are always recomputable from the rows; pass/fail is a pure function of the
// stored data.
struct TrialReport {
  std::string experiment_id;
  std::uint64_t master_seed = 0;
  std::vector<std::string> stat_names;
  std::vector<std::vector<double>> rows;  // rows[trial][stat]
  std::vector<double> mean;
  std::vector<double> stderr_of_mean;  // sample stdev / sqrt(trials)

  struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass_if_below = true;
    bool passed = false;
  };
  std::vector<Check> checks;

  std::size_t trials() const { return rows.size(); }
  bool passed() const;
  void add_check(std::string name, double value, double threshold, bool pass_if_below);
  void recompute_aggregates();

  // trial,<stat names> rows at 17 significant digits.
  void write_rows_csv(const std::filesystem::path& path) const;
  // Aggregates and checks; the only place a wall-clock stamp may appear.
  void write_summary(const std::filesystem::path& path, bool timestamp = true) const;
  static TrialReport read_rows_csv(const std::filesystem::path& path);
};

// --- Finite-n probability inequalities -----------------------------------

// P(|<a, w>| <= 1/n^2) for unit w versus the pi T / n^3 bound.
struct SmallBallResult {
  double empirical = 0.0;
  double bound = 0.0;     // pi T / n^3
  double margin3 = 0.0;   // 3 sigma Monte Carlo margin on the proportion
  TrialReport report;
};
SmallBallResult small_ball_probability(const CoefficientDistribution& dist, int n,
                                       const Eigen::VectorXcd& w, std::size_t trials,
                                       std::uint64_t seed);

// P(||a|| >= n^2) over C^{m_n} versus T/n^2, with the generalized
// T (m_n/n^k)^2 bounds reported for k = 2, 3.
struct NormTailResult {
  double empirical = 0.0;
  double lemma_bound = 0.0;  // T / n^2
  double general_bound_k2 = 0.0;
  double general_bound_k3 = 0.0;
  double margin3 = 0.0;
  TrialReport report;
};
NormTailResult norm_tail_probability(const CoefficientDistribution& dist,
                                     std::size_t m_n, int n, std::size_t trials,
                                     std::uint64_t seed);

// --- Expected log of a projected coefficient ------------------------------

// Monte Carlo mean of log|<a, u>| for each unit vector, clamped at -690 with
// the clamp count tracked. All vectors share draws, so cross-vector
// differences carry a paired standard error (stored per trial).
struct MeanEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::size_t clamped = 0;
  bool clamp_warning = false;  // clamped > 1% of trials
};
struct InEstimateResult {
  std::vector<MeanEstimate> per_vector;
  TrialReport report;
};
InEstimateResult I_n_estimate(const CoefficientDistribution& dist,
                              const std::vector<Eigen::VectorXcd>& unit_vectors,
                              std::size_t trials, std::uint64_t seed);

// --- Zero distribution statistics -----------------------------------------

struct ZeroMeasureStats {
  std::vector<double> radii;
  std::vector<double> mean_radial_cdf;
  std::vector<double> stderr_radial_cdf;
  int sectors = 0;
  std::vector<double> mean_sector_counts;
  double mean_annulus = 0.0;
  double stderr_annulus = 0.0;
  int degenerate_trials = 0;
  int total_deflated = 0;
  std::vector<EmpiricalZeroMeasure> per_trial_zeros;
  TrialReport report;
};

// Averages radial/angular statistics of the normalized zero measures of
// random polynomials over the basis; zero_scale rescales each zero set first
// (1 for bases that already embed the scaling).
ZeroMeasureStats expected_zero_measure(std::shared_ptr<const OrthonormalBasis> basis,
                                       const CoefficientDistribution& dist,
                                       std::size_t trials, std::uint64_t seed,
                                       const std::vector<double>& radii, int sectors,
                                       double annulus_lo, double annulus_hi,
                                       double zero_scale = 1.0,
                                       bool keep_zeros = false);

// --- Convergence of (1/n) log |H_n| and (1/n) log ||F_n|| ------------------

struct ConvergenceResult {
  std::vector<int> degrees;
  std::vector<double> median_error;     // grid mean-abs error, median over trials
  std::vector<double> mean_error;
  double fraction_below_tol_at_largest = 0.0;
  double fraction_improved_pairwise = 0.0;  // largest vs smallest degree, paired
  TrialReport report;
};

// model supplies both the closed-form basis family and the oracle; k = 1
// gives scalar polynomials, k > 1 polynomial maps (torus model, m = 2).
ConvergenceResult convergence_experiment(ExtremalModel model, int dimension, int k,
                                         const CoefficientDistribution& dist,
                                         const std::vector<int>& degrees,
                                         const EvaluationGrid& grid, std::size_t trials,
                                         std::uint64_t seed, double tolerance);

// --- Deterministic kernel sandwich ----------------------------------------

// |extremal_estimate - oracle| <= (log(C m_n) + 2 n log(1+eps)) / (2n) on the
// grid; the scalar consequence of the two-sided kernel bounds.
struct SandwichResult {
  double bound = 0.0;
  double max_abs_error = 0.0;
  bool holds_everywhere = false;
  std::size_t worst_point = 0;
};
SandwichResult bergman_sandwich_check(const OrthonormalBasis& basis,
                                      ExtremalModel model, const EvaluationGrid& grid,
                                      double C, double eps);

// L2 mass of the degree-n Weyl basis outside |z| <= radius, the quadrature
// surrogate for exponential mass localization. Returns the max over basis
// elements.
double weyl_mass_outside(int degree, double radius);

}  // namespace plurirand
