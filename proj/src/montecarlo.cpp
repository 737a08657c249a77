#include "plurirand/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "plurirand/parallel.hpp"
#include "plurirand/quadrature.hpp"

namespace plurirand {

namespace {

constexpr double kLogClamp = -690.0;  // just inside the smallest normal double

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double median_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

// --- parallel_for ----------------------------------------------------------

std::size_t default_worker_count() {
  if (const char* env = std::getenv("PLURIRAND_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  std::size_t workers) {
  if (workers == 0) workers = default_worker_count();
  if (count == 0) return;
  if (workers <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  workers = std::min(workers, count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// --- TrialReport -----------------------------------------------------------

bool TrialReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

void TrialReport::add_check(std::string name, double value, double threshold,
                            bool pass_if_below) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.threshold = threshold;
  c.pass_if_below = pass_if_below;
  c.passed = pass_if_below ? (value <= threshold) : (value >= threshold);
  checks.push_back(std::move(c));
}

void TrialReport::recompute_aggregates() {
  const std::size_t cols = stat_names.size();
  mean.assign(cols, 0.0);
  stderr_of_mean.assign(cols, 0.0);
  const std::size_t n = rows.size();
  if (n == 0) return;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < cols; ++c) mean[c] += row[c];
  }
  for (std::size_t c = 0; c < cols; ++c) mean[c] /= static_cast<double>(n);
  if (n < 2) return;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double d = row[c] - mean[c];
      stderr_of_mean[c] += d * d;
    }
  }
  for (std::size_t c = 0; c < cols; ++c) {
    stderr_of_mean[c] =
        std::sqrt(stderr_of_mean[c] / static_cast<double>(n - 1)) /
        std::sqrt(static_cast<double>(n));
  }
}

void TrialReport::write_rows_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("TrialReport: cannot open " + path.string());
  out << "trial";
  for (const auto& name : stat_names) out << "," << name;
  out << "\n";
  for (std::size_t t = 0; t < rows.size(); ++t) {
    out << t;
    for (double v : rows[t]) out << "," << format_double(v);
    out << "\n";
  }
}

void TrialReport::write_summary(const std::filesystem::path& path,
                                bool timestamp) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("TrialReport: cannot open " + path.string());
  out << "experiment: " << experiment_id << "\n";
  out << "master_seed: " << master_seed << "\n";
  out << "trials: " << rows.size() << "\n";
  for (std::size_t c = 0; c < stat_names.size(); ++c) {
    out << "stat " << stat_names[c] << ": mean " << format_double(mean[c])
        << " stderr " << format_double(stderr_of_mean[c]) << "\n";
  }
  for (const auto& c : checks) {
    out << "check " << c.name << ": value " << format_double(c.value)
        << (c.pass_if_below ? " <= " : " >= ") << format_double(c.threshold) << " -> "
        << (c.passed ? "PASS" : "FAIL") << "\n";
  }
  out << "result: " << (passed() ? "PASS" : "FAIL") << "\n";
  if (timestamp) {
    const std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%d %H:%M:%S", std::gmtime(&now));
    out << "generated: " << buf << " UTC\n";
  }
}

TrialReport TrialReport::read_rows_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("TrialReport: cannot open " + path.string());
  TrialReport report;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("TrialReport: empty file " + path.string());
  }
  {
    std::stringstream ss(line);
    std::string field;
    bool first = true;
    while (std::getline(ss, field, ',')) {
      if (first) {
        first = false;
        continue;  // "trial"
      }
      report.stat_names.push_back(field);
    }
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<double> row;
    bool first = true;
    while (std::getline(ss, field, ',')) {
      if (first) {
        first = false;
        continue;
      }
      row.push_back(std::stod(field));
    }
    if (row.size() != report.stat_names.size()) {
      throw std::runtime_error("TrialReport: ragged row in " + path.string());
    }
    report.rows.push_back(std::move(row));
  }
  report.recompute_aggregates();
  return report;
}

// --- small ball ------------------------------------------------------------

SmallBallResult small_ball_probability(const CoefficientDistribution& dist, int n,
                                       const Eigen::VectorXcd& w, std::size_t trials,
                                       std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("small_ball_probability: n must be >= 1");
  if (std::abs(w.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("small_ball_probability: w must be a unit vector");
  }
  if (!dist.certified()) {
    throw std::logic_error("small_ball_probability: distribution not certified");
  }
  const double radius = 1.0 / (static_cast<double>(n) * n);

  std::vector<double> hits(trials);
  parallel_for(trials, [&](std::size_t t) {
    std::mt19937_64 engine = engine_for(seed, t);
    Cpx dot = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      dot += dist.sample(engine) * std::conj(w[i]);
    }
    hits[t] = std::abs(dot) <= radius ? 1.0 : 0.0;
  });

  SmallBallResult result;
  result.report.experiment_id = "small_ball_n" + std::to_string(n);
  result.report.master_seed = seed;
  result.report.stat_names = {"hit"};
  result.report.rows.reserve(trials);
  for (double h : hits) result.report.rows.push_back({h});
  result.report.recompute_aggregates();

  result.empirical = result.report.mean[0];
  result.bound = std::numbers::pi * dist.T() / std::pow(static_cast<double>(n), 3);
  result.margin3 = 3.0 * std::sqrt(result.empirical * (1.0 - result.empirical) /
                                   static_cast<double>(trials));
  result.report.add_check("empirical <= pi T/n^3 + 3sigma", result.empirical,
                          result.bound + result.margin3, true);
  return result;
}

// --- norm tail -------------------------------------------------------------

NormTailResult norm_tail_probability(const CoefficientDistribution& dist,
                                     std::size_t m_n, int n, std::size_t trials,
                                     std::uint64_t seed) {
  if (n < 1 || m_n < 1) {
    throw std::invalid_argument("norm_tail_probability: need n >= 1, m_n >= 1");
  }
  if (!dist.certified()) {
    throw std::logic_error("norm_tail_probability: distribution not certified");
  }
  const double threshold = static_cast<double>(n) * n;
  const double threshold_sq = threshold * threshold;

  std::vector<double> hits(trials);
  parallel_for(trials, [&](std::size_t t) {
    std::mt19937_64 engine = engine_for(seed, t);
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < m_n; ++i) {
      norm_sq += std::norm(dist.sample(engine));
    }
    hits[t] = norm_sq >= threshold_sq ? 1.0 : 0.0;
  });

  NormTailResult result;
  result.report.experiment_id = "norm_tail_m" + std::to_string(m_n) + "_n" +
                                std::to_string(n);
  result.report.master_seed = seed;
  result.report.stat_names = {"hit"};
  result.report.rows.reserve(trials);
  for (double h : hits) result.report.rows.push_back({h});
  result.report.recompute_aggregates();

  const double nn = static_cast<double>(n);
  const double mn = static_cast<double>(m_n);
  result.empirical = result.report.mean[0];
  result.lemma_bound = dist.T() / (nn * nn);
  result.general_bound_k2 = dist.T() * std::pow(mn / (nn * nn), 2);
  result.general_bound_k3 = dist.T() * std::pow(mn / (nn * nn * nn), 2);
  result.margin3 = 3.0 * std::sqrt(result.empirical * (1.0 - result.empirical) /
                                   static_cast<double>(trials));
  result.report.add_check("empirical <= T/n^2 + 3sigma", result.empirical,
                          result.lemma_bound + result.margin3, true);
  return result;
}

// --- I_n(u) ----------------------------------------------------------------

InEstimateResult I_n_estimate(const CoefficientDistribution& dist,
                              const std::vector<Eigen::VectorXcd>& unit_vectors,
                              std::size_t trials, std::uint64_t seed) {
  if (unit_vectors.empty()) {
    throw std::invalid_argument("I_n_estimate: need at least one vector");
  }
  const Eigen::Index dim = unit_vectors.front().size();
  for (const auto& u : unit_vectors) {
    if (u.size() != dim) {
      throw std::invalid_argument("I_n_estimate: vectors must share a dimension");
    }
    if (std::abs(u.norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("I_n_estimate: vectors must be unit");
    }
  }
  if (!dist.certified()) {
    throw std::logic_error("I_n_estimate: distribution not certified");
  }
  const std::size_t vecs = unit_vectors.size();

  // Dot products only touch the nonzero support of each u.
  std::vector<std::vector<Eigen::Index>> support(vecs);
  for (std::size_t v = 0; v < vecs; ++v) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (unit_vectors[v][i] != Cpx(0.0)) support[v].push_back(i);
    }
  }

  std::vector<std::vector<double>> rows(trials, std::vector<double>(vecs, 0.0));
  std::vector<std::size_t> clamp_counts(vecs, 0);
  std::mutex clamp_mutex;
  parallel_for(trials, [&](std::size_t t) {
    std::mt19937_64 engine = engine_for(seed, t);
    std::vector<Cpx> a(static_cast<std::size_t>(dim));
    dist.sample_into(a, engine);
    std::vector<std::size_t> local_clamped;
    for (std::size_t v = 0; v < vecs; ++v) {
      const Eigen::VectorXcd& u = unit_vectors[v];
      Cpx dot = 0.0;
      for (const Eigen::Index i : support[v]) {
        dot += a[static_cast<std::size_t>(i)] * std::conj(u[i]);
      }
      const double mag = std::abs(dot);
      double g = mag > 0.0 ? std::log(mag) : kLogClamp;
      if (g < kLogClamp) {
        g = kLogClamp;
        local_clamped.push_back(v);
      }
      rows[t][v] = g;
    }
    if (!local_clamped.empty()) {
      std::lock_guard<std::mutex> lock(clamp_mutex);
      for (std::size_t v : local_clamped) ++clamp_counts[v];
    }
  });

  InEstimateResult result;
  result.report.experiment_id = "I_n_dim" + std::to_string(dim);
  result.report.master_seed = seed;
  for (std::size_t v = 0; v < vecs; ++v) {
    result.report.stat_names.push_back("log_abs_dot_u" + std::to_string(v));
  }
  result.report.rows = std::move(rows);
  result.report.recompute_aggregates();

  for (std::size_t v = 0; v < vecs; ++v) {
    MeanEstimate est;
    est.mean = result.report.mean[v];
    est.stderr_of_mean = result.report.stderr_of_mean[v];
    est.clamped = clamp_counts[v];
    est.clamp_warning =
        static_cast<double>(est.clamped) > 0.01 * static_cast<double>(trials);
    result.per_vector.push_back(est);
  }
  return result;
}

// --- expected zero measure ---------------------------------------------------

ZeroMeasureStats expected_zero_measure(std::shared_ptr<const OrthonormalBasis> basis,
                                       const CoefficientDistribution& dist,
                                       std::size_t trials, std::uint64_t seed,
                                       const std::vector<double>& radii, int sectors,
                                       double annulus_lo, double annulus_hi,
                                       double zero_scale, bool keep_zeros) {
  if (!basis || basis->dimension() != 1) {
    throw std::invalid_argument("expected_zero_measure: univariate basis required");
  }
  if (!dist.certified()) {
    throw std::logic_error("expected_zero_measure: distribution not certified");
  }
  if (sectors < 2) {
    throw std::invalid_argument("expected_zero_measure: sectors must be >= 2");
  }

  const std::size_t cols = radii.size() + static_cast<std::size_t>(sectors) + 2;
  std::vector<std::vector<double>> rows(trials);
  std::vector<EmpiricalZeroMeasure> zero_sets(keep_zeros ? trials : 0);
  std::vector<int> degenerate(trials, 0);

  parallel_for(trials, [&](std::size_t t) {
    RandomPolynomial poly = make_random_poly(basis, dist, seed, t);
    std::vector<double> row(cols, 0.0);
    try {
      EmpiricalZeroMeasure zeros =
          scale_zeros(roots_1d(onb_to_monomial(poly)), zero_scale);
      std::size_t c = 0;
      for (double r : radii) row[c++] = radial_cdf(zeros, r);
      const std::vector<int> counts = angular_counts(zeros, sectors);
      for (int k = 0; k < sectors; ++k) {
        row[c++] = static_cast<double>(counts[static_cast<std::size_t>(k)]);
      }
      row[c++] = annulus_fraction(zeros, annulus_lo, annulus_hi);
      row[c++] = static_cast<double>(zeros.deflated_count);
      if (keep_zeros) zero_sets[t] = std::move(zeros);
    } catch (const std::runtime_error&) {
      degenerate[t] = 1;
    }
    rows[t] = std::move(row);
  });

  ZeroMeasureStats stats;
  stats.radii = radii;
  stats.sectors = sectors;
  stats.report.experiment_id = "zero_measure_" + basis->source();
  stats.report.master_seed = seed;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    stats.report.stat_names.push_back("radial_cdf_r" + format_double(radii[i]));
  }
  for (int k = 0; k < sectors; ++k) {
    stats.report.stat_names.push_back("sector_" + std::to_string(k));
  }
  stats.report.stat_names.push_back("annulus_fraction");
  stats.report.stat_names.push_back("deflated");

  // Degenerate trials are excluded from the rows but counted.
  for (std::size_t t = 0; t < trials; ++t) {
    if (!degenerate[t]) stats.report.rows.push_back(std::move(rows[t]));
    stats.degenerate_trials += degenerate[t];
  }
  stats.report.recompute_aggregates();

  std::size_t c = 0;
  for (std::size_t i = 0; i < radii.size(); ++i, ++c) {
    stats.mean_radial_cdf.push_back(stats.report.mean[c]);
    stats.stderr_radial_cdf.push_back(stats.report.stderr_of_mean[c]);
  }
  for (int k = 0; k < sectors; ++k, ++c) {
    stats.mean_sector_counts.push_back(stats.report.mean[c]);
  }
  stats.mean_annulus = stats.report.mean[c];
  stats.stderr_annulus = stats.report.stderr_of_mean[c];
  ++c;
  stats.total_deflated = static_cast<int>(
      stats.report.mean[c] * static_cast<double>(stats.report.rows.size()) + 0.5);
  if (keep_zeros) stats.per_trial_zeros = std::move(zero_sets);
  return stats;
}

// --- convergence -------------------------------------------------------------

namespace {

std::shared_ptr<const OrthonormalBasis> model_basis(ExtremalModel model, int dimension,
                                                    int degree) {
  switch (model) {
    case ExtremalModel::Circle:
      return std::make_shared<OrthonormalBasis>(closed_form_circle(degree));
    case ExtremalModel::Torus:
      return std::make_shared<OrthonormalBasis>(closed_form_torus(dimension, degree));
    case ExtremalModel::Weyl:
      return std::make_shared<OrthonormalBasis>(closed_form_weyl(degree));
  }
  throw std::logic_error("model_basis: unreachable");
}

}  // namespace

ConvergenceResult convergence_experiment(ExtremalModel model, int dimension, int k,
                                         const CoefficientDistribution& dist,
                                         const std::vector<int>& degrees,
                                         const EvaluationGrid& grid, std::size_t trials,
                                         std::uint64_t seed, double tolerance) {
  if (degrees.empty() || !std::is_sorted(degrees.begin(), degrees.end())) {
    throw std::invalid_argument("convergence_experiment: degrees must be increasing");
  }
  if (k < 1 || k > dimension) {
    throw std::invalid_argument("convergence_experiment: need 1 <= k <= m");
  }
  if (grid.dimension() != dimension) {
    throw std::invalid_argument("convergence_experiment: grid dimension mismatch");
  }
  if (!dist.certified()) {
    throw std::logic_error("convergence_experiment: distribution not certified");
  }

  std::vector<double> oracle_values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    oracle_values[i] = oracle_extremal(model, grid.point(i));
  }

  ConvergenceResult result;
  result.degrees = degrees;
  result.report.experiment_id = "convergence_" + to_string(model) + "_k" +
                                std::to_string(k);
  result.report.master_seed = seed;
  for (int n : degrees) {
    result.report.stat_names.push_back("grid_mean_abs_err_n" + std::to_string(n));
  }
  result.report.rows.assign(trials,
                            std::vector<double>(degrees.size(), 0.0));

  for (std::size_t d = 0; d < degrees.size(); ++d) {
    const int n = degrees[d];
    auto basis = model_basis(model, dimension, n);

    // Basis values per grid point are trial-independent; evaluate once.
    std::vector<BasisLogEval> basis_values(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
      basis_values[i] = eval_basis_log(*basis, grid.point(i));
    });

    parallel_for(trials, [&](std::size_t t) {
      // Streams partitioned per degree so every (degree, trial, component)
      // draw is independent.
      const std::uint64_t stream_base =
          (static_cast<std::uint64_t>(d) * trials + t) * static_cast<std::uint64_t>(k);
      double total = 0.0;
      if (k == 1) {
        RandomPolynomial poly = make_random_poly(basis, dist, seed, stream_base);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const double est = log_abs_H(poly.coefficients(), basis_values[i]) / n;
          total += std::abs(est - oracle_values[i]);
        }
      } else {
        RandomPolynomialMap map = make_random_map(basis, dist, k, seed, stream_base);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const double est = log_norm_F(map, basis_values[i]) / n;
          total += std::abs(est - oracle_values[i]);
        }
      }
      result.report.rows[t][d] = total / static_cast<double>(grid.size());
    });
  }
  result.report.recompute_aggregates();

  for (std::size_t d = 0; d < degrees.size(); ++d) {
    std::vector<double> column(trials);
    for (std::size_t t = 0; t < trials; ++t) column[t] = result.report.rows[t][d];
    result.median_error.push_back(median_of(column));
    result.mean_error.push_back(result.report.mean[d]);
  }

  std::size_t below = 0, improved = 0;
  const std::size_t last = degrees.size() - 1;
  for (std::size_t t = 0; t < trials; ++t) {
    if (result.report.rows[t][last] <= tolerance) ++below;
    if (result.report.rows[t][last] < result.report.rows[t][0]) ++improved;
  }
  result.fraction_below_tol_at_largest =
      static_cast<double>(below) / static_cast<double>(trials);
  result.fraction_improved_pairwise =
      degrees.size() > 1
          ? static_cast<double>(improved) / static_cast<double>(trials)
          : 1.0;
  return result;
}

// --- kernel sandwich ----------------------------------------------------------

SandwichResult bergman_sandwich_check(const OrthonormalBasis& basis,
                                      ExtremalModel model, const EvaluationGrid& grid,
                                      double C, double eps) {
  const double n = basis.degree();
  const double m_n = static_cast<double>(basis.size());
  SandwichResult result;
  result.bound =
      (std::log(C * m_n) + 2.0 * n * std::log1p(eps)) / (2.0 * n);
  result.holds_everywhere = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double err = std::abs(extremal_estimate(basis, grid.point(i)) -
                                oracle_extremal(model, grid.point(i)));
    if (err > result.max_abs_error) {
      result.max_abs_error = err;
      result.worst_point = i;
    }
  }
  result.holds_everywhere = result.max_abs_error <= result.bound;
  return result;
}

// --- Weyl mass localization ----------------------------------------------------

double weyl_mass_outside(int degree, double radius) {
  if (degree < 1) throw std::invalid_argument("weyl_mass_outside: degree >= 1");
  // mass_j = (n^{j+1}/j!) int_{radius}^{R_max} r^{2j+1} e^{-n r^2} 2 dr,
  // evaluated in the log domain against a wide Gauss-Legendre rule in s = r^2.
  const double n = degree;
  const double s_lo = radius * radius;
  const double s_hi = s_lo + 60.0 / n + 10.0;  // e^{-n s} support is exhausted
  const QuadratureRule rule = gauss_legendre(400, s_lo, s_hi);

  double worst = 0.0;
  for (int j = 0; j <= degree; ++j) {
    const double log_norm = (j + 1) * std::log(n) - std::lgamma(j + 1.0);
    double mass = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double s = rule.nodes[i];
      // integrand in s: s^j e^{-n s}; prefactor n^{j+1}/j!.
      const double log_term = log_norm + j * std::log(s) - n * s;
      mass += rule.weights[i] * std::exp(log_term);
    }
    worst = std::max(worst, mass);
  }
  return worst;
}

}  // namespace plurirand
