#include "plurirand/runner.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>

#include "plurirand/montecarlo.hpp"
#include "plurirand/parallel.hpp"

namespace plurirand {

namespace {

using nlohmann::json;

const std::set<std::string> kSubcommands = {"extremal", "zeros",       "weyl",
                                            "mapping",  "expectation", "lemma-check"};
const std::set<std::string> kDistributionPrefixes = {"complex_gaussian", "real_gaussian",
                                                     "uniform_disk", "heavy_tail"};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool known_distribution_key(const std::string& key) {
  for (const auto& prefix : kDistributionPrefixes) {
    if (key == prefix || key.rfind(prefix + ":", 0) == 0) return true;
  }
  return false;
}

// Pulls typed fields out of the parsed config, collecting violations instead
// of throwing so validate() can report all problems at once.
class ConfigReader {
 public:
  ConfigReader(const json& j, std::vector<std::string>& issues)
      : j_(j), issues_(issues) {}

  bool has(const std::string& key) const { return j_.contains(key); }

  template <typename T>
  T require(const std::string& key, const char* what) {
    if (!j_.contains(key)) {
      issues_.push_back(std::string(what) + " required (field '" + key + "')");
      return T{};
    }
    return get<T>(key, T{});
  }

  template <typename T>
  T get(const std::string& key, T fallback) {
    if (!j_.contains(key)) return fallback;
    try {
      return j_.at(key).get<T>();
    } catch (const std::exception&) {
      issues_.push_back("field '" + key + "' has the wrong type");
      return fallback;
    }
  }

 private:
  const json& j_;
  std::vector<std::string>& issues_;
};

json load_config(const ExperimentConfig& config, std::vector<std::string>& issues) {
  std::ifstream in(config.config_path);
  if (!in) {
    issues.push_back("cannot open config file " + config.config_path.string());
    return json::object();
  }
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    issues.push_back(std::string("config parse error: ") + e.what());
    return json::object();
  }
}

std::optional<std::uint64_t> effective_seed(const ExperimentConfig& config,
                                            const json& j) {
  if (config.seed_override) return config.seed_override;
  if (j.contains("seed") && j.at("seed").is_number_unsigned()) {
    return j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("seed") && j.at("seed").is_number_integer()) {
    const auto v = j.at("seed").get<std::int64_t>();
    if (v >= 0) return static_cast<std::uint64_t>(v);
  }
  return std::nullopt;
}

// --- per-subcommand validation ---------------------------------------------

void validate_common(const ExperimentConfig& config, const json& j,
                     std::vector<std::string>& issues) {
  if (!effective_seed(config, j)) issues.push_back("seed required");
  if (j.contains("distribution")) {
    const std::string key = j.at("distribution").is_string()
                                ? j.at("distribution").get<std::string>()
                                : std::string{};
    if (!known_distribution_key(key)) {
      issues.push_back("unknown distribution key '" + key + "'");
    }
  }
}

std::vector<int> read_degrees(ConfigReader& reader, std::vector<std::string>& issues) {
  std::vector<int> degrees = reader.get<std::vector<int>>("degrees", {});
  if (degrees.empty() && reader.has("degree")) {
    degrees = {reader.get<int>("degree", 0)};
  }
  if (degrees.empty()) {
    issues.push_back("degree list required (field 'degrees' or 'degree')");
    return degrees;
  }
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 1) issues.push_back("degrees must be >= 1");
    if (i > 0 && degrees[i] <= degrees[i - 1]) {
      issues.push_back("degrees must be strictly increasing");
    }
  }
  return degrees;
}

void validate_extremal(const json& j, std::vector<std::string>& issues) {
  ConfigReader reader(j, issues);
  const std::string model = reader.require<std::string>("model", "model");
  if (!model.empty() && model != "circle" && model != "torus" && model != "weyl") {
    issues.push_back("unknown model '" + model + "'");
  }
  const std::vector<int> degrees = read_degrees(reader, issues);
  const std::string basis = reader.get<std::string>("basis", "closed_form");
  const bool general_set = basis != "closed_form";
  if (general_set && !degrees.empty() &&
      degrees.back() > kGeneralSetDegreeCap) {
    issues.push_back("degree cap " + std::to_string(kGeneralSetDegreeCap) +
                     " for general sets (requested " + std::to_string(degrees.back()) +
                     ")");
  }
  if (basis.rfind("file:", 0) == 0) {
    const std::string path = basis.substr(5);
    if (!std::filesystem::exists(path)) {
      issues.push_back("site file '" + path + "' does not exist");
    } else if (!degrees.empty()) {
      try {
        const WeightedSiteSet sites = sites_from_file(path);
        const auto need =
            20 * polynomial_space_dimension(sites.dimension(), degrees.back());
        if (sites.size() < need) {
          issues.push_back("site file '" + path + "' has " +
                           std::to_string(sites.size()) + " nodes; " +
                           std::to_string(need) +
                           " (20 x dim P_n) required for degree " +
                           std::to_string(degrees.back()));
        }
      } catch (const std::exception& e) {
        issues.push_back(e.what());
      }
    }
  } else if (basis != "closed_form" && basis != "quadrature") {
    issues.push_back("basis must be closed_form, quadrature, or file:<path>");
  }
}

void validate_trials(ConfigReader& reader, std::vector<std::string>& issues) {
  const int trials = reader.get<int>("trials", 0);
  if (trials < 1) issues.push_back("trials must be >= 1");
}

}  // namespace

std::vector<std::string> validate(const ExperimentConfig& config) {
  std::vector<std::string> issues;
  if (!kSubcommands.count(config.subcommand)) {
    issues.push_back("unknown subcommand '" + config.subcommand + "'");
    return issues;
  }
  const json j = load_config(config, issues);
  if (!issues.empty()) return issues;
  validate_common(config, j, issues);
  ConfigReader reader(j, issues);

  if (config.subcommand == "extremal") {
    validate_extremal(j, issues);
  } else if (config.subcommand == "zeros") {
    read_degrees(reader, issues);
    validate_trials(reader, issues);
    if (!j.contains("distribution")) issues.push_back("distribution required");
  } else if (config.subcommand == "weyl") {
    read_degrees(reader, issues);
    validate_trials(reader, issues);
  } else if (config.subcommand == "expectation") {
    validate_trials(reader, issues);
    if (!j.contains("distribution")) issues.push_back("distribution required");
    const std::vector<int> dims = reader.get<std::vector<int>>("dims", {});
    if (dims.empty()) issues.push_back("dims required (coefficient dimensions m_n)");
  } else if (config.subcommand == "lemma-check") {
    read_degrees(reader, issues);
    validate_trials(reader, issues);
    if (!j.contains("distribution")) issues.push_back("distribution required");
  } else if (config.subcommand == "mapping") {
    read_degrees(reader, issues);
    validate_trials(reader, issues);
    if (!j.contains("distribution")) issues.push_back("distribution required");
    const std::string model = reader.get<std::string>("model", "circle");
    const int m = reader.get<int>("dimension", model == "torus" ? 2 : 1);
    const int k = reader.get<int>("k", 1);
    if (k < 1 || k > m) issues.push_back("need 1 <= k <= dimension");
  }
  return issues;
}

namespace {

// --- artifact helpers --------------------------------------------------------

std::filesystem::path artifact_path(const ExperimentConfig& config,
                                    const std::string& id, std::uint64_t seed,
                                    const std::string& suffix) {
  std::string clean = id;
  for (char& c : clean) {
    if (c == ':' || c == '/' || c == ' ') c = '-';
  }
  return config.out_dir /
         (config.subcommand + "_" + clean + "_seed" + std::to_string(seed) + suffix);
}

int finish(const ExperimentConfig& config, const std::string& id, std::uint64_t seed,
           TrialReport& report, bool write_rows = true) {
  std::filesystem::create_directories(config.out_dir);
  if (write_rows) {
    report.write_rows_csv(artifact_path(config, id, seed, "_trials.csv"));
  }
  report.write_summary(artifact_path(config, id, seed, "_summary.txt"));
  for (const auto& check : report.checks) {
    std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << ": "
              << format_double(check.value) << (check.pass_if_below ? " <= " : " >= ")
              << format_double(check.threshold) << "\n";
  }
  return report.passed() ? kExitPass : kExitToleranceFail;
}

EvaluationGrid grid_from_config(const json& j, int dimension) {
  std::vector<double> radii = {0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0};
  int angles = dimension == 1 ? 64 : 8;
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    if (g.contains("radii")) radii = g.at("radii").get<std::vector<double>>();
    if (g.contains("angles")) angles = g.at("angles").get<int>();
  }
  if (dimension == 1) return EvaluationGrid::ring(radii, angles);
  if (dimension == 2) return EvaluationGrid::product_ring(radii, angles);
  throw std::invalid_argument("grids are provided for dimensions 1 and 2 only");
}

// --- subcommand bodies ---------------------------------------------------------

int run_extremal(const ExperimentConfig& config, const json& j, std::uint64_t seed) {
  std::vector<std::string> sink;
  ConfigReader reader(j, sink);
  const std::string model_name = reader.get<std::string>("model", "circle");
  const ExtremalModel model = extremal_model_from_string(model_name);
  const std::vector<int> degrees = read_degrees(reader, sink);
  const std::string basis_kind = reader.get<std::string>("basis", "closed_form");
  const int dimension =
      model == ExtremalModel::Torus ? reader.get<int>("dimension", 2) : 1;
  const EvaluationGrid grid = grid_from_config(j, dimension);

  TrialReport report;
  report.experiment_id = config.subcommand + "_" + model_name;
  report.master_seed = seed;

  std::vector<double> sup_errors;
  std::filesystem::create_directories(config.out_dir);
  for (int n : degrees) {
    std::shared_ptr<const OrthonormalBasis> basis;
    if (basis_kind == "closed_form") {
      switch (model) {
        case ExtremalModel::Circle:
          basis = std::make_shared<OrthonormalBasis>(closed_form_circle(n));
          break;
        case ExtremalModel::Torus:
          basis = std::make_shared<OrthonormalBasis>(closed_form_torus(dimension, n));
          break;
        case ExtremalModel::Weyl:
          basis = std::make_shared<OrthonormalBasis>(closed_form_weyl(n));
          break;
      }
    } else if (basis_kind == "quadrature") {
      switch (model) {
        case ExtremalModel::Circle: {
          const int N = reader.get<int>("quadrature_sites", 2 * n + 1);
          basis = std::make_shared<OrthonormalBasis>(build_basis_qr(circle_sites(N), n));
          break;
        }
        case ExtremalModel::Torus: {
          const int N = reader.get<int>("quadrature_sites", 2 * n + 1);
          basis = std::make_shared<OrthonormalBasis>(
              build_basis_qr(torus_sites(dimension, N), n));
          break;
        }
        case ExtremalModel::Weyl: {
          const int radial = reader.get<int>("nodes_radial", 96);
          const int angular = reader.get<int>("nodes_angular", std::max(64, 2 * n + 1));
          basis = std::make_shared<OrthonormalBasis>(build_basis_qr(
              weyl_sites(n, radial, angular, UnboundedWeightSpec::weyl_default()), n));
          break;
        }
      }
    } else {
      basis = std::make_shared<OrthonormalBasis>(
          build_basis_qr(sites_from_file(basis_kind.substr(5)), n));
    }

    std::vector<double> estimates(grid.size()), oracles(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
      estimates[i] = extremal_estimate(*basis, grid.point(i));
      oracles[i] = oracle_extremal(model, grid.point(i));
    });
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      sup = std::max(sup, std::abs(estimates[i] - oracles[i]));
    }
    sup_errors.push_back(sup);
    report.stat_names.push_back("sup_error_n" + std::to_string(n));
    write_grid_csv(grid, estimates, oracles,
                   artifact_path(config, model_name + "_n" + std::to_string(n), seed,
                                 "_grid.csv"));
  }
  report.rows.push_back(sup_errors);
  report.recompute_aggregates();

  if (j.contains("tolerance")) {
    const json& tol = j.at("tolerance");
    if (tol.contains("sup_max")) {
      report.add_check("sup_error at n=" + std::to_string(degrees.back()),
                       sup_errors.back(), tol.at("sup_max").get<double>(), true);
    }
    if (tol.value("require_decreasing", false) && degrees.size() > 1) {
      bool decreasing = true;
      for (std::size_t i = 1; i < sup_errors.size(); ++i) {
        decreasing = decreasing && sup_errors[i] < sup_errors[i - 1];
      }
      report.add_check("sup_error decreasing across degrees", decreasing ? 1.0 : 0.0,
                       1.0, false);
    }
  }
  return finish(config, model_name, seed, report);
}

int run_zeros(const ExperimentConfig& config, const json& j, std::uint64_t seed) {
  std::vector<std::string> sink;
  ConfigReader reader(j, sink);
  const int n = read_degrees(reader, sink).back();
  const auto trials = static_cast<std::size_t>(reader.get<int>("trials", 50));
  const CoefficientDistribution dist =
      CoefficientDistribution::from_key(reader.get<std::string>("distribution", ""));
  const int sectors = reader.get<int>("sectors", 12);
  const double annulus_lo = reader.get<double>("annulus_lo", 0.9);
  const double annulus_hi = reader.get<double>("annulus_hi", 1.1);
  const std::vector<double> radii =
      reader.get<std::vector<double>>("radii", {0.9, 1.0, 1.1});

  auto basis = std::make_shared<OrthonormalBasis>(closed_form_circle(n));
  ZeroMeasureStats stats = expected_zero_measure(basis, dist, trials, seed, radii,
                                                 sectors, annulus_lo, annulus_hi,
                                                 1.0, true);
  write_zero_sets_csv(stats.per_trial_zeros,
                      artifact_path(config, "circle_n" + std::to_string(n), seed,
                                    "_zeros.csv"));

  stats.report.add_check("mean annulus_fraction(" + format_double(annulus_lo) + "," +
                             format_double(annulus_hi) + ")",
                         stats.mean_annulus,
                         reader.get<double>("annulus_min", 0.95), false);
  const double expected_count = static_cast<double>(n) / sectors;
  const double band = 3.0 * std::sqrt(expected_count);
  double worst_sector_dev = 0.0;
  for (int k = 0; k < sectors; ++k) {
    worst_sector_dev =
        std::max(worst_sector_dev,
                 std::abs(stats.mean_sector_counts[static_cast<std::size_t>(k)] -
                          expected_count));
  }
  stats.report.add_check("max |sector mean - n/sectors| within 3 sqrt(n/sectors)",
                         worst_sector_dev, band, true);
  return finish(config, "circle_n" + std::to_string(n), seed, stats.report);
}

int run_weyl(const ExperimentConfig& config, const json& j, std::uint64_t seed) {
  std::vector<std::string> sink;
  ConfigReader reader(j, sink);
  const int n = read_degrees(reader, sink).back();
  const auto trials = static_cast<std::size_t>(reader.get<int>("trials", 50));
  const CoefficientDistribution dist = CoefficientDistribution::from_key(
      reader.get<std::string>("distribution", "complex_gaussian"));
  const std::vector<double> radii =
      reader.get<std::vector<double>>("radii", {0.5, 0.7, 0.9});
  const double tolerance = reader.get<double>("cdf_tolerance", 0.03);

  // The scaled-zero basis: zeros of H_n in this basis are the 1/sqrt(n)
  // scaled zeros of the classical Weyl polynomial.
  auto basis = std::make_shared<OrthonormalBasis>(closed_form_weyl(n));
  ZeroMeasureStats stats = expected_zero_measure(basis, dist, trials, seed, radii, 8,
                                                 0.9, 1.1, 1.0, true);
  write_zero_sets_csv(stats.per_trial_zeros,
                      artifact_path(config, "n" + std::to_string(n), seed,
                                    "_zeros.csv"));
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double target = radii[i] * radii[i];
    stats.report.add_check("|mean radial_cdf(" + format_double(radii[i]) + ") - " +
                               format_double(target) + "|",
                           std::abs(stats.mean_radial_cdf[i] - target), tolerance,
                           true);
  }
  return finish(config, "n" + std::to_string(n), seed, stats.report);
}

int run_expectation(const ExperimentConfig& config, const json& j,
                    std::uint64_t seed) {
  std::vector<std::string> sink;
  ConfigReader reader(j, sink);
  const auto trials = static_cast<std::size_t>(reader.get<int>("trials", 1000000));
  const CoefficientDistribution dist =
      CoefficientDistribution::from_key(reader.get<std::string>("distribution", ""));
  const std::vector<int> dims = reader.get<std::vector<int>>("dims", {10});

  int exit_code = kExitPass;
  for (const int dim : dims) {
    std::vector<Eigen::VectorXcd> vectors;
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(dim);
    e1[0] = 1.0;
    vectors.push_back(e1);
    if (dim >= 2) {
      Eigen::VectorXcd pair = Eigen::VectorXcd::Zero(dim);
      pair[0] = pair[1] = 1.0 / std::sqrt(2.0);
      vectors.push_back(pair);
    }
    vectors.push_back(Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(double(dim))));

    InEstimateResult result = I_n_estimate(dist, vectors, trials, seed);
    if (j.contains("expected_mean")) {
      const double target = j.at("expected_mean").get<double>();
      const double tol = reader.get<double>("mean_tolerance", 0.01);
      result.report.add_check("dim " + std::to_string(dim) + ": |mean(u0) - " +
                                  format_double(target) + "|",
                              std::abs(result.per_vector[0].mean - target), tol, true);
    }
    // Cross-vector agreement on shared draws: paired standard error.
    for (std::size_t v = 1; v < vectors.size(); ++v) {
      double diff_sq = 0.0;
      const double mean_diff = result.per_vector[v].mean - result.per_vector[0].mean;
      for (const auto& row : result.report.rows) {
        const double d = (row[v] - row[0]) - mean_diff;
        diff_sq += d * d;
      }
      const double paired_se =
          std::sqrt(diff_sq / double(trials - 1)) / std::sqrt(double(trials));
      result.report.add_check(
          "dim " + std::to_string(dim) + ": |mean(u" + std::to_string(v) +
              ") - mean(u0)| within 3 paired se",
          std::abs(mean_diff), 3.0 * std::max(paired_se, 1e-15), true);
    }
    const int code = finish(config, dist.key() + "_dim" + std::to_string(dim), seed,
                            result.report, trials <= 100000);
    exit_code = std::max(exit_code, code);
  }
  return exit_code;
}

int run_lemma_check(const ExperimentConfig& config, const json& j,
                    std::uint64_t seed) {
  std::vector<std::string> sink;
  ConfigReader reader(j, sink);
  const std::vector<int> degrees = read_degrees(reader, sink);
  const auto trials = static_cast<std::size_t>(reader.get<int>("trials", 1000000));
  const CoefficientDistribution dist =
      CoefficientDistribution::from_key(reader.get<std::string>("distribution", ""));

  int exit_code = kExitPass;
  for (const int n : degrees) {
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(n);
    e1[0] = 1.0;
    SmallBallResult ball = small_ball_probability(dist, n, e1, trials, seed);
    const int code1 =
        finish(config, "small_ball_n" + std::to_string(n), seed, ball.report, false);

    NormTailResult tail =
        norm_tail_probability(dist, static_cast<std::size_t>(n), n, trials, seed + 1);
    const int code2 =
        finish(config, "norm_tail_n" + std::to_string(n), seed, tail.report, false);
    exit_code = std::max({exit_code, code1, code2});
  }
  return exit_code;
}

int run_mapping(const ExperimentConfig& config, const json& j, std::uint64_t seed) {
  std::vector<std::string> sink;
  ConfigReader reader(j, sink);
  const std::string model_name = reader.get<std::string>("model", "circle");
  const ExtremalModel model = extremal_model_from_string(model_name);
  const int dimension =
      reader.get<int>("dimension", model == ExtremalModel::Torus ? 2 : 1);
  const int k = reader.get<int>("k", 1);
  const std::vector<int> degrees = read_degrees(reader, sink);
  const auto trials = static_cast<std::size_t>(reader.get<int>("trials", 50));
  const CoefficientDistribution dist =
      CoefficientDistribution::from_key(reader.get<std::string>("distribution", ""));
  const double tolerance = reader.get<double>("tolerance", 0.1);
  const EvaluationGrid grid = grid_from_config(j, dimension);

  ConvergenceResult result = convergence_experiment(model, dimension, k, dist, degrees,
                                                    grid, trials, seed, tolerance);
  if (degrees.size() > 1) {
    bool med_decreasing = true;
    for (std::size_t i = 1; i < result.median_error.size(); ++i) {
      med_decreasing = med_decreasing &&
                       result.median_error[i] < result.median_error[i - 1];
    }
    result.report.add_check("median grid error decreasing", med_decreasing ? 1.0 : 0.0,
                            1.0, false);
    result.report.add_check("fraction improved (largest vs smallest degree)",
                            result.fraction_improved_pairwise,
                            reader.get<double>("improve_fraction_min", 0.8), false);
  }
  result.report.add_check("fraction below tolerance at n=" +
                              std::to_string(degrees.back()),
                          result.fraction_below_tol_at_largest,
                          reader.get<double>("below_tol_fraction_min", 0.5), false);
  return finish(config, model_name + "_k" + std::to_string(k), seed, result.report);
}

}  // namespace

int run(const ExperimentConfig& config) {
  const std::vector<std::string> issues = validate(config);
  if (!issues.empty()) {
    for (const auto& issue : issues) std::cerr << "config error: " << issue << "\n";
    return kExitInvalidConfig;
  }
  std::vector<std::string> parse_issues;
  const json j = load_config(config, parse_issues);
  const std::uint64_t seed = *effective_seed(config, j);
  std::filesystem::create_directories(config.out_dir);

  try {
    if (config.subcommand == "extremal") return run_extremal(config, j, seed);
    if (config.subcommand == "zeros") return run_zeros(config, j, seed);
    if (config.subcommand == "weyl") return run_weyl(config, j, seed);
    if (config.subcommand == "expectation") return run_expectation(config, j, seed);
    if (config.subcommand == "lemma-check") return run_lemma_check(config, j, seed);
    if (config.subcommand == "mapping") return run_mapping(config, j, seed);
  } catch (const std::logic_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFail;
  }
  std::cerr << "config error: unknown subcommand\n";
  return kExitInvalidConfig;
}

}  // namespace plurirand
