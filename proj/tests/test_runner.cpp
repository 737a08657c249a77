#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "plurirand/runner.hpp"

using namespace plurirand;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "plurirand_runner_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path path = scratch_dir() / name;
  std::ofstream(path) << body;
  return path;
}

ExperimentConfig make(const std::string& subcommand, const fs::path& config_path,
                      const std::string& out_name) {
  ExperimentConfig config;
  config.subcommand = subcommand;
  config.config_path = config_path;
  config.out_dir = scratch_dir() / out_name;
  return config;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("validate: missing seed") {
  const auto path = write_config("no_seed.json",
                                 R"({"model":"circle","degree":10})");
  const auto issues = validate(make("extremal", path, "v1"));
  REQUIRE_FALSE(issues.empty());
  bool found = false;
  for (const auto& issue : issues) {
    if (issue.find("seed required") != std::string::npos) found = true;
  }
  CHECK(found);
}

TEST_CASE("validate: unknown distribution key") {
  const auto path = write_config(
      "bad_dist.json",
      R"({"seed":1,"degree":10,"trials":5,"distribution":"lognormal"})");
  const auto issues = validate(make("zeros", path, "v2"));
  bool found = false;
  for (const auto& issue : issues) {
    if (issue.find("unknown distribution key 'lognormal'") != std::string::npos) {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("validate: degree cap for general sets") {
  const auto path = write_config(
      "cap.json",
      R"({"seed":1,"model":"circle","degree":300,"basis":"quadrature"})");
  const auto issues = validate(make("extremal", path, "v3"));
  bool found = false;
  for (const auto& issue : issues) {
    if (issue.find("degree cap 30 for general sets") != std::string::npos) found = true;
  }
  CHECK(found);
}

TEST_CASE("validate: clean config returns no violations") {
  const auto path = write_config(
      "ok.json", R"({"seed":1,"model":"circle","degree":20,"basis":"closed_form"})");
  CHECK(validate(make("extremal", path, "v4")).empty());
}

TEST_CASE("run: extremal circle writes artifacts and passes its tolerance") {
  const auto path = write_config("extremal_run.json", R"({
    "seed": 7, "model": "circle", "degrees": [25, 50], "basis": "closed_form",
    "grid": {"radii": [0.5, 1.0, 2.0], "angles": 16},
    "tolerance": {"sup_max": 0.045, "require_decreasing": true}
  })");
  const ExperimentConfig config = make("extremal", path, "run_extremal");
  CHECK(run(config) == kExitPass);
  CHECK(fs::exists(config.out_dir / "extremal_circle_n50_seed7_grid.csv"));
  CHECK(fs::exists(config.out_dir / "extremal_circle_seed7_summary.txt"));
  const std::string summary = slurp(config.out_dir / "extremal_circle_seed7_summary.txt");
  CHECK(summary.find("result: PASS") != std::string::npos);
}

TEST_CASE("run: missing seed exits with the config status") {
  const auto path = write_config("no_seed_run.json", R"({"model":"circle","degree":5})");
  CHECK(run(make("extremal", path, "run_noseed")) == kExitInvalidConfig);
}

TEST_CASE("run: impossible tolerance exits with the tolerance status") {
  const auto path = write_config("tight.json", R"({
    "seed": 7, "model": "circle", "degrees": [10], "basis": "closed_form",
    "grid": {"radii": [2.0], "angles": 8},
    "tolerance": {"sup_max": 1e-6}
  })");
  CHECK(run(make("extremal", path, "run_tight")) == kExitToleranceFail);
}

TEST_CASE("run: zeros subcommand produces per-trial and zero-set CSVs") {
  const auto path = write_config("zeros_run.json", R"({
    "seed": 11, "degree": 60, "trials": 8, "distribution": "complex_gaussian",
    "annulus_lo": 0.8, "annulus_hi": 1.25, "annulus_min": 0.8, "sectors": 6
  })");
  const ExperimentConfig config = make("zeros", path, "run_zeros");
  CHECK(run(config) == kExitPass);
  CHECK(fs::exists(config.out_dir / "zeros_circle_n60_seed11_trials.csv"));
  CHECK(fs::exists(config.out_dir / "zeros_circle_n60_seed11_zeros.csv"));
}

TEST_CASE("run: byte-identical CSV bodies across worker counts") {
  const auto path = write_config("det.json", R"({
    "seed": 13, "degree": 40, "trials": 6, "distribution": "complex_gaussian",
    "annulus_lo": 0.7, "annulus_hi": 1.4, "annulus_min": 0.5, "sectors": 4
  })");
  std::vector<std::string> bodies;
  for (const char* workers : {"1", "4", "8"}) {
    setenv("PLURIRAND_WORKERS", workers, 1);
    const ExperimentConfig config =
        make("zeros", path, std::string("det_w") + workers);
    REQUIRE(run(config) == kExitPass);
    bodies.push_back(slurp(config.out_dir / "zeros_circle_n40_seed13_trials.csv") +
                     slurp(config.out_dir / "zeros_circle_n40_seed13_zeros.csv"));
  }
  unsetenv("PLURIRAND_WORKERS");
  CHECK(bodies[0] == bodies[1]);
  CHECK(bodies[0] == bodies[2]);
  CHECK_FALSE(bodies[0].empty());
}

TEST_CASE("run: weyl subcommand checks the radial CDF against r^2") {
  const auto path = write_config("weyl_run.json", R"({
    "seed": 5, "degree": 120, "trials": 10, "distribution": "complex_gaussian",
    "radii": [0.5, 0.7], "cdf_tolerance": 0.05
  })");
  const ExperimentConfig config = make("weyl", path, "run_weyl");
  CHECK(run(config) == kExitPass);
  CHECK(fs::exists(config.out_dir / "weyl_n120_seed5_trials.csv"));
  CHECK(fs::exists(config.out_dir / "weyl_n120_seed5_zeros.csv"));
}

TEST_CASE("run: mapping subcommand reports a decreasing error trend") {
  const auto path = write_config("mapping_run.json", R"({
    "seed": 21, "model": "torus", "dimension": 2, "k": 2,
    "degrees": [10, 20], "trials": 12, "distribution": "complex_gaussian",
    "grid": {"radii": [2.0, 4.0], "angles": 4},
    "tolerance": 0.2, "improve_fraction_min": 0.7
  })");
  const ExperimentConfig config = make("mapping", path, "run_mapping");
  CHECK(run(config) == kExitPass);
  CHECK(fs::exists(config.out_dir / "mapping_torus_k2_seed21_trials.csv"));
}

TEST_CASE("run: expectation subcommand with a target mean") {
  const auto path = write_config("expectation_run.json", R"({
    "seed": 2, "trials": 50000, "distribution": "uniform_disk:1",
    "dims": [1], "expected_mean": -0.5, "mean_tolerance": 0.02
  })");
  const ExperimentConfig config = make("expectation", path, "run_expectation");
  CHECK(run(config) == kExitPass);
  CHECK(fs::exists(config.out_dir / "expectation_uniform_disk-1_dim1_seed2_trials.csv"));
}

TEST_CASE("run: seed override from the command line") {
  const auto path = write_config("seedless.json", R"({
    "model": "circle", "degrees": [10], "basis": "closed_form",
    "grid": {"radii": [2.0], "angles": 4}
  })");
  ExperimentConfig config = make("extremal", path, "run_override");
  config.seed_override = 99;
  CHECK(run(config) == kExitPass);
  CHECK(fs::exists(config.out_dir / "extremal_circle_seed99_summary.txt"));
}
