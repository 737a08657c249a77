#include <CLI11.hpp>
#include <iostream>

#include "plurirand/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"plurirand: weighted extremal functions and random polynomial experiments"};
  app.require_subcommand(1);

  plurirand::ExperimentConfig config;
  std::string config_file;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;

  for (const std::string name :
       {"extremal", "zeros", "weyl", "expectation", "lemma-check", "mapping"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_file, "experiment config file (JSON)")
        ->required();
    sub->add_option("--out", out_dir, "output directory for CSV artifacts");
    sub->add_option("--seed", seed, "master seed (overrides the config)")
        ->each([&](const std::string&) { seed_given = true; });
  }

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  config.subcommand = sub->get_name();
  config.config_path = config_file;
  config.out_dir = out_dir;
  if (seed_given) config.seed_override = seed;

  return plurirand::run(config);
}
