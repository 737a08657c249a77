#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace plurirand {

// One experiment per invocation: the subcommand picks the experiment, the
// config file supplies every field of that experiment. Seeds are always
// explicit; there are no wall-clock defaults anywhere.
struct ExperimentConfig {
  std::string subcommand;  // extremal | zeros | weyl | expectation | lemma-check | mapping
  std::filesystem::path config_path;
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed_override;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitToleranceFail = 1;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitNumericalFail = 3;

// Field-level problems that would stop run(); empty iff run would start.
std::vector<std::string> validate(const ExperimentConfig& config);

// Executes the experiment, writes CSV artifacts plus a summary under
// out_dir, and returns kExitPass iff every declared tolerance passed.
int run(const ExperimentConfig& config);

}  // namespace plurirand
