#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace morphosim::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_validation = 2,
  exit_numerical = 3,
  exit_verification = 4,
};

struct SimulateArgs {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = "morphosim_out";
};

struct StabilityArgs {
  int dim = 3;
  double nu = 0.5;
  std::string d_range = "2:8:100";
  std::string sigma_range = "0.01:0.5:100";
  std::filesystem::path out = "morphosim_out";
  int jobs = 1;
};

struct VerifyArgs {
  std::string suite = "fast";
  int jobs = 1;
  std::filesystem::path out = "morphosim_out";
};

/// Fills the fields of `args` not set on the command line from a preset with
/// keys dim, nu, d_range, sigma_range, jobs.
void apply_stability_preset(const std::filesystem::path& preset, StabilityArgs& args,
                            const std::vector<std::string>& explicit_keys);

/// MORPHOSIM_OUT wins over --out when set and non-empty.
std::filesystem::path resolve_out(const std::filesystem::path& requested);

int cmd_simulate(const SimulateArgs& args);
int cmd_stability(const StabilityArgs& args);
int cmd_verify(const VerifyArgs& args);

}  // namespace morphosim::cli
