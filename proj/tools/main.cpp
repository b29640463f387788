#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace morphosim::cli;
  CLI::App app{"morphosim: axisymmetric wall growth simulator and stability toolkit"};
  app.require_subcommand(1);

  SimulateArgs sim;
  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand("simulate", "integrate the wall evolution from a config");
  simulate->add_option("--config", sim.config, "flat key = value config file")
      ->required()
      ->check(CLI::ExistingFile);
  auto* seed_opt = simulate->add_option("--seed", seed, "RNG seed (overrides the config)");
  simulate->add_option("--out", sim.out, "output directory (MORPHOSIM_OUT overrides)");

  StabilityArgs stab;
  std::string stab_preset;
  auto* stability = app.add_subcommand("stability", "scan the (d, sigma) stability region");
  auto* dim_opt = stability->add_option("--dim", stab.dim, "2 or 3")->check(CLI::IsMember({2, 3}));
  auto* nu_opt = stability->add_option("--nu", stab.nu, "Poisson ratio (3D)");
  auto* d_opt = stability->add_option("--d-range", stab.d_range, "A:B:N");
  auto* s_opt = stability->add_option("--sigma-range", stab.sigma_range, "A:B:N");
  auto* jobs_opt =
      stability->add_option("--jobs", stab.jobs, "worker threads")->check(CLI::PositiveNumber);
  stability->add_option("--config", stab_preset, "preset file; flags take precedence")
      ->check(CLI::ExistingFile);
  stability->add_option("--out", stab.out, "output directory (MORPHOSIM_OUT overrides)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--suite", ver.suite, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--jobs", ver.jobs, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--out", ver.out, "output directory (MORPHOSIM_OUT overrides)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_validation;
  }

  if (*simulate) {
    if (*seed_opt) sim.seed = seed;
    return cmd_simulate(sim);
  }
  if (*stability) {
    if (!stab_preset.empty()) {
      std::vector<std::string> given;
      if (*dim_opt) given.push_back("dim");
      if (*nu_opt) given.push_back("nu");
      if (*d_opt) given.push_back("d_range");
      if (*s_opt) given.push_back("sigma_range");
      if (*jobs_opt) given.push_back("jobs");
      try {
        apply_stability_preset(stab_preset, stab, given);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
      }
    }
    return cmd_stability(stab);
  }
  return cmd_verify(ver);
}
