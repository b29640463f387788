#pragma once

#include <cstdint>
#include <numbers>

#include <morphosim/dynamics.hpp>

namespace morphosim::test {

/// Random cosine perturbation of the sphere, re-closed.
inline WallProfile random_closed_profile(const Grid& grid, double length, std::uint64_t seed,
                                         double amplitude = 0.05 * std::numbers::pi,
                                         int count = 10) {
  SimConfig cfg;
  cfg.m = grid.m();
  cfg.L0 = length;
  cfg.seed = seed;
  cfg.initial.kind = InitialCondition::Kind::random;
  cfg.initial.amplitude = amplitude;
  cfg.initial.count = count;
  return initial_profile(cfg);
}

/// Fixed-L config seeded with one cosine mode of dphi, not re-closed.
inline SimConfig single_mode_config(Dimension dim, double sigma, double d, double nu, int k,
                                    double amplitude, int m, double max_dt, double end_time) {
  SimConfig cfg;
  cfg.m = m;
  cfg.params.dim = dim;
  cfg.params.sigma = sigma;
  cfg.params.nu = nu;
  cfg.params.F = CouplingFunction::power(d);
  cfg.time.max_dt = max_dt;
  cfg.time.end_time = end_time;
  cfg.output_interval = 0.05;
  cfg.mode_count = k + 2;
  cfg.initial.kind = InitialCondition::Kind::modes;
  cfg.initial.modes = {{k, amplitude}};
  cfg.initial.close = false;
  return cfg;
}

}  // namespace morphosim::test
