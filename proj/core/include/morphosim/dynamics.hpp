#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "morphosim/geometry.hpp"
#include "morphosim/growth_field.hpp"
#include "morphosim/mechanics.hpp"
#include "morphosim/spectral.hpp"

namespace morphosim {

/// Right-hand side of the angle equation in flux form,
///   d_t phi = a(x) d_x phi + Q(x),   d_t dphi = d_x (a dphi + Q),
/// with the part of Q that is diffusive in dphi exposed for the implicit
/// solve.
struct RhsSplit {
  std::vector<double> advection;  // a on the nodes, zero at both ends
  std::vector<double> source;     // Q on the nodes, zero at both ends
  std::vector<double> diffusion;  // D on the cell centres
  double elongation = 0.0;        // L' (0 in fixed-L mode)

  /// d_t phi on the nodes, with the upwinded dphi.
  std::vector<double> phi_rate(const WallProfile& profile) const;
  /// d_t dphi on the cell centres.
  std::vector<double> dphi_rate(const WallProfile& profile) const;
};

RhsSplit rhs_2d(const WallProfile& profile, const GrowthField& mu, const ModelParams& params);
RhsSplit rhs_3d(const WallProfile& profile, const GrowthField& mu, const ModelParams& params);

/// Solves the growth field for the profile and evaluates the matching rhs.
RhsSplit evaluate_rhs(const WallProfile& profile, const ModelParams& params);

/// L' = L int_0^1 (Lambda1 + Lambda2 dphi) dx in 3D, P L^2 int_0^1 psi/dphi dx
/// in 2D, whatever the mode.
double elongation_rate(const WallProfile& profile, std::span<const double> psi,
                       const ModelParams& params);

struct TimeControl {
  double cfl = 0.5;
  double max_dt = 1e-2;
  double end_time = 1.0;
};

struct InitialCondition {
  enum class Kind { sphere, modes, random };
  Kind kind = Kind::random;
  std::vector<std::pair<int, double>> modes;  // Kind::modes
  int count = 10;                             // Kind::random: modes 1..count
  double amplitude = 0.05 * std::numbers::pi;
  bool close = true;  // re-solve a_1 so that int cos(phi) = 0
};

struct SimConfig {
  ModelParams params;
  int m = 200;
  double L0 = 1.0;
  TimeControl time;
  InitialCondition initial;
  std::uint64_t seed = 1;

  double output_interval = 0.1;
  int mode_count = 10;
  double closure_tolerance = 1e-6;
  bool project_closure = false;
  double stop_min_dphi = 0.0;  // 0 disables the graceful stop

  void validate() const;
};

/// Largest step allowed by the CFL limit on the advection coefficient.
double stable_dt(const RhsSplit& rhs, const Grid& grid, const TimeControl& control);

struct StepInfo {
  double dt = 0.0;
  double elongation = 0.0;
  double closure_defect = 0.0;
};

/// One upwind / semi-implicit step. The step size is the CFL step capped by
/// `max_dt` and by `dt_cap`.
WallProfile step(const WallProfile& state, const SimConfig& config, StepInfo* info = nullptr,
                 double dt_cap = std::numeric_limits<double>::infinity());

/// Adds c cos(pi y) to dphi, with c chosen so that int_0^1 cos(phi) = 0.
/// Leaves phi(1) unchanged. Throws NumericalError if no root is bracketed.
WallProfile close_profile(const WallProfile& profile);

WallProfile initial_profile(const SimConfig& config);

struct SeriesRow {
  double t;
  double length;
  double closure_defect;
  std::vector<double> modes;
  double min_dphi;
  double max_dphi;
};

enum class RunStatus { completed, stopped, parametrization_loss };

struct SimulationResult {
  WallProfile final_state;
  std::vector<SeriesRow> series;
  ModeSeries modes;
  std::vector<std::string> warnings;
  RunStatus status = RunStatus::completed;
  std::string message;
  double stop_time = 0.0;
  long steps = 0;
};

/// Called at every output time with the state and its row.
using Observer = std::function<void(const WallProfile&, const SeriesRow&)>;

SimulationResult simulate(const SimConfig& config, const Observer& observer = {});
SimulationResult simulate(const SimConfig& config, WallProfile initial,
                          const Observer& observer = {});

/// Energy of the perturbation: sum_k a_k^2.
double mode_energy(std::span<const double> modes);

struct RadialSolution {
  double L0 = 1.0;
  std::vector<double> times;
  std::vector<double> lengths;
  std::vector<double> densities;  // mu of the radial solution
  bool blew_up = false;
  double blowup_time = std::numeric_limits<double>::infinity();
};

/// L' of the radial solution: P (1-nu) Psi L^2/(2 pi) in 3D, P Psi L^2/pi in 2D.
double radial_rate(const ModelParams& params, double L);

/// Adaptive RK4 (step doubling) on L' = radial_rate(L), sampled at
/// `samples` + 1 equally spaced times in [0, T].
RadialSolution radial_ode(const ModelParams& params, double L0, double T, int samples = 100,
                          double rel_tol = 1e-12);

}  // namespace morphosim
