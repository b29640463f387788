#include "morphosim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "morphosim/error.hpp"
#include "morphosim/tridiagonal.hpp"

namespace morphosim {

using std::numbers::pi;

namespace {

// a_i = G(1) x_i - G(x_i) for the cumulative integral G of g.
std::vector<double> anchored_advection(const Grid& grid, std::span<const double> g) {
  const int nn = grid.nodes();
  std::vector<double> G(nn, 0.0);
  for (int i = 1; i < nn; ++i) G[i] = G[i - 1] + g[i - 1] * grid.dx();
  std::vector<double> a(nn, 0.0);
  for (int i = 1; i < nn - 1; ++i) a[i] = G.back() * grid.node(i) - G[i];
  return a;
}

double total(const Grid& grid, std::span<const double> g) {
  double sum = 0.0;
  for (double v : g) sum += v;
  return sum * grid.dx();
}

RhsSplit rhs_3d_impl(const WallProfile& profile, const ProfileGeometry& geo,
                     const GrowthField& mu, const ModelParams& params) {
  const Grid& grid = profile.grid;
  const int nc = grid.cells();
  const int nn = grid.nodes();
  const auto& s = profile.dphi;
  const std::vector<double> psi = params.extensibility(mu, profile.length);
  const Lambdas lam = lambdas(profile, geo, psi, params);

  std::vector<double> g(nc);
  for (int j = 0; j < nc; ++j) g[j] = lam.lambda1[j] + lam.lambda2[j] * s[j];

  RhsSplit out;
  out.advection = anchored_advection(grid, g);
  out.source.assign(nn, 0.0);
  for (int i = 1; i < nn - 1; ++i) {
    const double cot = std::cos(geo.phi_nodes[i]) / std::sin(geo.phi_nodes[i]);
    out.source[i] = cot * 0.5 * (lam.lambda1[i - 1] + lam.lambda1[i]) -
                    (lam.lambda2[i] - lam.lambda2[i - 1]) / grid.dx();
  }
  out.diffusion.resize(nc);
  for (int j = 0; j < nc; ++j) {
    const double I = geo.icosin_centers[j];
    out.diffusion[j] = 0.5 * params.P * profile.length * psi[j] * I * I * I;
  }
  out.elongation = params.inflating ? profile.length * total(grid, g) : 0.0;
  return out;
}

RhsSplit rhs_2d_impl(const WallProfile& profile, const GrowthField& mu,
                     const ModelParams& params) {
  const Grid& grid = profile.grid;
  const int nc = grid.cells();
  const int nn = grid.nodes();
  const auto& s = profile.dphi;
  const double PL = params.P * profile.length;
  const std::vector<double> psi = params.extensibility(mu, profile.length);

  std::vector<double> g(nc), E(nc);
  for (int j = 0; j < nc; ++j) {
    g[j] = PL * psi[j] / s[j];
    E[j] = psi[j] / (s[j] * s[j]);
  }
  RhsSplit out;
  out.advection = anchored_advection(grid, g);
  out.source.assign(nn, 0.0);
  for (int i = 1; i < nn - 1; ++i) out.source[i] = -PL * (E[i] - E[i - 1]) / grid.dx();
  out.diffusion.resize(nc);
  for (int j = 0; j < nc; ++j) out.diffusion[j] = 2.0 * PL * psi[j] / (s[j] * s[j] * s[j]);
  out.elongation = params.inflating ? profile.length * total(grid, g) : 0.0;
  return out;
}

void check_field(const WallProfile& profile, const GrowthField& mu) {
  if (mu.mu.size() != profile.dphi.size()) {
    throw InvalidArgument("growth field does not match the profile grid");
  }
}

}  // namespace

std::vector<double> RhsSplit::phi_rate(const WallProfile& profile) const {
  const auto& s = profile.dphi;
  const std::size_t nn = advection.size();
  std::vector<double> F(nn, 0.0);
  for (std::size_t i = 1; i + 1 < nn; ++i) {
    const double a = advection[i];
    // d_t dphi = d_x(a dphi): characteristics move against a.
    const double up = a > 0.0 ? s[i] : a < 0.0 ? s[i - 1] : 0.5 * (s[i - 1] + s[i]);
    F[i] = a * up + source[i];
  }
  return F;
}

std::vector<double> RhsSplit::dphi_rate(const WallProfile& profile) const {
  const std::vector<double> F = phi_rate(profile);
  const double dx = profile.grid.dx();
  std::vector<double> R(profile.dphi.size());
  for (std::size_t j = 0; j < R.size(); ++j) R[j] = (F[j + 1] - F[j]) / dx;
  return R;
}

RhsSplit rhs_3d(const WallProfile& profile, const GrowthField& mu, const ModelParams& params) {
  validate(profile);
  check_field(profile, mu);
  return rhs_3d_impl(profile, analyze(profile), mu, params);
}

RhsSplit rhs_2d(const WallProfile& profile, const GrowthField& mu, const ModelParams& params) {
  validate(profile);
  check_field(profile, mu);
  return rhs_2d_impl(profile, mu, params);
}

RhsSplit evaluate_rhs(const WallProfile& profile, const ModelParams& params) {
  validate(profile);
  const double sigma = params.reduced_diffusion(profile.length);
  if (params.dim == Dimension::two) {
    return rhs_2d_impl(profile, solve_mu_2d(profile, sigma), params);
  }
  const ProfileGeometry geo = analyze(profile);
  return rhs_3d_impl(profile, geo, solve_mu_3d(profile, geo, sigma), params);
}

double elongation_rate(const WallProfile& profile, std::span<const double> psi,
                       const ModelParams& params) {
  const Grid& grid = profile.grid;
  const auto& s = profile.dphi;
  if (psi.size() != s.size()) throw InvalidArgument("psi must live on the cell centres");
  const double L = profile.length;
  double integral = 0.0;
  if (params.dim == Dimension::two) {
    for (std::size_t j = 0; j < s.size(); ++j) integral += psi[j] / s[j];
    return params.P * L * L * integral * grid.dx();
  }
  const Lambdas lam = lambdas(profile, psi, params);
  for (std::size_t j = 0; j < s.size(); ++j) integral += lam.lambda1[j] + lam.lambda2[j] * s[j];
  return L * integral * grid.dx();
}

void SimConfig::validate() const {
  params.validate();
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw InvalidArgument(msg);
  };
  require(m >= 4, "m: need at least 4 interior cells");
  require(L0 > 0.0 && std::isfinite(L0), "L0: generatrix length must be positive");
  require(time.cfl > 0.0 && time.cfl <= 1.0, "cfl: must lie in (0, 1]");
  require(time.max_dt > 0.0, "max_dt: must be positive");
  require(time.end_time > 0.0, "T: end time must be positive");
  require(output_interval > 0.0, "output_interval: must be positive");
  require(mode_count >= 1, "modes: need at least one recorded mode");
  require(closure_tolerance > 0.0, "closure_tolerance: must be positive");
  require(stop_min_dphi >= 0.0, "stop_min_dphi: must be non-negative");
  require(initial.amplitude >= 0.0, "ic_amplitude: must be non-negative");
  require(initial.count >= 1, "ic_count: must be at least 1");
  for (const auto& [k, a] : initial.modes) {
    require(k >= 1, "ic_modes: mode numbers start at 1");
    require(std::isfinite(a), "ic_modes: amplitudes must be finite");
  }
}

double stable_dt(const RhsSplit& rhs, const Grid& grid, const TimeControl& control) {
  double amax = 0.0;
  for (double a : rhs.advection) amax = std::max(amax, std::abs(a));
  if (amax == 0.0) return control.max_dt;
  return std::min(control.max_dt, control.cfl * grid.dx() / amax);
}

WallProfile step(const WallProfile& state, const SimConfig& config, StepInfo* info,
                 double dt_cap) {
  const Grid& grid = state.grid;
  const int nc = grid.cells();
  const RhsSplit rhs = evaluate_rhs(state, config.params);
  double dt = std::min(stable_dt(rhs, grid, config.time), dt_cap);
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  const std::vector<double> R = rhs.dphi_rate(state);
  const auto& D = rhs.diffusion;

  // (I - dt/dx^2 T diag(D)) delta = dt R, T the zero-flux second difference.
  // The CFL limit only sees advection; near a flattening neck the source is
  // the fast part, so the step is halved while any cell would lose more
  // than half of its dphi.
  std::vector<double> next(nc);
  std::vector<double> lower(nc - 1), diag(nc), upper(nc - 1), b(nc);
  constexpr int max_halvings = 40;
  for (int attempt = 0;; ++attempt) {
    const double c = dt / (grid.dx() * grid.dx());
    for (int j = 0; j < nc; ++j) {
      const int neighbours = (j > 0) + (j + 1 < nc);
      diag[j] = 1.0 + c * D[j] * neighbours;
      b[j] = dt * R[j];
      if (j > 0) lower[j - 1] = -c * D[j - 1];
      if (j + 1 < nc) upper[j] = -c * D[j + 1];
    }
    const std::vector<double> delta = solve_tridiagonal(lower, diag, upper, b);
    bool too_fast = false;
    for (int j = 0; j < nc; ++j) {
      next[j] = state.dphi[j] + delta[j];
      too_fast = too_fast || !(next[j] > 0.5 * state.dphi[j]);
    }
    if (!too_fast || attempt == max_halvings) break;
    dt *= 0.5;
  }

  const double t = state.time + dt;
  for (int j = 0; j < nc; ++j) {
    if (!std::isfinite(next[j])) {
      throw NumericalError("non-finite dphi after step at t = " + std::to_string(t));
    }
    if (next[j] <= 0.0) {
      std::ostringstream msg;
      msg << "parametrization lost: dphi = " << next[j] << " in cell " << j << " at t = " << t;
      throw ParametrizationLoss(msg.str(), t);
    }
  }
  WallProfile out(grid, std::move(next), state.length + dt * rhs.elongation, t);
  if (config.project_closure) out = close_profile(out);
  if (info) {
    info->dt = dt;
    info->elongation = rhs.elongation;
    info->closure_defect = closure_defect(out);
  }
  return out;
}

WallProfile close_profile(const WallProfile& profile) {
  const Grid& grid = profile.grid;
  const int nc = grid.cells();
  std::vector<double> basis(nc);
  for (int j = 0; j < nc; ++j) basis[j] = std::cos(pi * grid.center(j));

  auto shifted = [&](double c) {
    std::vector<double> d(profile.dphi);
    for (int j = 0; j < nc; ++j) d[j] += c * basis[j];
    return WallProfile(grid, std::move(d), profile.length, profile.time);
  };
  auto defect = [&](double c) { return closure_defect(shifted(c)); };

  const double f0 = defect(0.0);
  if (f0 == 0.0) return profile;
  // The defect decreases in c; keep dphi positive while bracketing.
  const double limit = 0.999 * profile.min_dphi();
  double lo = 0.0, hi = 0.0;
  double h = std::min(1e-3 + std::abs(f0) * 4.0, limit);
  for (;;) {
    const double c = f0 > 0.0 ? h : -h;
    if ((defect(c) > 0.0) != (f0 > 0.0)) {
      lo = std::min(0.0, c);
      hi = std::max(0.0, c);
      break;
    }
    if (h >= limit) throw NumericalError("closure root not bracketed");
    h = std::min(2.0 * h, limit);
  }
  boost::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      defect, lo, hi, boost::math::tools::eps_tolerance<double>(52), iterations);
  const double fa = std::abs(defect(a));
  const double fb = std::abs(defect(b));
  return shifted(fa <= fb ? a : b);
}

WallProfile initial_profile(const SimConfig& config) {
  const Grid grid(config.m);
  const InitialCondition& ic = config.initial;
  WallProfile profile = WallProfile::sphere(grid, config.L0);
  switch (ic.kind) {
    case InitialCondition::Kind::sphere:
      return profile;
    case InitialCondition::Kind::modes:
      profile = WallProfile::with_modes(grid, config.L0, ic.modes);
      break;
    case InitialCondition::Kind::random: {
      std::mt19937_64 rng(config.seed);
      std::uniform_real_distribution<double> dist(-ic.amplitude, ic.amplitude);
      std::vector<std::pair<int, double>> modes;
      for (int k = 1; k <= ic.count; ++k) modes.emplace_back(k, dist(rng));
      profile = WallProfile::with_modes(grid, config.L0, modes);
      break;
    }
  }
  validate(profile);
  if (ic.close) profile = close_profile(profile);
  validate(profile);
  return profile;
}

double mode_energy(std::span<const double> modes) {
  double e = 0.0;
  for (double a : modes) e += a * a;
  return e;
}

SimulationResult simulate(const SimConfig& config, const Observer& observer) {
  config.validate();
  return simulate(config, initial_profile(config), observer);
}

SimulationResult simulate(const SimConfig& config, WallProfile initial,
                          const Observer& observer) {
  config.validate();
  validate(initial);
  SimulationResult result{initial, {}, ModeSeries(config.mode_count), {}, RunStatus::completed,
                          {}, 0.0, 0};
  WallProfile state = std::move(initial);
  bool closure_warned = false;

  auto record = [&](const WallProfile& p) {
    SeriesRow row;
    row.t = p.time;
    row.length = p.length;
    row.closure_defect = closure_defect(p);
    row.modes = cosine_coeffs(p.dphi, config.mode_count).a;
    row.min_dphi = p.min_dphi();
    row.max_dphi = p.max_dphi();
    if (!closure_warned && std::abs(row.closure_defect) > config.closure_tolerance) {
      closure_warned = true;
      std::ostringstream msg;
      msg << "closure defect " << row.closure_defect << " exceeds tolerance "
          << config.closure_tolerance << " at t = " << p.time;
      result.warnings.push_back(msg.str());
    }
    result.modes.append(row.t, row.modes);
    if (observer) observer(p, row);
    result.series.push_back(std::move(row));
  };

  if (cosine_coeffs(state.dphi, config.mode_count).aliased) {
    result.warnings.push_back("mode count exceeds m/2: coefficients are aliased");
  }
  record(state);

  const double T = config.time.end_time;
  const double eps = 1e-12 * std::max(1.0, T);
  double next_output = state.time + config.output_interval;
  while (state.time < T - eps) {
    const double cap = std::min(next_output, T) - state.time;
    try {
      state = step(state, config, nullptr, cap);
    } catch (const ParametrizationLoss& e) {
      result.status = RunStatus::parametrization_loss;
      result.message = e.what();
      result.stop_time = e.time();
      result.warnings.push_back(e.what());
      break;
    }
    ++result.steps;
    const bool stop = config.stop_min_dphi > 0.0 && state.min_dphi() < config.stop_min_dphi;
    if (state.time >= next_output - eps || state.time >= T - eps || stop) {
      record(state);
      while (next_output <= state.time + eps) next_output += config.output_interval;
    }
    if (stop) {
      std::ostringstream msg;
      msg << "min dphi " << state.min_dphi() << " fell below stop_min_dphi "
          << config.stop_min_dphi << " at t = " << state.time;
      result.status = RunStatus::stopped;
      result.message = msg.str();
      result.stop_time = state.time;
      result.warnings.push_back(msg.str());
      break;
    }
  }
  if (result.status == RunStatus::completed) result.stop_time = state.time;
  result.final_state = state;
  return result;
}

double radial_rate(const ModelParams& params, double L) {
  const double psi = params.radial_extensibility(L);
  if (params.dim == Dimension::three) return params.P * (1.0 - params.nu) * psi * L * L / (2.0 * pi);
  return params.P * psi * L * L / pi;
}

RadialSolution radial_ode(const ModelParams& params, double L0, double T, int samples,
                          double rel_tol) {
  if (!(L0 > 0.0)) throw InvalidArgument("L0 must be positive");
  if (!(T > 0.0)) throw InvalidArgument("T must be positive");
  if (samples < 1) throw InvalidArgument("need at least one sample interval");

  auto f = [&](double L) { return radial_rate(params, L); };
  auto rk4 = [&](double L, double h) {
    const double k1 = f(L);
    const double k2 = f(L + 0.5 * h * k1);
    const double k3 = f(L + 0.5 * h * k2);
    const double k4 = f(L + h * k3);
    return L + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
  };

  RadialSolution sol;
  sol.L0 = L0;
  sol.times.push_back(0.0);
  sol.lengths.push_back(L0);
  sol.densities.push_back(params.radial_density(L0));

  const double ceiling = 1e15 * L0;
  double t = 0.0, L = L0;
  double h = T / (100.0 * samples);
  for (int s = 1; s <= samples && !sol.blew_up; ++s) {
    const double target = T * s / samples;
    while (t < target) {
      const double hh = std::min(h, target - t);
      const double full = rk4(L, hh);
      const double half = rk4(rk4(L, 0.5 * hh), 0.5 * hh);
      const double err = std::abs(half - full) / 15.0;
      const double scale = rel_tol * std::max(std::abs(half), L0);
      if (!std::isfinite(half) || half > ceiling) {
        if (hh < 1e-14 * T) {
          sol.blew_up = true;
          sol.blowup_time = t;
          break;
        }
        h = 0.25 * hh;
        continue;
      }
      if (err <= scale) {
        t += hh;
        L = half + (half - full) / 15.0;
        if (hh == h) h = hh * std::clamp(0.9 * std::pow(scale / std::max(err, 1e-300), 0.2), 0.2, 5.0);
      } else {
        if (hh < 1e-14 * T) {
          sol.blew_up = true;
          sol.blowup_time = t;
          break;
        }
        h = hh * std::max(0.2, 0.9 * std::pow(scale / err, 0.2));
      }
    }
    if (sol.blew_up) break;
    sol.times.push_back(t);
    sol.lengths.push_back(L);
    sol.densities.push_back(params.radial_density(L));
  }
  return sol;
}

}  // namespace morphosim
