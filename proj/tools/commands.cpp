#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <morphosim/csv.hpp>
#include <morphosim/dynamics.hpp>
#include <morphosim/error.hpp>
#include <morphosim/geometry.hpp>
#include <morphosim/stability.hpp>

#include "config.hpp"
#include "manifest.hpp"
#include "verify.hpp"

namespace morphosim::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  return out;
}

void write_profile(const WallProfile& p, const fs::path& path) {
  auto out = open_output(path);
  write_profile_csv(p, out);
}

void write_mesh(const WallProfile& p, int resolution, double tolerance, const fs::path& path,
                RunManifest& manifest) {
  const SurfaceMesh mesh = reconstruct(p, resolution, tolerance);
  for (const auto& w : mesh.warnings) manifest.warn(path.filename().string() + ": " + w);
  auto out = open_output(path);
  write_obj(mesh, out);
}

std::string indexed(const char* stem, int index, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%04d.%s", stem, index, ext);
  return buf;
}

const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::completed:
      return "completed";
    case RunStatus::stopped:
      return "stopped";
    case RunStatus::parametrization_loss:
      return "parametrization_loss";
  }
  return "unknown";
}

}  // namespace

void apply_stability_preset(const fs::path& preset, StabilityArgs& args,
                            const std::vector<std::string>& explicit_keys) {
  std::ifstream in(preset);
  if (!in) throw InvalidArgument("cannot read preset " + preset.string());
  auto given = [&](const std::string& k) {
    return std::find(explicit_keys.begin(), explicit_keys.end(), k) != explicit_keys.end();
  };
  for (const auto& [key, value, where] : read_key_values(in, preset.string())) {
    if (given(key)) continue;
    try {
      if (key == "dim") {
        args.dim = std::stoi(value);
      } else if (key == "nu") {
        args.nu = std::stod(value);
      } else if (key == "d_range") {
        args.d_range = value;
      } else if (key == "sigma_range") {
        args.sigma_range = value;
      } else if (key == "jobs") {
        args.jobs = std::stoi(value);
      } else {
        throw InvalidArgument("unknown key '" + key + "'");
      }
    } catch (const std::logic_error& e) {
      throw InvalidArgument(where + key + ": " + e.what());
    }
  }
}

fs::path resolve_out(const fs::path& requested) {
  const char* env = std::getenv("MORPHOSIM_OUT");
  if (env && *env) return fs::path(env);
  return requested;
}

int cmd_simulate(const SimulateArgs& args) {
  const fs::path out_dir = resolve_out(args.out);
  RunManifest manifest("simulate", out_dir);
  manifest.set("config_path", args.config.string());

  RunConfig cfg;
  try {
    cfg = load_config(args.config);
    if (args.seed) cfg.sim.seed = *args.seed;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    manifest.warn(e.what());
    return manifest.finish(exit_validation, "validation_error");
  }
  const SimConfig& sim = cfg.sim;
  nlohmann::json echo = nlohmann::json::object();
  for (const auto& [k, v] : cfg.echo) echo[k] = v;
  manifest.set("config", echo);
  manifest.set("seed", sim.seed);
  manifest.set("grid", {{"m", sim.m}, {"dx", Grid(sim.m).dx()}});
  fs::create_directories(out_dir);

  const int res = cfg.output.mesh_resolution;
  const double tol = sim.closure_tolerance;
  int snapshots = 0, meshes = 0;
  double next_snapshot = 0.0, next_mesh = 0.0;
  const double eps = 1e-9;

  try {
    const WallProfile initial = initial_profile(sim);
    write_profile(initial, out_dir / "profile_initial.csv");
    manifest.add_output(out_dir / "profile_initial.csv", "profile", initial.time);

    auto observer = [&](const WallProfile& p, const SeriesRow&) {
      if (cfg.output.snapshot_interval > 0.0 && p.time >= next_snapshot - eps) {
        const fs::path f = out_dir / indexed("profile", snapshots++, "csv");
        write_profile(p, f);
        manifest.add_output(f, "profile", p.time);
        while (next_snapshot <= p.time + eps) next_snapshot += cfg.output.snapshot_interval;
      }
      if (cfg.output.mesh_interval > 0.0 && p.time >= next_mesh - eps) {
        const fs::path f = out_dir / indexed("mesh", meshes++, "obj");
        write_mesh(p, res, tol, f, manifest);
        manifest.add_output(f, "mesh", p.time);
        while (next_mesh <= p.time + eps) next_mesh += cfg.output.mesh_interval;
      }
    };
    const SimulationResult run = simulate(sim, initial, observer);

    {
      auto out = open_output(out_dir / "series.csv");
      write_series_csv(run.series, sim.mode_count, out);
      manifest.add_output(out_dir / "series.csv", "time_series");
    }
    {
      auto out = open_output(out_dir / "modes.csv");
      write_mode_series_csv(run.modes, out);
      manifest.add_output(out_dir / "modes.csv", "mode_series");
    }
    write_profile(run.final_state, out_dir / "profile_final.csv");
    manifest.add_output(out_dir / "profile_final.csv", "profile", run.final_state.time);
    write_mesh(run.final_state, res, tol, out_dir / "mesh_final.obj", manifest);
    manifest.add_output(out_dir / "mesh_final.obj", "mesh", run.final_state.time);

    for (const auto& w : run.warnings) manifest.warn(w);
    manifest.set("timestep", {{"cfl", sim.time.cfl}, {"max_dt", sim.time.max_dt},
                              {"steps", run.steps}, {"end_time", run.final_state.time}});
    if (run.status == RunStatus::parametrization_loss) {
      manifest.set("failure_time", run.stop_time);
      std::cerr << "error: " << run.message << '\n';
      return manifest.finish(exit_numerical, status_name(run.status));
    }
    std::cout << "simulate: " << status_name(run.status) << " at t = " << run.final_state.time
              << " after " << run.steps << " steps, L = " << run.final_state.length << '\n';
    return manifest.finish(exit_ok, status_name(run.status));
  } catch (const ParametrizationLoss& e) {
    std::cerr << "error: " << e.what() << '\n';
    manifest.warn(e.what());
    manifest.set("failure_time", e.time());
    return manifest.finish(exit_numerical, "parametrization_loss");
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    manifest.warn(e.what());
    return manifest.finish(exit_validation, "validation_error");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    manifest.warn(e.what());
    return manifest.finish(exit_numerical, "numerical_error");
  }
}

int cmd_stability(const StabilityArgs& args) {
  const fs::path out_dir = resolve_out(args.out);
  RunManifest manifest("stability", out_dir);
  manifest.set("arguments", {{"dim", args.dim}, {"nu", args.nu}, {"d_range", args.d_range},
                             {"sigma_range", args.sigma_range}, {"jobs", args.jobs}});
  try {
    if (args.dim != 2 && args.dim != 3) throw InvalidArgument("--dim must be 2 or 3");
    if (args.jobs < 1) throw InvalidArgument("--jobs must be >= 1");
    const Range dr = parse_range(args.d_range);
    const Range sr = parse_range(args.sigma_range);
    const Dimension dim = args.dim == 2 ? Dimension::two : Dimension::three;
    const RegionScan scan = region_scan(dim, args.nu, dr, sr, args.jobs);

    fs::create_directories(out_dir);
    {
      auto out = open_output(out_dir / "region.csv");
      write_region_csv(scan, out);
      manifest.add_output(out_dir / "region.csv", "region");
    }
    {
      auto out = open_output(out_dir / "boundary.csv");
      write_polyline_csv(scan.boundary, "d,sigma", out);
      manifest.add_output(out_dir / "boundary.csv", "boundary");
    }
    {
      auto out = open_output(out_dir / "root_gap.csv");
      write_polyline_csv(scan.root_gap_curve, "d,sigma", out);
      manifest.add_output(out_dir / "root_gap.csv", "root_gap_curve");
    }
    {
      auto out = open_output(out_dir / "necessary.csv");
      write_polyline_csv(scan.necessary_curve, "d,sigma", out);
      manifest.add_output(out_dir / "necessary.csv", "necessary_condition");
    }
    for (const auto& w : scan.warnings) manifest.warn(w);

    std::size_t unstable = 0, violations = 0;
    for (const auto& c : scan.cells) {
      if (c.stable) continue;
      ++unstable;
      if (c.d < necessary_condition(dim, c.sigma, args.nu)) ++violations;
    }
    manifest.set("summary", {{"cells", scan.cells.size()},
                             {"unstable", unstable},
                             {"necessary_condition_violations", violations}});
    std::cout << "stability: " << unstable << " of " << scan.cells.size()
              << " cells unstable, " << violations << " below the necessary condition\n";
    return manifest.finish(exit_ok, "completed");
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    manifest.warn(e.what());
    return manifest.finish(exit_validation, "validation_error");
  }
}

int cmd_verify(const VerifyArgs& args) {
  const fs::path out_dir = resolve_out(args.out);
  RunManifest manifest("verify", out_dir);
  manifest.set("arguments", {{"suite", args.suite}, {"jobs", args.jobs}});
  if ((args.suite != "fast" && args.suite != "full") || args.jobs < 1) {
    const std::string msg = "--suite must be fast or full and --jobs >= 1";
    std::cerr << "error: " << msg << '\n';
    manifest.warn(msg);
    return manifest.finish(exit_validation, "validation_error");
  }
  const auto suite = args.suite == "full" ? verify::Suite::full : verify::Suite::fast;
  const auto results = verify::run_criteria(verify::suite_criteria(suite), args.jobs);

  fs::create_directories(out_dir);
  auto out = open_output(out_dir / "verify.csv");
  out << "criterion,name,passed,seconds,detail\n";
  bool all = true;
  nlohmann::json table = nlohmann::json::array();
  for (const auto& r : results) {
    auto quoted = [](std::string s) {
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    };
    out << r.id << ',' << quoted(r.name) << ',' << (r.passed ? 1 : 0) << ',' << r.seconds << ','
        << quoted(r.detail) << '\n';
    std::printf("criterion %2d %s: %s [%.2fs] %s\n", r.id, r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.seconds, r.detail.c_str());
    table.push_back({{"criterion", r.id}, {"passed", r.passed}, {"seconds", r.seconds}});
    if (!r.passed) manifest.warn("criterion " + std::to_string(r.id) + " failed: " + r.detail);
    all = all && r.passed;
  }
  manifest.add_output(out_dir / "verify.csv", "verification_table");
  manifest.set("results", table);
  return manifest.finish(all ? exit_ok : exit_verification, all ? "passed" : "failed");
}

}  // namespace morphosim::cli
