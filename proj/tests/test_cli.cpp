#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <morphosim/error.hpp>

#include "commands.hpp"
#include "config.hpp"

using namespace morphosim;
using namespace morphosim::cli;
namespace fs = std::filesystem;

namespace {

const fs::path presets = MORPHOSIM_PRESET_DIR;

class TempDir {
 public:
  explicit TempDir(const std::string& tag)
      : path_(fs::temp_directory_path() /
              ("morphosim_test_" + tag + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()))) {
    fs::remove_all(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_manifest(const fs::path& dir) {
  return nlohmann::json::parse(slurp(dir / "manifest.json"));
}

fs::path write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
  return p;
}

std::string thrown_message(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_config(in, "test.cfg");
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Config, ParsesAllSections) {
  std::istringstream in(R"(# comment
dim = 2
sigma = 0.07   # trailing comment
d = 3.5
nu = 0.25

m = 64
T = 2.5
max_dt = 0.005
ic = modes
ic_modes = 2:0.01, 5:-0.002
ic_close = false
seed = 17
modes = 6
snapshot_interval = 0.5
mesh_resolution = 24
)");
  const RunConfig cfg = parse_config(in, "inline");
  EXPECT_EQ(cfg.sim.params.dim, Dimension::two);
  EXPECT_DOUBLE_EQ(cfg.sim.params.sigma, 0.07);
  EXPECT_DOUBLE_EQ(*cfg.sim.params.F.exponent(), 3.5);
  EXPECT_DOUBLE_EQ(cfg.sim.params.nu, 0.25);
  EXPECT_EQ(cfg.sim.m, 64);
  EXPECT_DOUBLE_EQ(cfg.sim.time.end_time, 2.5);
  EXPECT_DOUBLE_EQ(cfg.sim.time.max_dt, 0.005);
  EXPECT_EQ(cfg.sim.initial.kind, InitialCondition::Kind::modes);
  ASSERT_EQ(cfg.sim.initial.modes.size(), 2u);
  EXPECT_EQ(cfg.sim.initial.modes[1].first, 5);
  EXPECT_DOUBLE_EQ(cfg.sim.initial.modes[1].second, -0.002);
  EXPECT_FALSE(cfg.sim.initial.close);
  EXPECT_EQ(cfg.sim.seed, 17u);
  EXPECT_EQ(cfg.sim.mode_count, 6);
  EXPECT_DOUBLE_EQ(cfg.output.snapshot_interval, 0.5);
  EXPECT_EQ(cfg.output.mesh_resolution, 24);
  EXPECT_EQ(cfg.echo.size(), 14u);
  EXPECT_EQ(cfg.echo.front().first, "dim");
}

TEST(Config, ErrorsNameLineAndKey) {
  EXPECT_NE(thrown_message("sigma = 0.1\nbogus = 3\n").find("test.cfg:2"), std::string::npos);
  EXPECT_NE(thrown_message("sigma = 0.1\nbogus = 3\n").find("bogus"), std::string::npos);
  EXPECT_NE(thrown_message("m = ten\n").find("m: expected an integer"), std::string::npos);
  EXPECT_NE(thrown_message("dim = 4\n").find("dim"), std::string::npos);
  EXPECT_NE(thrown_message("sigma 0.1\n").find("expected key = value"), std::string::npos);
  EXPECT_NE(thrown_message("ic_modes = 2-0.1\n").find("ic_modes"), std::string::npos);
  EXPECT_NE(thrown_message("nu = 1.5\n").find("nu"), std::string::npos);
  EXPECT_TRUE(thrown_message("sigma = 0.1\n").empty());
}

TEST(Config, AllPresetsLoad) {
  for (const char* name : {"fig4.cfg", "fig5.cfg", "fig6.cfg", "fig7.cfg"}) {
    EXPECT_NO_THROW(load_config(presets / name)) << name;
  }
  EXPECT_THROW(load_config(presets / "missing.cfg"), InvalidArgument);
}

TEST(Config, Ranges) {
  const Range r = parse_range("0.01:0.5:50");
  EXPECT_DOUBLE_EQ(r.lo, 0.01);
  EXPECT_DOUBLE_EQ(r.hi, 0.5);
  EXPECT_EQ(r.count, 50);
  EXPECT_THROW(parse_range("1:2"), InvalidArgument);
  EXPECT_THROW(parse_range("2:1:5"), InvalidArgument);
  EXPECT_THROW(parse_range("1:2:0"), InvalidArgument);
  EXPECT_THROW(parse_range("a:2:3"), InvalidArgument);
}

TEST(Config, StabilityPresetYieldsToFlags) {
  StabilityArgs args;
  args.nu = 0.9;
  apply_stability_preset(presets / "fig3.cfg", args, {"nu"});
  EXPECT_DOUBLE_EQ(args.nu, 0.9);
  EXPECT_EQ(args.dim, 3);
  EXPECT_EQ(args.d_range, "2:8:100");

  TempDir dir("preset");
  const fs::path bad = write_file(dir / "bad.cfg", "dim = 3\nsigma = 0.1\n");
  EXPECT_THROW(apply_stability_preset(bad, args, {}), InvalidArgument);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  ::unsetenv("MORPHOSIM_OUT");
  EXPECT_EQ(resolve_out("a/b"), fs::path("a/b"));
  ::setenv("MORPHOSIM_OUT", "/tmp/elsewhere", 1);
  EXPECT_EQ(resolve_out("a/b"), fs::path("/tmp/elsewhere"));
  ::setenv("MORPHOSIM_OUT", "", 1);
  EXPECT_EQ(resolve_out("a/b"), fs::path("a/b"));
  ::unsetenv("MORPHOSIM_OUT");
}

TEST(Cli, SimulateWritesCompleteManifest) {
  TempDir dir("simulate");
  const fs::path cfg = write_file(dir / "in" / "run.cfg",
                                  "m = 40\nT = 0.5\noutput_interval = 0.1\n"
                                  "snapshot_interval = 0.25\nmesh_interval = 0.25\nmesh_resolution = 8\n");
  SimulateArgs args;
  args.config = cfg;
  args.out = dir / "out";
  args.seed = 3;
  ASSERT_EQ(cmd_simulate(args), exit_ok);

  const nlohmann::json m = read_manifest(args.out);
  EXPECT_EQ(m["exit_status"], 0);
  EXPECT_EQ(m["seed"], 3);
  EXPECT_EQ(m["config"]["m"], "40");
  std::set<std::string> listed;
  for (const auto& o : m["outputs"]) listed.insert(o["path"].get<std::string>());
  std::set<std::string> on_disk;
  for (const auto& e : fs::directory_iterator(args.out)) on_disk.insert(e.path().filename().string());
  EXPECT_EQ(listed, on_disk);
  EXPECT_TRUE(on_disk.count("series.csv"));
  EXPECT_TRUE(on_disk.count("modes.csv"));
  EXPECT_TRUE(on_disk.count("mesh_final.obj"));

  const std::string series = slurp(args.out / "series.csv");
  EXPECT_EQ(series.substr(0, series.find('\n')),
            "t,L,closure_defect,a_1,a_2,a_3,a_4,a_5,a_6,a_7,a_8,a_9,a_10,min_dphi,max_dphi");
}

TEST(Cli, SimulateIsDeterministic) {
  TempDir dir("determinism");
  const fs::path cfg = write_file(dir / "run.cfg", "m = 50\nT = 1\nsigma = 0.05\n");
  SimulateArgs a{cfg, 11, dir / "a"}, b{cfg, 11, dir / "b"};
  ASSERT_EQ(cmd_simulate(a), exit_ok);
  ASSERT_EQ(cmd_simulate(b), exit_ok);
  for (const char* f : {"series.csv", "modes.csv", "profile_final.csv", "mesh_final.obj"}) {
    EXPECT_EQ(slurp(a.out / f), slurp(b.out / f)) << f;
  }
}

TEST(Cli, DistinctSeedsGiveDistinctEndProfiles) {
  TempDir dir("fig5");
  SimulateArgs one{presets / "fig5.cfg", 1, dir / "seed1"};
  SimulateArgs two{presets / "fig5.cfg", 2, dir / "seed2"};
  ASSERT_EQ(cmd_simulate(one), exit_ok);
  ASSERT_EQ(cmd_simulate(two), exit_ok);
  EXPECT_NE(slurp(one.out / "profile_final.csv"), slurp(two.out / "profile_final.csv"));
  // Seed 1 saturates on a stationary mode-2 profile; seed 2 grows bulges at
  // both ends until the neck flattens and the run stops.
  auto last_rows = [](const fs::path& series) {
    std::istringstream csv(slurp(series));
    std::string line, prev, last;
    while (std::getline(csv, line)) {
      prev = last;
      last = line;
    }
    auto column = [](const std::string& row, int c) {
      std::istringstream in(row);
      std::string cell;
      for (int i = 0; i <= c; ++i) std::getline(in, cell, ',');
      return std::stod(cell);
    };
    const int a2 = 4;  // t, L, closure_defect, a_1, a_2
    return std::pair{column(prev, a2), column(last, a2)};
  };
  const auto [before, after] = last_rows(one.out / "series.csv");
  EXPECT_EQ(read_manifest(one.out)["status"], "completed");
  EXPECT_GT(std::abs(after), 0.1);
  EXPECT_LT(std::abs(after - before), 1e-6);
  EXPECT_EQ(read_manifest(two.out)["status"], "stopped");
}

TEST(Cli, ExitCodes) {
  TempDir dir("exit");
  SimulateArgs bad{write_file(dir / "bad.cfg", "sigma = -1\n"), {}, dir / "bad"};
  EXPECT_EQ(cmd_simulate(bad), exit_validation);
  EXPECT_EQ(read_manifest(bad.out)["exit_status"], exit_validation);

  SimulateArgs missing{dir / "nope.cfg", {}, dir / "missing"};
  EXPECT_EQ(cmd_simulate(missing), exit_validation);

  SimulateArgs loss{write_file(dir / "loss.cfg",
                               "sigma = 0.01\nd = 8\nm = 100\nT = 50\nic = modes\nic_modes = 2:0.3\n"),
                    {}, dir / "loss"};
  EXPECT_EQ(cmd_simulate(loss), exit_numerical);
  const nlohmann::json m = read_manifest(loss.out);
  EXPECT_EQ(m["status"], "parametrization_loss");
  EXPECT_FALSE(m["warnings"].empty());
  EXPECT_LT(m["failure_time"].get<double>(), 50.0);

  StabilityArgs stab;
  stab.d_range = "2:1:5";
  stab.out = dir / "stab";
  EXPECT_EQ(cmd_stability(stab), exit_validation);
}

TEST(Cli, StabilityOutputs) {
  TempDir dir("stability");
  StabilityArgs args;
  args.d_range = "2:8:12";
  args.sigma_range = "0.01:0.5:10";
  args.out = dir.path();
  ASSERT_EQ(cmd_stability(args), exit_ok);
  const std::string region = slurp(dir / "region.csv");
  EXPECT_EQ(region.substr(0, region.find('\n')), "d,sigma,stable,smallest_unstable_k");
  EXPECT_EQ(std::count(region.begin(), region.end(), '\n'), 1 + 12 * 10);
  const nlohmann::json m = read_manifest(dir.path());
  EXPECT_EQ(m["outputs"].size(), 5u);
}
