#include "config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <morphosim/error.hpp>
#include <morphosim/stability.hpp>

namespace morphosim::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw InvalidArgument(key + ": expected a number, got '" + v + "'");
  }
  return out;
}

long long to_integer(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw InvalidArgument(key + ": expected an integer, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InvalidArgument(key + ": expected true or false, got '" + v + "'");
}

// "2:1e-4, 3:-2e-4"
std::vector<std::pair<int, double>> to_modes(const std::string& key, const std::string& v) {
  std::vector<std::pair<int, double>> modes;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw InvalidArgument(key + ": expected k:amplitude pairs, got '" + item + "'");
    }
    const long long k = to_integer(key, trim(item.substr(0, colon)));
    modes.emplace_back(static_cast<int>(k), to_double(key, trim(item.substr(colon + 1))));
  }
  if (modes.empty()) throw InvalidArgument(key + ": no modes given");
  return modes;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"dim",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         const long long d = to_integer(k, v);
         if (d != 2 && d != 3) throw InvalidArgument(k + ": must be 2 or 3");
         c.sim.params.dim = d == 2 ? Dimension::two : Dimension::three;
       }},
      {"P", [](RunConfig& c, auto& k, auto& v) { c.sim.params.P = to_double(k, v); }},
      {"nu", [](RunConfig& c, auto& k, auto& v) { c.sim.params.nu = to_double(k, v); }},
      {"d",
       [](RunConfig& c, auto& k, auto& v) {
         c.sim.params.F = CouplingFunction::power(to_double(k, v));
       }},
      {"sigma", [](RunConfig& c, auto& k, auto& v) { c.sim.params.sigma = to_double(k, v); }},
      {"inflating",
       [](RunConfig& c, auto& k, auto& v) { c.sim.params.inflating = to_bool(k, v); }},
      {"gamma", [](RunConfig& c, auto& k, auto& v) { c.sim.params.gamma = to_double(k, v); }},
      {"alpha", [](RunConfig& c, auto& k, auto& v) { c.sim.params.alpha = to_double(k, v); }},
      {"beta", [](RunConfig& c, auto& k, auto& v) { c.sim.params.beta = to_double(k, v); }},
      {"m", [](RunConfig& c, auto& k, auto& v) { c.sim.m = static_cast<int>(to_integer(k, v)); }},
      {"L0", [](RunConfig& c, auto& k, auto& v) { c.sim.L0 = to_double(k, v); }},
      {"cfl", [](RunConfig& c, auto& k, auto& v) { c.sim.time.cfl = to_double(k, v); }},
      {"max_dt", [](RunConfig& c, auto& k, auto& v) { c.sim.time.max_dt = to_double(k, v); }},
      {"T", [](RunConfig& c, auto& k, auto& v) { c.sim.time.end_time = to_double(k, v); }},
      {"ic",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v == "random") {
           c.sim.initial.kind = InitialCondition::Kind::random;
         } else if (v == "modes") {
           c.sim.initial.kind = InitialCondition::Kind::modes;
         } else if (v == "sphere") {
           c.sim.initial.kind = InitialCondition::Kind::sphere;
         } else {
           throw InvalidArgument(k + ": must be random, modes or sphere");
         }
       }},
      {"ic_modes", [](RunConfig& c, auto& k, auto& v) { c.sim.initial.modes = to_modes(k, v); }},
      {"ic_count",
       [](RunConfig& c, auto& k, auto& v) {
         c.sim.initial.count = static_cast<int>(to_integer(k, v));
       }},
      {"ic_amplitude",
       [](RunConfig& c, auto& k, auto& v) { c.sim.initial.amplitude = to_double(k, v); }},
      {"ic_close", [](RunConfig& c, auto& k, auto& v) { c.sim.initial.close = to_bool(k, v); }},
      {"seed",
       [](RunConfig& c, auto& k, auto& v) {
         const long long s = to_integer(k, v);
         if (s < 0) throw InvalidArgument(k + ": must be non-negative");
         c.sim.seed = static_cast<std::uint64_t>(s);
       }},
      {"output_interval",
       [](RunConfig& c, auto& k, auto& v) { c.sim.output_interval = to_double(k, v); }},
      {"modes",
       [](RunConfig& c, auto& k, auto& v) { c.sim.mode_count = static_cast<int>(to_integer(k, v)); }},
      {"closure_tolerance",
       [](RunConfig& c, auto& k, auto& v) { c.sim.closure_tolerance = to_double(k, v); }},
      {"project_closure",
       [](RunConfig& c, auto& k, auto& v) { c.sim.project_closure = to_bool(k, v); }},
      {"stop_min_dphi",
       [](RunConfig& c, auto& k, auto& v) { c.sim.stop_min_dphi = to_double(k, v); }},
      {"snapshot_interval",
       [](RunConfig& c, auto& k, auto& v) { c.output.snapshot_interval = to_double(k, v); }},
      {"mesh_interval",
       [](RunConfig& c, auto& k, auto& v) { c.output.mesh_interval = to_double(k, v); }},
      {"mesh_resolution",
       [](RunConfig& c, auto& k, auto& v) {
         c.output.mesh_resolution = static_cast<int>(to_integer(k, v));
       }},
  };
  return table;
}

}  // namespace

std::vector<KeyValue> read_key_values(std::istream& in, const std::string& source) {
  std::vector<KeyValue> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(number) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidArgument(where + "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw InvalidArgument(where + "missing key");
    if (value.empty()) throw InvalidArgument(where + key + ": missing value");
    out.push_back({std::move(key), std::move(value), where});
  }
  return out;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  for (const auto& [key, value, where] : read_key_values(in, source)) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw InvalidArgument(where + "unknown key '" + key + "'");
    try {
      it->second(cfg, key, value);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(where + e.what());
    }
    cfg.echo.emplace_back(key, value);
  }
  if (cfg.output.snapshot_interval < 0.0) {
    throw InvalidArgument(source + ": snapshot_interval: must be non-negative");
  }
  if (cfg.output.mesh_interval < 0.0) {
    throw InvalidArgument(source + ": mesh_interval: must be non-negative");
  }
  if (cfg.output.mesh_resolution < 3) {
    throw InvalidArgument(source + ": mesh_resolution: must be at least 3");
  }
  try {
    cfg.sim.validate();
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(source + ": " + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file " + path.string());
  return parse_config(in, path.string());
}

Range parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(trim(item));
  if (parts.size() != 3) throw InvalidArgument("range '" + text + "': expected A:B:N");
  Range r{to_double("range", parts[0]), to_double("range", parts[1]),
          static_cast<int>(to_integer("range", parts[2]))};
  if (r.count < 1) throw InvalidArgument("range '" + text + "': N must be >= 1");
  if (r.hi < r.lo) throw InvalidArgument("range '" + text + "': B must be >= A");
  return r;
}

}  // namespace morphosim::cli
