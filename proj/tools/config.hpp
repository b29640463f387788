#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include <morphosim/dynamics.hpp>
#include <morphosim/stability.hpp>

namespace morphosim::cli {

/// Output options that live next to the simulation config.
struct OutputOptions {
  double snapshot_interval = 0.0;  // 0: initial and final profile only
  double mesh_interval = 0.0;      // 0: final mesh only
  int mesh_resolution = 48;
};

struct RunConfig {
  SimConfig sim;
  OutputOptions output;
  /// Every key as written, in file order, for the manifest.
  std::vector<std::pair<std::string, std::string>> echo;
};

/// Flat "key = value" lines, '#' starts a comment. Unknown keys and malformed
/// values throw InvalidArgument naming the line and key.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

struct KeyValue {
  std::string key;
  std::string value;
  std::string where;  // "source:line: " for error messages
};

/// Raw key/value pairs of a flat config file, in order.
std::vector<KeyValue> read_key_values(std::istream& in, const std::string& source);

/// "A:B:N" for scan ranges.
Range parse_range(const std::string& text);

}  // namespace morphosim::cli
