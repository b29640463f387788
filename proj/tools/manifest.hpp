#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace morphosim::cli {

/// Record of one CLI run, written as manifest.json next to its outputs.
class RunManifest {
 public:
  RunManifest(std::string command, std::filesystem::path out_dir);

  void set(const std::string& key, nlohmann::json value) { extra_[key] = std::move(value); }
  void add_output(const std::filesystem::path& file, const std::string& kind, double t = -1.0);
  void warn(std::string message) { warnings_.push_back(std::move(message)); }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Writes manifest.json into the output directory; returns `exit_status`.
  int finish(int exit_status, const std::string& status);

 private:
  std::string command_;
  std::filesystem::path out_dir_;
  std::chrono::steady_clock::time_point start_;
  nlohmann::json extra_ = nlohmann::json::object();
  nlohmann::json outputs_ = nlohmann::json::array();
  std::vector<std::string> warnings_;
};

}  // namespace morphosim::cli
