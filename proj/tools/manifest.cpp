#include "manifest.hpp"

#include <fstream>
#include <iostream>

namespace morphosim::cli {

RunManifest::RunManifest(std::string command, std::filesystem::path out_dir)
    : command_(std::move(command)),
      out_dir_(std::move(out_dir)),
      start_(std::chrono::steady_clock::now()) {}

void RunManifest::add_output(const std::filesystem::path& file, const std::string& kind,
                             double t) {
  nlohmann::json entry = {{"path", file.filename().string()}, {"kind", kind}};
  if (t >= 0.0) entry["t"] = t;
  outputs_.push_back(std::move(entry));
}

int RunManifest::finish(int exit_status, const std::string& status) {
  nlohmann::json j = extra_;
  add_output(out_dir_ / "manifest.json", "manifest");
  j["command"] = command_;
  j["outputs"] = outputs_;
  j["warnings"] = warnings_;
  j["exit_status"] = exit_status;
  j["status"] = status;
  j["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  std::error_code ec;
  std::filesystem::create_directories(out_dir_, ec);
  std::ofstream out(out_dir_ / "manifest.json");
  if (!out) {
    std::cerr << "warning: cannot write " << (out_dir_ / "manifest.json").string() << '\n';
    return exit_status;
  }
  out << j.dump(2) << '\n';
  return exit_status;
}

}  // namespace morphosim::cli
