#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "banditlab/json_io.hpp"
#include "banditlab/stats.hpp"

namespace banditlab::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Writes through a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

void ensure_directory(const std::filesystem::path& dir);

/// Record of one CLI invocation, stored as manifest.json next to its outputs.
struct RunManifest {
  std::string command;
  std::string config_hash;
  std::uint64_t master_seed = 0;
  Json config;  // resolved config(s), enough to re-run
  std::vector<std::string> outputs;
  double wall_clock_seconds = 0.0;
};

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

/// FNV-1a of the canonical dump of an arbitrary JSON document.
std::string json_hash(const Json& j);

std::string histogram_csv(const Histogram& h, const std::vector<double>& reference_density = {});

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace banditlab::cli
