#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "levybox/config.hpp"

namespace levybox {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct OutputFile {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  nlohmann::json config;
  std::string version = kToolkitVersion;
  std::string started_utc;
  double duration_seconds = 0.0;
  std::map<std::string, double> error_budgets;
  std::vector<OutputFile> outputs;
  std::vector<std::string> warnings;
  std::string status = "ok";  // "ok" or "tolerance_failure"
  std::string failure;

  nlohmann::json to_json() const;
};

/// io.output_dir, placed under $LEVYBOX_OUTPUT_ROOT when that is set and the
/// configured directory is relative.
std::filesystem::path resolve_output_dir(const IoConfig& io);

/// Runs the configured command, writes its data file and then manifest.json
/// into the output directory. Verification shortfalls set status to
/// "tolerance_failure" after the artifacts are written; numerical and I/O
/// errors propagate as exceptions.
RunManifest run(const RunConfig& cfg);

/// Data rows for the configured command without touching the filesystem.
struct CommandOutput {
  const Schema* schema = nullptr;
  std::vector<Row> rows;
  std::map<std::string, double> error_budgets;
  std::vector<std::string> warnings;
  std::string failure;  // non-empty when a verification target was missed
};
CommandOutput compute(const RunConfig& cfg);

}  // namespace levybox
