#pragma once

// Scenario files: loading, validation, execution and report writing for the
// command-line runner.

#include "torsor/field_library.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace torsor::scenario {

using json = nlohmann::json;

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  std::string name;
  std::vector<CheckResult> checks;
  std::vector<std::string> outputs;  ///< written files, in order
  bool passed() const;
};

struct RunOptions {
  std::string out_dir = ".";
  double tolerance_scale = 1.0;
  std::optional<std::uint64_t> seed;
};

struct Info {
  std::string name;
  std::string kind;
  std::string medium;
  std::string description;
  std::string exercises;
  std::string path;
};

/// Parses and validates a scenario file; throws ConfigError naming the key.
json load(const std::string& path);
Info info_of(const json& scenario, const std::string& path);

/// Runs the scenario, writes its outputs under opts.out_dir and returns the checks.
Report run(const std::string& path, const RunOptions& opts);

/// Bundled scenarios in dir, sorted by name.
std::vector<Info> list(const std::string& dir);
/// Throws ConfigError (key "name") when no scenario of that name exists.
Info describe(const std::string& dir, const std::string& name);

/// Fixed 17-significant-digit formatting used by every emitted table.
std::string format_double(double v);

}  // namespace torsor::scenario
