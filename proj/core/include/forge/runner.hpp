#pragma once

#include <array>
#include <map>
#include <string>

#include "forge/holo.hpp"

namespace forge {

struct GridAxis {
  double lo = 0, hi = 0;
  int count = 2;
};

struct RunConfig {
  HoloData data;
  std::array<GridAxis, 4> grid;  // x, y, u1, u2
  std::map<std::string, double> tolerances;
  std::string out_dir = ".";
  int jobs = 1;
  unsigned long long seed = 1;

  double tol(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
};

// Parses the schema-1 JSON config. Throws ConfigError on malformed input.
RunConfig parse_config(const std::string& json_text);

// Command entry points; each returns the process exit code
// (0 ok, 1 math gate failure, 2 config error, 3 non-convergence)
// and writes its report/grid under config.out_dir.
int cmd_validate(const RunConfig& config);
int cmd_metric(const RunConfig& config);
int cmd_verify(const RunConfig& config);

// Writes a ready-to-run example config named `name` ("linear",
// "fubini_study", "rational_d2") to <out_dir>/<name>.json; returns exit code.
int cmd_example(const std::string& name, const std::string& out_dir);

}  // namespace forge
