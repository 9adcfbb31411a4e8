#pragma once
// JSON <-> run configuration. Unknown keys are rejected so that typos fail
// loudly instead of silently running defaults.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "nlt/error.hpp"
#include "nlt/solver.hpp"
#include "nlt/weights.hpp"

namespace nlt::cli {

using json = nlohmann::json;

/// Malformed or invalid configuration; message carries line/column when known.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct WeightSpec {
  bool unit = false;
  double lambda = 0.5;
  int kappa = 2;
  /// "subcritical" (weight admissibility only), "supercritical" (also
  /// lambda < alpha/2 with alpha <= 1) or "auto" (supercritical iff alpha <= 1).
  std::string regime = "subcritical";

  Weight make(double alpha) const;
};

struct SimulationConfig {
  SolverConfig solver;
  InitialDataSpec initial;
  WeightSpec weight;
  std::string output_dir;  ///< empty: <config stem>_out beside the config
  bool write_snapshots = true;
};

/// Parses a file; syntax errors become ConfigError with line and column.
json load_json_file(const std::filesystem::path& path);
json parse_json_text(const std::string& text, const std::string& origin);

SolverConfig solver_from_json(const json& j, SolverConfig base = {});
InitialDataSpec initial_from_json(const json& j);
WeightSpec weight_from_json(const json& j);
SimulationConfig simulation_from_json(const json& j);

json to_json(const SolverConfig& c);
json to_json(const InitialDataSpec& s);
json to_json(const WeightSpec& w);
/// Fully resolved document, defaults expanded.
json to_json(const SimulationConfig& c);

/// Sorted keys, no whitespace.
std::string canonical_dump(const json& j);
std::string sha256_hex(const std::string& bytes);
/// SHA-256 of the canonical resolved config without output_dir.
std::string config_hash(const SimulationConfig& c);

}  // namespace nlt::cli
