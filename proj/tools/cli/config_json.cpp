#include "cli/config_json.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace nlt::cli {
namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("key '") + key + "': " + e.what());
  }
}

}  // namespace

Weight WeightSpec::make(double alpha) const {
  if (unit) return Weight::unit();
  if (regime == "auto") return Weight::for_dissipation(lambda, kappa, alpha);
  if (regime == "subcritical") return Weight(lambda, kappa);
  if (regime == "supercritical") return Weight::supercritical(lambda, kappa, alpha);
  throw ConfigError("weight regime must be auto, subcritical or supercritical");
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                      ": malformed JSON: " + e.what());
  }
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_json_text(ss.str(), path.string());
}

SolverConfig solver_from_json(const json& j, SolverConfig c) {
  std::string scheme = to_string(c.scheme), policy = to_string(c.dt_policy);
  read(j, "alpha", c.alpha);
  read(j, "nu", c.nu);
  read(j, "a_param", c.a_param);
  read(j, "n_points", c.n_points);
  read(j, "length", c.length);
  read(j, "scheme", scheme);
  read(j, "dt_policy", policy);
  read(j, "dt", c.dt);
  read(j, "cfl_safety", c.cfl_safety);
  read(j, "t_final", c.t_final);
  read(j, "dealias", c.dealias);
  read(j, "nonlinear", c.nonlinear);
  try {
    c.scheme = scheme_from_string(scheme);
    c.dt_policy = dt_policy_from_string(policy);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  if (j.contains("blowup")) {
    const json& b = j.at("blowup");
    reject_unknown(b, {"grad_threshold", "tail_fraction", "dt_min"}, "blowup");
    read(b, "grad_threshold", c.blowup.grad_threshold);
    read(b, "tail_fraction", c.blowup.tail_fraction);
    read(b, "dt_min", c.blowup.dt_min);
  }
  if (j.contains("probes") && j.contains("probe_count")) {
    throw ConfigError("give either probes or probe_count, not both");
  }
  if (j.contains("probes")) {
    read(j, "probes", c.probes);
  } else {
    std::size_t count = 20;
    read(j, "probe_count", count);
    c.probes = c.t_final > 0.0 ? uniform_probes(c.t_final, count) : std::vector<double>{0.0};
  }
  return c;
}

InitialDataSpec initial_from_json(const json& j) {
  reject_unknown(j,
                 {"kind", "amplitude", "width", "center", "offset", "path", "truncation_radius",
                  "require_positive"},
                 "initial_data");
  InitialDataSpec s;
  std::string kind = to_string(s.kind);
  read(j, "kind", kind);
  try {
    s.kind = initial_kind_from_string(kind);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  read(j, "amplitude", s.amplitude);
  read(j, "width", s.width);
  read(j, "center", s.center);
  read(j, "offset", s.offset);
  read(j, "path", s.path);
  read(j, "require_positive", s.require_positive);
  if (j.contains("truncation_radius") && !j.at("truncation_radius").is_null()) {
    double r = 0.0;
    read(j, "truncation_radius", r);
    s.truncation_radius = r;
  }
  return s;
}

WeightSpec weight_from_json(const json& j) {
  WeightSpec w;
  if (j.is_string()) {
    if (j.get<std::string>() != "unit") throw ConfigError("weight must be an object or \"unit\"");
    w.unit = true;
    return w;
  }
  reject_unknown(j, {"lambda", "kappa", "regime"}, "weight");
  read(j, "lambda", w.lambda);
  read(j, "kappa", w.kappa);
  read(j, "regime", w.regime);
  return w;
}

SimulationConfig simulation_from_json(const json& j) {
  reject_unknown(j,
                 {"alpha", "nu", "a_param", "n_points", "length", "scheme", "dt_policy", "dt",
                  "cfl_safety", "t_final", "probes", "probe_count", "blowup", "dealias",
                  "nonlinear", "initial_data", "weight", "output_dir", "write_snapshots"},
                 "config");
  SimulationConfig c;
  c.solver = solver_from_json(j);
  if (j.contains("initial_data")) c.initial = initial_from_json(j.at("initial_data"));
  if (j.contains("weight")) c.weight = weight_from_json(j.at("weight"));
  read(j, "output_dir", c.output_dir);
  read(j, "write_snapshots", c.write_snapshots);
  try {
    c.solver.validate();
    (void)c.weight.make(c.solver.alpha);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return c;
}

json to_json(const SolverConfig& c) {
  return json{{"alpha", c.alpha},
              {"nu", c.nu},
              {"a_param", c.a_param},
              {"n_points", c.n_points},
              {"length", c.length},
              {"scheme", to_string(c.scheme)},
              {"dt_policy", to_string(c.dt_policy)},
              {"dt", c.dt},
              {"cfl_safety", c.cfl_safety},
              {"t_final", c.t_final},
              {"probes", c.probes},
              {"dealias", c.dealias},
              {"nonlinear", c.nonlinear},
              {"blowup",
               {{"grad_threshold", c.blowup.grad_threshold},
                {"tail_fraction", c.blowup.tail_fraction},
                {"dt_min", c.blowup.dt_min}}}};
}

json to_json(const InitialDataSpec& s) {
  json j{{"kind", to_string(s.kind)},
         {"amplitude", s.amplitude},
         {"width", s.width},
         {"center", s.center},
         {"offset", s.offset},
         {"path", s.path},
         {"require_positive", s.require_positive}};
  j["truncation_radius"] = s.truncation_radius ? json(*s.truncation_radius) : json(nullptr);
  return j;
}

json to_json(const WeightSpec& w) {
  if (w.unit) return "unit";
  return json{{"lambda", w.lambda}, {"kappa", w.kappa}, {"regime", w.regime}};
}

json to_json(const SimulationConfig& c) {
  json j = to_json(c.solver);
  j["initial_data"] = to_json(c.initial);
  j["weight"] = to_json(c.weight);
  j["output_dir"] = c.output_dir;
  j["write_snapshots"] = c.write_snapshots;
  return j;
}

std::string canonical_dump(const json& j) { return j.dump(); }

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

std::string config_hash(const SimulationConfig& c) {
  json j = to_json(c);
  j.erase("output_dir");
  return sha256_hex(canonical_dump(j));
}

}  // namespace nlt::cli
