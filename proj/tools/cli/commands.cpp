#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "nlt/diagnostics.hpp"
#include "nlt/field_io.hpp"
#include "nlt/parallel.hpp"
#include "nlt/simd/kernels.hpp"

#ifndef NLT_VERSION
#define NLT_VERSION "0.0.0"
#endif

namespace nlt::cli {
namespace fs = std::filesystem;

namespace {

void write_json(const json& j, const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

fs::path default_output_dir(const fs::path& config_path) {
  return config_path.parent_path() / (config_path.stem().string() + "_out");
}

}  // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

int cmd_simulate(const std::string& config_path, const std::string& output_dir, std::ostream& out,
                 std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  SimulationConfig cfg;
  try {
    cfg = simulation_from_json(load_json_file(config_path));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  const fs::path dir = cfg.output_dir.empty() ? default_output_dir(config_path) : fs::path(cfg.output_dir);
  try {
    fs::create_directories(dir);
    if (cfg.write_snapshots) fs::create_directories(dir / "snapshots");
    std::vector<std::string> outputs;
    const fs::path resolved = dir / "resolved_config.json";
    write_json(to_json(cfg), resolved);
    outputs.push_back(resolved.string());

    const Weight w = cfg.weight.make(cfg.solver.alpha);
    const Field theta0 = initial_data(cfg.initial, cfg.solver.grid());

    std::vector<EnergyRecord> series;
    std::ofstream traj(dir / "trajectory.csv");
    if (!traj) throw Error("cannot write trajectory.csv");
    traj << "index,t,status,snapshot\n";
    std::size_t index = 0;
    const RunSummary summary = run(cfg.solver, theta0, [&](const TrajectoryState& s) {
      series.push_back(energy_record(s.theta, w, cfg.solver, s.time));
      std::string snap;
      if (cfg.write_snapshots) {
        std::ostringstream name;
        name << "snapshots/snap_" << std::setw(5) << std::setfill('0') << index << ".bin";
        io::write_field_binary(s.theta, dir / name.str());
        snap = name.str();
        outputs.push_back((dir / snap).string());
      }
      traj << index << ',' << number(s.time) << ',' << to_string(s.status) << ',' << csv_field(snap) << '\n';
      ++index;
    });
    traj.close();
    outputs.push_back((dir / "trajectory.csv").string());

    write_energy_csv(series, (dir / "energy.csv").string());
    outputs.push_back((dir / "energy.csv").string());
    io::write_field_binary(summary.final_state.theta, dir / "final.bin");
    outputs.push_back((dir / "final.bin").string());

    const Status st = summary.final_state.status;
    const int code = st == Status::completed ? kExitOk : st == Status::blowup_suspected ? kExitBlowup : kExitError;
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const fs::path manifest = dir / "manifest.json";
    outputs.push_back(manifest.string());
    write_json(json{{"config_hash", config_hash(cfg)},
                    {"code_version", NLT_VERSION},
                    {"kernel_backend", std::string(simd::backend_name(simd::active_backend()))},
                    {"outputs", outputs},
                    {"wall_clock_seconds", wall},
                    {"status", to_string(st)},
                    {"reason", summary.final_state.reason},
                    {"final_time", summary.final_state.time},
                    {"steps", summary.steps},
                    {"max_grad", summary.max_grad},
                    {"exit_status", code}},
               manifest);
    out << to_string(st) << " t=" << summary.final_state.time << " steps=" << summary.steps
        << " output=" << dir.string() << '\n';
    if (st == Status::poisoned) err << "error: run poisoned: " << summary.final_state.reason << '\n';
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_verify(const std::string& suite, const std::string& params_path, const std::string& report_path,
               std::ostream& out, std::ostream& err) {
  try {
    const json params = params_path.empty() ? json::object() : load_json_file(params_path);
    const json report = run_suite(suite, params);
    out << report.dump(2) << '\n';
    if (!report_path.empty()) write_json(report, report_path);
    return report.at("passed").get<bool>() ? kExitOk : kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

namespace {

struct SweepRow {
  std::size_t index = 0;
  json tuple;
  std::string status = "error";
  std::string reason;
  double t_end = NAN, c_fit = NAN, l2w = NAN, hkw = NAN, sup = NAN, grad = NAN, max_grad = NAN;
  std::size_t steps = 0;
};

void run_sweep_row(const SimulationConfig& base, SweepRow& row) {
  const json& t = row.tuple;
  if (!t.is_object()) throw ConfigError("sweep tuple must be an object");
  for (const auto& [key, _] : t.items()) {
    static const std::set<std::string> allowed{"alpha", "nu", "lambda", "kappa", "n_points", "length"};
    if (!allowed.count(key)) throw ConfigError("unknown tuple key '" + key + "'");
  }
  SimulationConfig c = base;
  c.solver.alpha = t.value("alpha", c.solver.alpha);
  c.solver.nu = t.value("nu", c.solver.nu);
  c.solver.n_points = t.value("n_points", c.solver.n_points);
  c.solver.length = t.value("length", c.solver.length);
  c.weight.lambda = t.value("lambda", c.weight.lambda);
  c.weight.kappa = t.value("kappa", c.weight.kappa);
  c.solver.validate();
  const Weight w = c.weight.make(c.solver.alpha);
  const RunRecord r = run_with_diagnostics(c.solver, initial_data(c.initial, c.solver.grid()), w);
  const TrajectoryState& fs = r.summary.final_state;
  row.status = to_string(fs.status);
  row.reason = fs.reason;
  row.t_end = fs.time;
  row.steps = r.summary.steps;
  row.max_grad = r.summary.max_grad;
  const EnergyGrowthReport g = check_energy_growth(r.series, c.solver.nu);
  row.c_fit = g.fit_defined ? g.c_fit : NAN;
  const EnergyRecord e = energy_record(fs.theta, w, c.solver, fs.time);
  row.l2w = e.l2w;
  row.hkw = e.hkw;
  row.sup = e.sup_norm;
  row.grad = e.grad_sup;
}

}  // namespace

int cmd_sweep(const std::string& matrix_path, const std::string& output_csv, std::ostream& out,
              std::ostream& err) {
  json matrix;
  SimulationConfig base;
  fs::path csv_path;
  try {
    matrix = load_json_file(matrix_path);
    if (!matrix.is_object() || !matrix.contains("tuples") || !matrix.at("tuples").is_array()) {
      throw ConfigError("sweep matrix needs a \"tuples\" array");
    }
    for (const auto& [key, _] : matrix.items()) {
      if (key != "tuples" && key != "base" && key != "output") {
        throw ConfigError("unknown key '" + key + "' in sweep matrix");
      }
    }
    json b = matrix.value("base", json::object());
    b.erase("output_dir");
    base = simulation_from_json(b);
    if (!output_csv.empty()) {
      csv_path = output_csv;
    } else if (matrix.contains("output")) {
      csv_path = fs::path(matrix_path).parent_path() / matrix.at("output").get<std::string>();
    } else {
      csv_path = fs::path(matrix_path).parent_path() / (fs::path(matrix_path).stem().string() + "_sweep.csv");
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  const json& tuples = matrix.at("tuples");
  std::vector<SweepRow> rows(tuples.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].index = i;
    rows[i].tuple = tuples[i];
  }
  parallel_for(rows.size(), [&](std::size_t i) {
    try {
      run_sweep_row(base, rows[i]);
    } catch (const std::exception& e) {
      rows[i].status = "error";
      rows[i].reason = e.what();
    }
  });

  try {
    std::ofstream os(csv_path);
    if (!os) throw Error("cannot write " + csv_path.string());
    os << "index,alpha,nu,lambda,kappa,n_points,length,status,reason,t_end,steps,c_fit,final_l2w,"
          "final_hkw,final_sup,final_grad_sup,max_grad\n";
    for (const auto& r : rows) {
      auto get = [&](const char* key, const json& fallback) {
        return r.tuple.is_object() && r.tuple.contains(key) ? r.tuple.at(key) : fallback;
      };
      os << r.index << ',' << csv_field(get("alpha", base.solver.alpha).dump()) << ','
         << csv_field(get("nu", base.solver.nu).dump()) << ','
         << csv_field(get("lambda", base.weight.lambda).dump()) << ','
         << csv_field(get("kappa", base.weight.kappa).dump()) << ','
         << csv_field(get("n_points", base.solver.n_points).dump()) << ','
         << csv_field(get("length", base.solver.length).dump()) << ',' << r.status << ','
         << csv_field(r.reason) << ',' << number(r.t_end) << ',' << r.steps << ',' << number(r.c_fit)
         << ',' << number(r.l2w) << ',' << number(r.hkw) << ',' << number(r.sup) << ','
         << number(r.grad) << ',' << number(r.max_grad) << '\n';
    }
    if (!os) throw Error("write failed: " + csv_path.string());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  bool any_error = false, any_blowup = false;
  for (const auto& r : rows) {
    any_error = any_error || r.status == "error" || r.status == "poisoned";
    any_blowup = any_blowup || r.status == "blowup_suspected";
    if (r.status == "error") err << "row " << r.index << ": " << r.reason << '\n';
  }
  out << rows.size() << " rows written to " << csv_path.string() << '\n';
  if (any_error) return kExitError;
  return any_blowup ? kExitBlowup : kExitOk;
}

int cmd_norms(const std::string& field_path, const std::string& config_path, std::ostream& out,
              std::ostream& err) {
  try {
    const SimulationConfig cfg = simulation_from_json(load_json_file(config_path));
    const Field f = io::read_field_binary(field_path);
    if (!(f.grid == cfg.solver.grid())) throw ConfigError("field grid does not match config grid");
    const EnergyRecord r = energy_record(f, cfg.weight.make(cfg.solver.alpha), cfg.solver);
    if (r.poisoned) throw PoisonedFieldError("field contains non-finite values");
    out << json{{"field", field_path},
                {"n_points", f.size()},
                {"length", f.grid.length()},
                {"k", r.k},
                {"l2w", r.l2w},
                {"hkw", r.hkw},
                {"dissipation", r.dissipation},
                {"dissipation_k", r.dissipation_k},
                {"h2w", r.h2w},
                {"sup", r.sup_norm},
                {"grad_sup", r.grad_sup}}
               .dump(2)
        << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlocal transport solver and weighted harmonic-analysis checks"};
  app.set_version_flag("--version", std::string(NLT_VERSION));
  app.require_subcommand(1);

  std::string config, output, suite, params, report, matrix, field;
  auto* sim = app.add_subcommand("simulate", "Run one simulation from a JSON config");
  sim->add_option("config", config, "Config JSON")->required();
  sim->add_option("-o,--output", output, "Output directory (overrides the config)");

  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  ver->add_option("params", params, "Suite parameters JSON");
  ver->add_option("-r,--report", report, "Also write the JSON report here");

  auto* swp = app.add_subcommand("sweep", "Run a parameter matrix");
  swp->add_option("matrix", matrix, "Matrix JSON")->required();
  swp->add_option("-o,--output", output, "CSV path (overrides the matrix)");

  auto* nrm = app.add_subcommand("norms", "Energy functionals of a field dump");
  nrm->add_option("field", field, "Binary field dump")->required();
  nrm->add_option("config", config, "Config JSON (alpha, weight, grid)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitError;
  }
  if (*sim) return cmd_simulate(config, output, out, err);
  if (*ver) return cmd_verify(suite, params, report, out, err);
  if (*swp) return cmd_sweep(matrix, output, out, err);
  if (*nrm) return cmd_norms(field, config, out, err);
  return kExitError;
}

}  // namespace nlt::cli
