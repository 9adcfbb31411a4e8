#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"

using namespace nlt;
using namespace nlt::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "nlt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nlt_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream is(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

const char* kSubcritical = R"({"alpha": 1.5, "nu": 1, "n_points": 512, "length": 40,
  "t_final": 1.0, "probe_count": 10, "weight": {"lambda": 0.5, "kappa": 2}})";

}  // namespace

TEST_CASE("simulate: subcritical run") {
  const fs::path dir = scratch("sim");
  const fs::path cfg = write(dir / "run.json", kSubcritical);
  const Result r = invoke({"simulate", cfg.string()});
  CHECK(r.code == kExitOk);
  const fs::path out = dir / "run_out";
  const auto energy = lines(out / "energy.csv");
  REQUIRE(!energy.empty());
  CHECK(energy[0] == "t,l2w,hkw,dissipation,sup,grad_sup");
  CHECK(energy.size() == 1 + 11);  // header + probe count
  const json manifest = load_json_file(out / "manifest.json");
  CHECK(manifest.at("exit_status") == 0);
  CHECK(manifest.at("status") == "completed");
  for (const auto& f : manifest.at("outputs")) CHECK(fs::exists(f.get<std::string>()));
  const json resolved = load_json_file(out / "resolved_config.json");
  CHECK(resolved.at("scheme") == "etd2");
  CHECK(resolved.at("probes").size() == 11);

  // Deterministic outputs.
  const std::string first = slurp(out / "energy.csv");
  CHECK(invoke({"simulate", cfg.string(), "-o", (dir / "again").string()}).code == kExitOk);
  CHECK(slurp(dir / "again" / "energy.csv") == first);
  CHECK(slurp(dir / "again" / "final.bin") == slurp(out / "final.bin"));

  const Result n = invoke({"norms", (out / "final.bin").string(), cfg.string()});
  CHECK(n.code == kExitOk);
  const json nj = json::parse(n.out);
  CHECK(nj.at("k") == 0.0);
  CHECK(nj.at("l2w").get<double>() > 0.0);
}

TEST_CASE("simulate: inviscid blow-up saves a partial trajectory") {
  const fs::path dir = scratch("blow");
  const fs::path cfg = write(dir / "blow.json", R"({
    "alpha": 1.0, "nu": 0, "n_points": 2048, "length": 6.283185307179586, "t_final": 3,
    "probe_count": 30, "cfl_safety": 0.2, "blowup": {"grad_threshold": 10},
    "initial_data": {"kind": "cosine_bump", "amplitude": 2, "width": 3.141592653589793,
                     "offset": 1, "require_positive": true}})");
  const Result r = invoke({"simulate", cfg.string()});
  CHECK(r.code == kExitBlowup);
  const auto traj = lines(dir / "blow_out" / "trajectory.csv");
  REQUIRE(traj.size() > 2);
  CHECK(traj.back().find("blowup_suspected") != std::string::npos);
  CHECK(fs::exists(dir / "blow_out" / "final.bin"));
  const json manifest = load_json_file(dir / "blow_out" / "manifest.json");
  CHECK(manifest.at("exit_status") == 2);
  CHECK(manifest.at("final_time").get<double>() < 3.0);
}

TEST_CASE("simulate: errors") {
  const fs::path dir = scratch("err");
  CHECK(invoke({"simulate", (dir / "missing.json").string()}).code == kExitError);
  const Result bad = invoke({"simulate", write(dir / "bad.json", "{\n  \"alpha\": 1.5,\n  oops\n}").string()});
  CHECK(bad.code == kExitError);
  CHECK(bad.err.find("bad.json:3:") != std::string::npos);
  CHECK(invoke({"simulate", write(dir / "typo.json", R"({"alhpa": 1.0})").string()}).code == kExitError);
  CHECK(invoke({"simulate", write(dir / "range.json", R"({"alpha": 2.0})").string()}).code == kExitError);
  CHECK(invoke({}).code == kExitError);
  CHECK(invoke({"bogus"}).code == kExitError);
  CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("canonical config hash ignores key order and whitespace") {
  const json a = parse_json_text(R"({"alpha":1.2,"nu":0.5,"weight":{"kappa":2,"lambda":0.3}})", "a");
  const json b = parse_json_text("{ \"weight\" : { \"lambda\" : 0.3 ,\n \"kappa\" : 2 },\n \"nu\":0.5, \"alpha\": 1.2 }", "b");
  CHECK(canonical_dump(a) == canonical_dump(b));
  const SimulationConfig ca = simulation_from_json(a);
  const SimulationConfig cb = simulation_from_json(b);
  CHECK(config_hash(ca) == config_hash(cb));
  CHECK(config_hash(ca).size() == 64);
  // Resolved config round-trips to the same hash; output_dir is excluded.
  SimulationConfig moved = simulation_from_json(to_json(ca));
  moved.output_dir = "elsewhere";
  CHECK(config_hash(moved) == config_hash(ca));
  const json c = parse_json_text(R"({"alpha":1.25,"nu":0.5,"weight":{"kappa":2,"lambda":0.3}})", "c");
  CHECK(config_hash(simulation_from_json(c)) != config_hash(ca));
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("verify suites") {
  const fs::path dir = scratch("verify");
  const Result l31 = invoke({"verify", "lemma31"});
  CHECK(l31.code == kExitOk);
  CHECK(json::parse(l31.out).at("cases").size() == 3);

  const Result ap = invoke({"verify", "ap", write(dir / "unit.json", R"({"weight": "unit"})").string()});
  CHECK(ap.code == kExitOk);
  for (const auto& c : json::parse(ap.out).at("cases")) {
    CHECK(std::abs(c.at("constant").get<double>() - 1.0) <= 1e-12);
  }

  const Result sup = invoke({"verify", "lemma31",
                          write(dir / "sup.json", R"({"cases": [{"alpha": 0.6, "lambda": 0.3, "kappa": 2,
                                                      "regime": "supercritical"}]})")
                              .string()});
  CHECK(sup.code == kExitError);
  CHECK(sup.err.find("lambda < alpha/2") != std::string::npos);

  CHECK(invoke({"verify", "nosuch"}).code == kExitError);
  for (const std::string s : {"cordoba", "mazya", "bernstein"}) {
    const fs::path rep = dir / (s + ".json");
    CHECK(invoke({"verify", s, "-r", rep.string()}).code == kExitOk);
    CHECK(load_json_file(rep).at("passed") == true);
  }
}

TEST_CASE("sweep") {
  const fs::path dir = scratch("sweep");
  const std::string base =
      R"("base": {"n_points": 256, "length": 40, "t_final": 0.5, "probe_count": 5,
                  "weight": {"lambda": 0.1, "kappa": 2}})";
  const fs::path two = write(dir / "two.json", "{" + base + R"(, "tuples": [{"alpha": 1.5}, {"alpha": 1.5}]})");
  CHECK(invoke({"sweep", two.string()}).code == kExitOk);
  const auto rows = lines(dir / "two_sweep.csv");
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].substr(rows[1].find(',')) == rows[2].substr(rows[2].find(',')));

  const fs::path alphas = write(dir / "alphas.json", "{" + base + R"(, "output": "alphas.csv", "tuples": [
      {"alpha": 0.3, "nu": 1}, {"alpha": 0.8, "nu": 1}, {"alpha": 1.2, "nu": 1}, {"alpha": 1.7, "nu": 1}]})");
  const Result r = invoke({"sweep", alphas.string()});
  CHECK((r.code == kExitOk || r.code == kExitBlowup));
  const auto arows = lines(dir / "alphas.csv");
  REQUIRE(arows.size() == 5);
  for (std::size_t i = 1; i < arows.size(); ++i) {
    const bool ok = arows[i].find(",completed,") != std::string::npos ||
                    arows[i].find(",blowup_suspected,") != std::string::npos;
    CHECK(ok);
    CHECK(arows[i].find("nan") == std::string::npos);
  }

  const fs::path partial = write(dir / "partial.json", "{" + base + R"(, "tuples": [{"alpha": 1.5}, {"alpha": 3.0}, {"alpha": 1.0}]})");
  CHECK(invoke({"sweep", partial.string()}).code == kExitError);
  const auto prows = lines(dir / "partial_sweep.csv");
  REQUIRE(prows.size() == 4);
  CHECK(prows[2].find(",error,") != std::string::npos);
  CHECK(prows[3].find(",completed,") != std::string::npos);
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}
