#pragma once
// Subcommands of the nlt tool. Exit codes: 0 success, 1 usage or error,
// 2 blow-up suspected.

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config_json.hpp"

namespace nlt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBlowup = 2;

/// Optional override of the config's output directory.
int cmd_simulate(const std::string& config_path, const std::string& output_dir, std::ostream& out,
                 std::ostream& err);

/// Suites: lemma31, lemma_in, lemma33, bernstein, cordoba, mazya, ap.
int cmd_verify(const std::string& suite, const std::string& params_path, const std::string& report_path,
               std::ostream& out, std::ostream& err);

int cmd_sweep(const std::string& matrix_path, const std::string& output_csv, std::ostream& out,
              std::ostream& err);

int cmd_norms(const std::string& field_path, const std::string& config_path, std::ostream& out,
              std::ostream& err);

/// Suite runner shared with cmd_verify; returns the JSON report.
json run_suite(const std::string& suite, const json& params);

const std::vector<std::string>& suite_names();

/// Full command line dispatch (argv[0] is the program name).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

}  // namespace nlt::cli
