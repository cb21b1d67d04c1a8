#pragma once

#include <iosfwd>
#include <string>

#include "radmul/config.hpp"
#include "radmul/report.hpp"

namespace radmul {

enum ExitCode : int { exit_pass = 0, exit_check_failure = 1, exit_usage = 2 };

/// Suites: all, pp, fock, operators, lemmas, cases, theorem, spanning.
VerificationReport run_suite(const RunConfig& cfg, const std::string& suite);

int cmd_symbol(const RunConfig& cfg, const std::string& csv_path, std::ostream& out);
int cmd_verify(const RunConfig& cfg, const std::string& suite, const std::string& report_path, std::ostream& out);
int cmd_bound(const RunConfig& cfg, std::ostream& out);

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace radmul
