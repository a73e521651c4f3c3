#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ek {

/// Tunables shared by the subcommands. Values come from (in increasing
/// precedence) built-in defaults, the JSON config file named by the
/// ENDOSCOPY_KIT_CONFIG environment variable, the file named by --config,
/// and individual command-line flags.
struct CliConfig {
    long long max_weyl_count = 1000000; // enumeration guard
    double v_probe = 0.5;               // evaluation point for the rank-one table
    double lir_tolerance = 1e-6;        // scalar-vs-table comparison tolerance
    double bruteforce_rel_tol = 1e-8;   // direct-quadrature relative tolerance
    std::string size_flag = "pi0_s";    // or "pi0_sbar": component group normalization
};

/// Entry point used by both the binary and the tests. Returns the process
/// exit code: 0 success, 1 verification failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ek
