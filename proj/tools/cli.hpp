#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace yule::cli {

inline constexpr const char* kToolVersion = "yule 1.0.0";

enum ExitCode { kOk = 0, kUsage = 2, kNonConvergence = 3, kTableDiff = 4 };

struct TableRow {
  std::string label;  // n or k
  double reference;
  double computed;
  double abs_diff;
  double rel_diff;
  double tol;
  bool relative;  // tol applies to rel_diff, else abs_diff
  bool converged;
  bool pass;
};

/// Reference values: "table1" (n, E[(sqrt(n) theta_n)^2], alpha = 0.1, last row n = inf),
/// "table2" (k, moments at n = 30, alpha = 0.05), "table3" (same, r = 0.1).
std::vector<std::pair<std::string, double>> reference_table(const std::string& which);

/// Recomputes a reference table with per-cell tolerances.
std::vector<TableRow> compute_table(const std::string& which, int threads = 0);

/// Parses "a:b:xk" (geometric), "a:b:+k" (arithmetic) or "a,b,c".
std::vector<int> parse_int_range(const std::string& spec);

/// Reads moments from "value" lines (k = 0, 1, ...) or "k,value" lines; '#' starts a comment.
std::vector<double> read_moments_file(const std::string& path);

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace yule::cli
