// Command-line front end: check | verify | estimate | growth | discretize | catalog.

#ifndef SCHURMARC_CLI_HPP
#define SCHURMARC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace schurmarc {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitInputError = 2 };

/// args excludes the program name.  Diagnostics go to err, results to out
/// unless --out names a file.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SuiteResult {
  std::string name;
  int trials = 0;
  double max_residual = 0.0;
  double tolerance = 1e-10;
  bool passed() const { return max_residual <= tolerance; }
};

struct VerifyOptions {
  int trials = 200;
  std::uint64_t seed = 0;
  /// plant one wrong coefficient in the transference suite
  bool inject_fault = false;
  double tolerance = 1e-10;
};

/// Exact-identity suites: transference, 1D and 2D summation by parts, the
/// discrete fundamental theorem, and the operator Cauchy-Schwarz gap (its
/// residual is the negative part of the gap).
std::vector<SuiteResult> verify_identities(const VerifyOptions& opts);

}  // namespace schurmarc

#endif  // SCHURMARC_CLI_HPP
