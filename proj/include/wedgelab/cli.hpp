#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace wl {

// Malformed user input: config files, unknown names, unsupported sampling
// combinations. The executable maps this to exit code 2; invariant failures
// keep exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key=value runtime options; '#' starts a comment, blank lines are
// ignored. Keys: n, seed, tol_scale, out. Unknown keys and bad values are
// reported with origin:line diagnostics.
struct RunConfig {
  int n = -1;              // -1 selects the per-suite default
  std::uint64_t seed = 2026;
  double tol_scale = 1.0;  // multiplies every check threshold
  std::string out;         // optional JSON report path
};

RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig parse_config_file(const std::string& path);

// Classification table plus recomputed invariants of the realized rows.
// family may be empty (all rows) or one of the four family names.
int run_catalog(std::ostream& os, const std::string& family = "");

// suite: linop | liealg | roots | polar | quadric | wedge | all. Prints a
// JSON report carrying every measured value; returns 1 iff a check failed.
// With n = 0 the sampled checks are dropped and only closed-form and grid
// checks remain.
int run_verify(std::ostream& os, const std::string& suite,
               const RunConfig& cfg);

// domain: positivity | polar | kms | tube. Writes a CSV point dump to
// out_path (or to os when the path is empty); a rerun with the same
// parameters is byte-identical.
int run_sample(std::ostream& os, const std::string& spec,
               const std::string& domain, int n, std::uint64_t seed,
               const std::string& out_path);

}  // namespace wl
