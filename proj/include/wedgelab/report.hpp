#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "wedgelab/quadric.hpp"
#include "wedgelab/wedge.hpp"

namespace wl {

// Shortest decimal string that parses back to exactly the same double.
std::string shortest_decimal(double x);

// One header row, comma separators, newline-terminated records, no quoting
// (cells must not contain commas).
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Point dumps. Every numeric cell uses shortest_decimal, so a rerun with the
// same parameters is byte-identical. With no rows only the parameter-free
// header columns are emitted.
void write_rows_csv(std::ostream& os, const EqualityReport& rep);
void write_rows_csv(std::ostream& os, const WedgeReport& rep);

// Summary objects (counts and witnesses; the point rows live in the CSVs).
nlohmann::json report_json(const EqualityReport& rep);
nlohmann::json report_json(const WedgeReport& rep);

struct CheckResult {
  std::string id;
  bool ok = false;
  double value = 0.0;  // measured quantity, interpreted per check
  double tol = 0.0;    // threshold the value was held against
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<CheckResult> checks;
  int failures() const;
};

nlohmann::json report_json(const SuiteReport& rep);

}  // namespace wl
