#include "wedgelab/report.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace wl {

std::string shortest_decimal(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc())
    throw std::runtime_error("decimal formatting failed");
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) {
    if (r.size() != header.size())
      throw std::invalid_argument("csv row width does not match the header");
    line(r);
  }
}

void write_rows_csv(std::ostream& os, const EqualityReport& rep) {
  std::vector<std::string> header{"index"};
  const int d = rep.rows.empty() ? 0 : static_cast<int>(rep.rows[0].x.size());
  const int k =
      rep.rows.empty() ? 0 : static_cast<int>(rep.rows[0].margins.size());
  for (int i = 0; i < d; ++i) header.push_back("x" + std::to_string(i));
  for (int i = 0; i < k; ++i) header.push_back("margin_" + std::to_string(i));
  for (int i = 0; i < k; ++i) header.push_back("member_" + std::to_string(i));
  header.push_back("verdict");

  std::vector<std::vector<std::string>> rows;
  rows.reserve(rep.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    std::vector<std::string> cells{std::to_string(i)};
    for (int j = 0; j < d; ++j) cells.push_back(shortest_decimal(r.x[j]));
    for (int j = 0; j < k; ++j)
      cells.push_back(shortest_decimal(r.margins[j]));
    for (int j = 0; j < k; ++j) cells.push_back(std::to_string(r.member[j]));
    cells.push_back(std::to_string(r.verdict));
    rows.push_back(std::move(cells));
  }
  write_csv(os, header, rows);
}

void write_rows_csv(std::ostream& os, const WedgeReport& rep) {
  static const char* route[3] = {"pos", "polar", "kms"};
  std::vector<std::string> header{"index", "source"};
  const int d =
      rep.rows.empty() ? 0 : static_cast<int>(rep.rows[0].point.size());
  for (int i = 0; i < d; ++i) header.push_back("x" + std::to_string(i));
  for (int i = 0; i < 3; ++i)
    header.push_back(std::string("margin_") + route[i]);
  for (int i = 0; i < 3; ++i)
    header.push_back(std::string("member_") + route[i]);
  header.push_back("verdict");

  std::vector<std::vector<std::string>> rows;
  rows.reserve(rep.rows.size());
  for (const auto& r : rep.rows) {
    std::vector<std::string> cells{std::to_string(r.index),
                                   std::to_string(r.source)};
    for (int j = 0; j < d; ++j) cells.push_back(shortest_decimal(r.point[j]));
    for (int j = 0; j < 3; ++j)
      cells.push_back(shortest_decimal(r.tests.margin[j]));
    for (int j = 0; j < 3; ++j)
      cells.push_back(r.tests.member[j] ? "1" : "0");
    cells.push_back(std::to_string(r.tests.verdict));
    rows.push_back(std::move(cells));
  }
  write_csv(os, header, rows);
}

nlohmann::json report_json(const EqualityReport& rep) {
  return {{"samples", rep.samples},
          {"interior", rep.interior},
          {"boundary", rep.boundary},
          {"disagreements", rep.disagreements},
          {"routes", rep.rows.empty()
                         ? 0
                         : static_cast<int>(rep.rows[0].margins.size())}};
}

nlohmann::json report_json(const WedgeReport& rep) {
  nlohmann::json j{{"spec", rep.spec_id},
                   {"seed", rep.seed},
                   {"samples", rep.samples},
                   {"interior", rep.interior},
                   {"exterior", rep.exterior},
                   {"indeterminate", rep.indeterminate},
                   {"disagreements", rep.disagreements}};
  j["domain_counts"] = rep.domain_counts;
  j["agreement"] = rep.agreement;
  j["witnesses"] = rep.witnesses;
  return j;
}

int SuiteReport::failures() const {
  int n = 0;
  for (const auto& c : checks) n += c.ok ? 0 : 1;
  return n;
}

nlohmann::json report_json(const SuiteReport& rep) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rep.checks)
    checks.push_back(
        {{"id", c.id}, {"ok", c.ok}, {"value", c.value}, {"tol", c.tol}});
  return {{"suite", rep.suite},
          {"seed", rep.seed},
          {"samples", rep.samples},
          {"failures", rep.failures()},
          {"checks", checks}};
}

}  // namespace wl
