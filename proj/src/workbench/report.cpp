#include "qlab/workbench/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace qlab {

std::string report_json(const std::vector<CheckRecord>& records) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["structure"] = r.structure;
    j["check"] = r.check;
    j["verdict"] = r.verdict();
    auto& w = j["witnesses"] = nlohmann::ordered_json::array();
    for (const auto& e : r.result.witness) w.push_back({{"role", e.role}, {"label", e.label}});
    j["citation"] = r.citation;
    j["millis"] = r.millis;
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

std::string report_text(const std::vector<CheckRecord>& records) {
  std::ostringstream o;
  std::size_t pass = 0, fail = 0, skipped = 0, unexpected = 0;
  for (const auto& r : records) {
    const std::string v = r.verdict();
    o << r.structure << "  " << r.check << "  " << v;
    if (!r.result.witness.empty()) o << "  [" << format_witness(r.result.witness) << "]";
    if (!r.result.note.empty()) o << "  (" << r.result.note << ")";
    if (r.expected && !*r.expected && !r.result.passed && !r.result.skipped) o << "  expected";
    if (!r.as_expected()) o << "  UNEXPECTED";
    if (r.millis > 0) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "  %.1f ms", r.millis);
      o << buf;
    }
    o << '\n';
    (r.result.skipped ? skipped : r.result.passed ? pass : fail)++;
    unexpected += !r.as_expected();
  }
  o << records.size() << " checks: " << pass << " pass, " << fail << " fail, " << skipped << " skipped; "
    << unexpected << " unexpected\n";
  return o.str();
}

}  // namespace qlab
