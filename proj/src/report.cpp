#include "homlab/report.hpp"

#include <json.hpp>

#include <algorithm>

namespace homlab {

Check make_check(const std::string& name, bool pass, const std::string& expected,
                 const std::string& actual, const std::string& certification) {
  return Check{name, pass ? "pass" : "fail", expected, actual, certification, 0};
}

std::string cert_label(CertMode mode, const std::vector<std::uint64_t>& primes) {
  if (mode == CertMode::exact) return "exact";
  std::string out = "modular(";
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(primes[i]);
  }
  return out + ")";
}

bool SuiteConfig::wants(const std::string& suite) const {
  return std::find(suites.begin(), suites.end(), "all") != suites.end() ||
         std::find(suites.begin(), suites.end(), suite) != suites.end();
}

ReportSummary Report::summary() const {
  ReportSummary s;
  s.total = long(checks.size());
  for (const auto& c : checks) {
    if (c.status == "pass") ++s.passed;
    else if (c.status == "fail") ++s.failed;
    else ++s.skipped;
  }
  return s;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = schema_version;
  nlohmann::ordered_json cfg;
  for (const auto& [k, v] : config_echo) cfg[k] = v;
  j["config"] = cfg;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["status"] = c.status;
    jc["expected"] = c.expected;
    jc["actual"] = c.actual;
    jc["certification"] = c.certification;
    jc["millis"] = c.millis;
    arr.push_back(jc);
  }
  j["checks"] = arr;
  auto s = summary();
  j["summary"] = {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed},
                  {"skipped", s.skipped}};
  return j.dump(2);
}

}  // namespace homlab
