#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homlab/linalg.hpp"

namespace homlab {

/// One verification check, as it appears in reports.
struct Check {
  std::string name;
  std::string status;  // pass | fail | skipped-budget
  std::string expected;
  std::string actual;
  std::string certification;  // exact | modular(p1,p2,...)
  long millis = 0;

  bool passed() const { return status == "pass"; }
  bool failed() const { return status == "fail"; }
};

Check make_check(const std::string& name, bool pass, const std::string& expected,
                 const std::string& actual, const std::string& certification);

std::string cert_label(CertMode mode, const std::vector<std::uint64_t>& primes);

struct SuiteConfig {
  int g = 2;
  int L = 2;
  std::vector<std::string> suites{"all"};  // lattice | ring | fox | presentation | all
  std::string mode = "hybrid";             // exact | modular | hybrid
  long sample_count = 500;
  std::uint64_t seed = 1;
  std::string cache_dir;
  std::string report_path;
  int worker_count = 1;
  std::uint32_t exact_col_cap = 20000;

  bool wants(const std::string& suite) const;
};

struct ReportSummary {
  long total = 0;
  long passed = 0;
  long failed = 0;
  long skipped = 0;
};

struct Report {
  std::string schema_version = "1";
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::vector<Check> checks;

  ReportSummary summary() const;
  /// Stable JSON document (insertion-ordered keys, schema_version "1").
  std::string to_json() const;
};

}  // namespace homlab
