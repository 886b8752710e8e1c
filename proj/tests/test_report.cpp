#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "homlab/runner.hpp"

using namespace homlab;

namespace {

nlohmann::json strip_millis(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  for (auto& c : j["checks"]) c.erase("millis");
  return j;
}

}  // namespace

TEST_CASE("report JSON schema") {
  SuiteConfig cfg;
  cfg.g = 1;
  cfg.L = 2;
  cfg.suites = {"lattice"};
  cfg.seed = 5;
  auto rep = run_suite(cfg);
  auto j = nlohmann::json::parse(rep.to_json());
  CHECK(j["schema_version"] == "1");
  CHECK(j["config"]["g"] == "1");
  CHECK(j["checks"].is_array());
  CHECK(!j["checks"].empty());
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("status"));
    CHECK(c.contains("expected"));
    CHECK(c.contains("actual"));
    CHECK(c.contains("certification"));
    CHECK(c.contains("millis"));
  }
  CHECK(j["summary"]["total"] == long(rep.checks.size()));
  CHECK(j["summary"]["failed"] == 0);
}

TEST_CASE("checks appear exactly once") {
  SuiteConfig cfg;
  cfg.g = 1;
  cfg.L = 2;
  cfg.sample_count = 50;
  cfg.seed = 5;
  auto checks = run_config_checks(cfg);
  std::set<std::string> names;
  for (const auto& c : checks) CHECK(names.insert(c.name).second);
}

TEST_CASE("same seed gives identical reports modulo millis") {
  SuiteConfig cfg;
  cfg.g = 1;
  cfg.L = 3;
  cfg.suites = {"lattice", "ring"};
  cfg.sample_count = 100;
  cfg.seed = 99;
  auto a = run_suite(cfg).to_json();
  auto b = run_suite(cfg).to_json();
  CHECK(strip_millis(a) == strip_millis(b));
}

TEST_CASE("summary counts drive the exit contract") {
  Report rep;
  rep.checks.push_back(make_check("a", true, "", "", "exact"));
  rep.checks.push_back(Check{"b", "skipped-budget", "", "", "", 0});
  auto s = rep.summary();
  CHECK(s.total == 2);
  CHECK(s.passed == 1);
  CHECK(s.skipped == 1);
  CHECK(s.failed == 0);
  rep.checks.push_back(make_check("c", false, "x", "y", "exact"));
  CHECK(rep.summary().failed == 1);
}

TEST_CASE("matrix cache round trip and corruption recovery") {
  std::string dir = "cache_test_dir";
  std::filesystem::remove_all(dir);
  MatrixCache cache(dir, 1, 2);
  long builds = 0;
  auto builder = [&] {
    ++builds;
    SparseRationalMatrix m(2, 2);
    m.add(0, 0, Rat(1));
    m.add(1, 1, Rat(-3));
    return m;
  };
  auto m1 = cache.get_or_build("demo", builder);
  CHECK(builds == 1);
  CHECK(std::filesystem::exists(cache.path_of("demo")));
  auto m2 = cache.get_or_build("demo", builder);
  CHECK(builds == 1);  // served from cache
  CHECK(m1 == m2);

  {
    std::ofstream os(cache.path_of("demo"));
    os << "garbage";
  }
  auto m3 = cache.get_or_build("demo", builder);
  CHECK(builds == 2);  // corrupt entry rebuilt
  CHECK(m3 == m1);
  CHECK(cache.warnings.size() == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("dims table frozen rows") {
  auto csv = dims_table_csv({1, 2}, {2});
  CHECK(csv.find("g,L,h1_closed,c_closed,h1_bounded,c_bounded,i_dim,tau,orbits,"
                 "rank_psi_v1,dim_b1,quotient_dim_v") == 0);
  CHECK(csv.find("1,2,2,0,5,3,3,2,2,0,4,0") != std::string::npos);
  CHECK(csv.find("2,2,34,30,49,45,15,2,2,9,7,15") != std::string::npos);
}

TEST_CASE("full run at (1,2) passes everything") {
  SuiteConfig cfg;
  cfg.g = 1;
  cfg.L = 2;
  cfg.sample_count = 100;
  cfg.seed = 3;
  auto rep = run_suite(cfg);
  auto s = rep.summary();
  for (const auto& c : rep.checks) {
    INFO(c.name, " ", c.status, " ", c.actual);
    CHECK(!c.failed());
  }
  CHECK(s.failed == 0);
  CHECK(s.total > 10);
}
