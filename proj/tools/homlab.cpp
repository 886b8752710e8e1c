// homlab: exact verification bench for the finite algebra of homology of
// abelian Z/L-covers of surfaces.  Subcommands: run, dims, class.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "homlab/cover.hpp"
#include "homlab/runner.hpp"

using namespace homlab;

namespace {

int do_run(const std::vector<int>& gs, const std::vector<int>& Ls, SuiteConfig base) {
  Report rep;
  std::string g_list, l_list;
  for (int g : gs) g_list += (g_list.empty() ? "" : ",") + std::to_string(g);
  for (int L : Ls) l_list += (l_list.empty() ? "" : ",") + std::to_string(L);
  std::string suites;
  for (const auto& s : base.suites) suites += (suites.empty() ? "" : ",") + s;
  rep.config_echo = {{"g", g_list},
                     {"L", l_list},
                     {"suites", suites},
                     {"mode", base.mode},
                     {"sample_count", std::to_string(base.sample_count)},
                     {"seed", std::to_string(base.seed)},
                     {"cache_dir", base.cache_dir},
                     {"report_path", base.report_path},
                     {"worker_count", std::to_string(base.worker_count)},
                     {"exact_col_cap", std::to_string(base.exact_col_cap)}};

  for (int g : gs)
    for (int L : Ls) {
      SuiteConfig cfg = base;
      cfg.g = g;
      cfg.L = L;
      auto checks = run_config_checks(cfg);
      for (auto& c : checks) {
        const char* tag = c.status == "pass" ? "PASS" : (c.failed() ? "FAIL" : "SKIP");
        std::printf("[%s] %-58s %s%s (%ld ms)\n", tag, c.name.c_str(), c.actual.c_str(),
                    c.certification.empty() ? "" : (" [" + c.certification + "]").c_str(),
                    c.millis);
        rep.checks.push_back(std::move(c));
      }
    }

  auto s = rep.summary();
  std::printf("summary: %ld checks, %ld passed, %ld failed, %ld skipped\n", s.total,
              s.passed, s.failed, s.skipped);
  if (!base.report_path.empty()) {
    std::ofstream os(base.report_path);
    if (!os) {
      std::fprintf(stderr, "cannot write report to %s\n", base.report_path.c_str());
      return 2;
    }
    os << rep.to_json() << '\n';
  } else {
    std::cout << rep.to_json() << '\n';
  }
  return s.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homlab: exact algebra checks for abelian covers of surfaces"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "execute verification suites");
  std::vector<int> gs{2}, Ls{2};
  SuiteConfig cfg;
  cfg.suites = {"all"};
  run->add_option("--g", gs, "genus (repeat for a cross product)");
  run->add_option("--L", Ls, "level (repeat for a cross product)");
  run->add_option("--suite", cfg.suites,
                  "suites: lattice, ring, fox, presentation, all");
  run->add_option("--mode", cfg.mode, "exact | modular | hybrid")->default_str("hybrid");
  run->add_option("--sample", cfg.sample_count, "sample count for randomized checks");
  run->add_option("--seed", cfg.seed, "seed for all randomized sampling");
  run->add_option("--report", cfg.report_path, "JSON report path (default: stdout)");
  run->add_option("--cache-dir", cfg.cache_dir, "matrix cache directory");
  run->add_option("--threads", cfg.worker_count, "worker pool size");
  run->add_option("--exact-col-cap", cfg.exact_col_cap,
                  "column cap for exact elimination (hybrid mode)");

  // dims
  auto* dims = app.add_subcommand("dims", "emit the dimension table as CSV");
  std::vector<int> dgs{1, 2}, dLs{2, 3};
  std::string out_path;
  std::uint32_t dcap = 20000;
  int dthreads = 1;
  std::string dcache;
  dims->add_option("--g", dgs, "genus values");
  dims->add_option("--L", dLs, "level values");
  dims->add_option("--out", out_path, "output CSV path (default: stdout)");
  dims->add_option("--exact-col-cap", dcap, "column cap for the quotient column");
  dims->add_option("--threads", dthreads, "worker pool size");
  dims->add_option("--cache-dir", dcache, "matrix cache directory");

  // class
  auto* cls = app.add_subcommand("class", "H1 class of a word in the cover");
  int cg = 1, cL = 2;
  std::string word;
  bool closed = false;
  cls->add_option("--g", cg, "genus");
  cls->add_option("--L", cL, "level");
  cls->add_option("--word", word, "word, e.g. \"a1 B1 A1 b1\" (uppercase = inverse)")
      ->required();
  cls->add_flag("--closed", closed, "use the closed-surface cover (default: bounded)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return do_run(gs, Ls, cfg);
    if (*dims) {
      auto csv = dims_table_csv(dgs, dLs, dcap, dthreads, dcache);
      if (out_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream os(out_path);
        if (!os) {
          std::fprintf(stderr, "cannot write %s\n", out_path.c_str());
          return 2;
        }
        os << csv;
      }
      return 0;
    }
    if (*cls) {
      auto p = LatticeParams::make(cg, cL);
      auto complex = CoverComplex::build(p, closed);
      auto w = FreeWord::parse(p, word);
      auto coords = complex.cycle_class(w);
      if (coords.empty()) {
        std::printf("0\n");
      } else {
        for (const auto& [c, v] : coords) std::printf("%u:%s ", c, v.get_str().c_str());
        std::printf("\n");
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
