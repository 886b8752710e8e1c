#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "homlab/report.hpp"

namespace homlab {

/// Cache of triplet-serialized matrices under
/// cache_dir/g{g}_L{L}/{object}.v1.triplets.  Corrupt entries are rebuilt
/// (with a warning pushed to `warnings`).
class MatrixCache {
 public:
  MatrixCache(std::string cache_dir, int g, int L);

  bool enabled() const { return !dir_.empty(); }
  std::string path_of(const std::string& object) const;
  SparseRationalMatrix get_or_build(const std::string& object,
                                    const std::function<SparseRationalMatrix()>& build);

  std::vector<std::string> warnings;

 private:
  std::string dir_;
};

/// Execute the selected suites for one (g, L) configuration.  Check names are
/// prefixed "g{g}.L{L}.".  Budget overruns become skipped-budget checks.
std::vector<Check> run_config_checks(const SuiteConfig& config);

/// Full run over one configuration: report with config echo and summary.
Report run_suite(const SuiteConfig& config);

/// Dimension table rows for the cross product of gs x Ls.  Exact values
/// only; cells outside the exact budget contain "skipped".
std::string dims_table_csv(const std::vector<int>& gs, const std::vector<int>& Ls,
                           std::uint32_t exact_col_cap = 20000, int threads = 1,
                           const std::string& cache_dir = "");

}  // namespace homlab
