#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dkb/search.hpp"

#include <json.hpp>

namespace dkb {

/// d-regular comparison experiment: for each replicate, generate a random
/// d-regular graph, compare the (j, r) eigenvector blocks of L and L_sym,
/// and record the attained rho1, the standard first-r bound, and the
/// searched extended bound.
struct ExperimentSpec {
  std::size_t n = 300;
  std::size_t d = 30;
  std::size_t replicates = 25;
  std::size_t r = 3;
  std::size_t j = 0;
  std::uint64_t seed = 12345;
  std::optional<SearchConfig> search;  // default box per replicate if unset

  void validate() const;
};

struct ReportRecord {
  std::size_t replicate;
  double rho1;
  double thm4_bound;
  double ext_bound;
  double c1;
  double c0;
  double delta;
  bool standard_feasible;
  bool extended_feasible;
};

std::vector<ReportRecord> run_dreg_experiment(const ExperimentSpec& spec);

/// CSV columns: replicate,rho1,thm4_bound,ext_bound,c1,c0,delta
void write_experiment_csv(std::ostream& out,
                          const std::vector<ReportRecord>& records);

/// min/max/mean per column plus the run parameters; "schema": 1.
nlohmann::json experiment_summary(const ExperimentSpec& spec,
                                  const std::vector<ReportRecord>& records);

}  // namespace dkb
