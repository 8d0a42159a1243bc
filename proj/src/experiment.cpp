#include "dkb/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>

#include "dkb/errors.hpp"
#include "dkb/graph.hpp"
#include "dkb/rng.hpp"

namespace dkb {

void ExperimentSpec::validate() const {
  if (n < 2 || d < 1 || d >= n)
    throw InvalidInput("ExperimentSpec: need 1 <= d < n");
  if ((n * d) % 2 != 0) throw InvalidInput("ExperimentSpec: n*d must be even");
  if (replicates < 1) throw InvalidInput("ExperimentSpec: no replicates");
  if (r < 1 || j + r > n)
    throw InvalidInput("ExperimentSpec: block indices out of range");
  if (search) search->validate();
}

std::vector<ReportRecord> run_dreg_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const SplitMix64 base(spec.seed);

  std::vector<ReportRecord> records;
  records.reserve(spec.replicates);

  for (std::size_t rep = 0; rep < spec.replicates; ++rep) {
    const std::uint64_t rep_seed = base.derive_seed(rep);
    Graph g;
    try {
      g = random_regular(spec.n, spec.d, rep_seed);
    } catch (const GenerationFailed& e) {
      throw GenerationFailed("replicate " + std::to_string(rep) + ": " +
                             e.what());
    }
    const ShiftOperatorSet ops = shift_operators(g);

    const SearchConfig cfg =
        spec.search ? *spec.search
                    : default_search_config(ops.laplacian, ops.laplacian_sym);
    const SearchResult res =
        search_affine(ops.laplacian, ops.laplacian_sym, spec.j, spec.r, cfg);

    const BoundReport& best = res.best_report;
    ReportRecord record;
    record.replicate = rep;
    record.rho1 = best.rho1_attained;
    record.thm4_bound =
        best.standard ? best.standard->rho1_bound
                      : std::numeric_limits<double>::quiet_NaN();
    record.ext_bound = best.bound_rho1.value();
    record.c1 = best.transform.c1();
    record.c0 = best.transform.c0();
    record.delta = best.delta_used.value();
    record.standard_feasible = best.standard_feasible;
    record.extended_feasible = best.feasible();
    records.push_back(record);
  }
  return records;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct ColumnStats {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  std::size_t count = 0;

  void add(double v) {
    min = std::min(min, v);
    max = std::max(max, v);
    sum += v;
    ++count;
  }
  nlohmann::json to_json() const {
    return {{"min", min}, {"max", max}, {"mean", sum / static_cast<double>(count)}};
  }
};

}  // namespace

void write_experiment_csv(std::ostream& out,
                          const std::vector<ReportRecord>& records) {
  out << "replicate,rho1,thm4_bound,ext_bound,c1,c0,delta\n";
  for (const auto& r : records) {
    out << r.replicate << ',' << fmt(r.rho1) << ',' << fmt(r.thm4_bound) << ','
        << fmt(r.ext_bound) << ',' << fmt(r.c1) << ',' << fmt(r.c0) << ','
        << fmt(r.delta) << '\n';
  }
}

nlohmann::json experiment_summary(const ExperimentSpec& spec,
                                  const std::vector<ReportRecord>& records) {
  ColumnStats rho1, thm4, ext, c1, c0, delta;
  bool all_std = true, all_ext = true;
  for (const auto& r : records) {
    rho1.add(r.rho1);
    thm4.add(r.thm4_bound);
    ext.add(r.ext_bound);
    c1.add(r.c1);
    c0.add(r.c0);
    delta.add(r.delta);
    all_std = all_std && r.standard_feasible;
    all_ext = all_ext && r.extended_feasible;
  }

  nlohmann::json j;
  j["schema"] = 1;
  j["spec"] = {{"n", spec.n},   {"d", spec.d}, {"replicates", spec.replicates},
               {"r", spec.r},   {"j", spec.j}, {"seed", spec.seed}};
  j["columns"] = {{"rho1", rho1.to_json()}, {"thm4_bound", thm4.to_json()},
                  {"ext_bound", ext.to_json()}, {"c1", c1.to_json()},
                  {"c0", c0.to_json()},         {"delta", delta.to_json()}};
  j["all_standard_feasible"] = all_std;
  j["all_extended_feasible"] = all_ext;
  return j;
}

}  // namespace dkb
