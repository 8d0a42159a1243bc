// dkbound: bound and measure the distance between subspaces spanned by
// consecutive eigenvectors of two symmetric matrices.
//
// Commands:
//   compare          bound the (j, r) block distance for two matrix files
//   feasibility      do DK intervals exist, untransformed / after a search
//   dreg-experiment  random d-regular graphs: L vs L_sym block comparison
//
// Exit codes: 0 success/feasible, 1 input error, 2 infeasible.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dkb/bounds.hpp"
#include "dkb/errors.hpp"
#include "dkb/experiment.hpp"
#include "dkb/io.hpp"
#include "dkb/search.hpp"
#include "dkb/transforms.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInfeasible = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DKBOUND_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      std::cerr << "warning: ignoring unparsable DKBOUND_SEED\n";
    }
  }
  return 12345;
}

void emit(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw dkb::ParseError("cannot open for writing: " + out_path);
    out << j.dump(2) << "\n";
  }
}

struct CompareArgs {
  std::string phi_path, psi_path, out_path;
  std::size_t j = 0, r = 1;
  std::optional<double> c1, c0;
  bool search = false;
  bool opposite_ends = false;
};

/// Load Phi and Psi; under --opposite-ends Phi is negated so its top block
/// becomes the bottom block at the same offset, without touching the
/// eigenvectors.
std::pair<dkb::SymMatrix, dkb::SymMatrix> load_pair(const CompareArgs& a) {
  const dkb::Matrix mphi = dkb::io::read_matrix_file(a.phi_path);
  const dkb::Matrix mpsi = dkb::io::read_matrix_file(a.psi_path);
  if (mphi.rows() != mpsi.rows())
    throw dkb::ShapeError("matrices have different dimensions: " +
                          std::to_string(mphi.rows()) + " vs " +
                          std::to_string(mpsi.rows()));
  bool warned = false;
  dkb::SymMatrix phi = dkb::io::to_symmetric(mphi, &warned);
  if (warned) std::cerr << "warning: symmetrized " << a.phi_path << "\n";
  dkb::SymMatrix psi = dkb::io::to_symmetric(mpsi, &warned);
  if (warned) std::cerr << "warning: symmetrized " << a.psi_path << "\n";

  if (a.opposite_ends) {
    dkb::SymMatrix neg = dkb::scale_sub(-1.0, phi, dkb::SymMatrix(phi.n()));
    return {std::move(neg), std::move(psi)};
  }
  return {std::move(phi), std::move(psi)};
}

int run_compare(const CompareArgs& a) {
  auto [phi, psi] = load_pair(a);
  if (a.r < 1 || a.j + a.r > phi.n())
    throw dkb::InvalidInput("block (j=" + std::to_string(a.j) +
                            ", r=" + std::to_string(a.r) +
                            ") out of range for n=" + std::to_string(phi.n()));

  nlohmann::json j;
  bool feasible = false;
  if (a.search) {
    dkb::SearchConfig cfg = dkb::default_search_config(phi, psi);
    try {
      const dkb::SearchResult res = dkb::search_affine(phi, psi, a.j, a.r, cfg);
      j = dkb::io::report_to_json(res.best_report);
      j["search"] = {{"evaluations", res.evaluations}};
      feasible = true;
    } catch (const dkb::GapViolation& e) {
      j = {{"schema", 1}, {"feasible", false}, {"failure", "gap"},
           {"message", e.what()}};
    } catch (const dkb::NoFeasibleTransform& e) {
      j = {{"schema", 1}, {"feasible", false}, {"failure", "no_feasible_transform"},
           {"message", e.what()}};
    }
  } else {
    const dkb::PolynomialTransform p =
        dkb::PolynomialTransform::affine(a.c1.value_or(1.0), a.c0.value_or(0.0));
    const dkb::BoundReport rep =
        dkb::try_extended_bound(phi, psi, p, a.j, a.r);
    j = dkb::io::report_to_json(rep);
    feasible = rep.feasible();
  }
  if (a.opposite_ends) j["opposite_ends"] = true;
  emit(j, a.out_path);
  return feasible ? kExitOk : kExitInfeasible;
}

int run_feasibility(const CompareArgs& a) {
  auto [phi, psi] = load_pair(a);
  if (a.r < 1 || a.j + a.r > phi.n())
    throw dkb::InvalidInput("block out of range for n=" + std::to_string(phi.n()));

  const dkb::Spectrum sphi = dkb::eig_sym(phi);
  const dkb::Spectrum spsi = dkb::eig_sym(psi);
  const bool gap_ok = dkb::check_gap_assumption(sphi, spsi, a.j, a.r, 0.0);

  // Standard feasibility always refers to the original, untransformed
  // values: under --opposite-ends, phi arrived negated, so undo that at the
  // value level to ask the question about the loaded matrix.
  bool standard = false;
  if (gap_ok) {
    const dkb::TransformedSpectrum values =
        a.opposite_ends
            ? dkb::transform_spectrum(dkb::PolynomialTransform::affine(-1.0, 0.0), sphi)
            : dkb::identity_values(sphi);
    standard = dkb::standard_requirements_feasible(values, spsi, a.j, a.r, gap_ok);
  }

  nlohmann::json j;
  j["schema"] = 1;
  j["gap_ok"] = gap_ok;
  if (!gap_ok) j["failure"] = "gap";
  j["standard_feasible"] = standard;
  if (a.opposite_ends) j["opposite_ends"] = true;

  bool feasible = standard;
  if (a.search) {
    bool affine_found = false;
    if (gap_ok) {
      try {
        const dkb::SearchConfig cfg = dkb::default_search_config(phi, psi);
        const dkb::SearchResult res =
            dkb::search_affine(phi, psi, a.j, a.r, cfg);
        affine_found = true;
        j["affine"] = {{"c1", res.best_transform.c1()},
                       {"c0", res.best_transform.c0()},
                       {"bound_rho1", res.best_report.bound_rho1.value()},
                       {"bound_rho2", res.best_report.bound_rho2.value()},
                       {"delta", res.best_report.delta_used.value()}};
      } catch (const dkb::NoFeasibleTransform&) {
        affine_found = false;
      }
    }
    j["affine_feasible"] = affine_found;
    feasible = affine_found;
  }
  emit(j, a.out_path);
  return feasible ? kExitOk : kExitInfeasible;
}

struct DregArgs {
  dkb::ExperimentSpec spec;
  std::string out_path;
  std::string format = "csv";
};

int run_dreg(const DregArgs& a) {
  const std::vector<dkb::ReportRecord> records = dkb::run_dreg_experiment(a.spec);
  const nlohmann::json summary = dkb::experiment_summary(a.spec, records);

  if (!a.out_path.empty()) {
    std::ofstream csv(a.out_path + ".csv");
    if (!csv) throw dkb::ParseError("cannot open for writing: " + a.out_path + ".csv");
    dkb::write_experiment_csv(csv, records);
    std::ofstream js(a.out_path + ".json");
    if (!js) throw dkb::ParseError("cannot open for writing: " + a.out_path + ".json");
    js << summary.dump(2) << "\n";
  }
  if (a.format == "json") {
    std::cout << summary.dump(2) << "\n";
  } else {
    dkb::write_experiment_csv(std::cout, records);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subspace distance bounds for eigenvector blocks of symmetric matrices"};
  app.require_subcommand(1);

  CompareArgs cmp;
  CLI::App* compare = app.add_subcommand(
      "compare", "Bound the (j, r) eigenvector-block distance of two matrices");
  compare->add_option("phi", cmp.phi_path, "first matrix file")->required();
  compare->add_option("psi", cmp.psi_path, "second matrix file")->required();
  compare->add_option("--j", cmp.j, "block offset (default 0)");
  compare->add_option("--r", cmp.r, "block width (default 1)");
  compare->add_option("--c1", cmp.c1, "affine transform slope");
  compare->add_option("--c0", cmp.c0, "affine transform offset");
  compare->add_flag("--search-affine", cmp.search,
                    "search the affine transform grid for the smallest bound");
  compare->add_flag("--opposite-ends", cmp.opposite_ends,
                    "compare the top block of phi against the bottom block of psi");
  compare->add_option("--out", cmp.out_path, "write the JSON report here");

  CompareArgs fea;
  CLI::App* feasibility = app.add_subcommand(
      "feasibility", "Check whether DK intervals exist for the (j, r) blocks");
  feasibility->add_option("phi", fea.phi_path, "first matrix file")->required();
  feasibility->add_option("psi", fea.psi_path, "second matrix file")->required();
  feasibility->add_option("--j", fea.j, "block offset (default 0)");
  feasibility->add_option("--r", fea.r, "block width (default 1)");
  feasibility->add_flag("--search-affine", fea.search,
                        "also search for a feasible affine transform");
  feasibility->add_flag("--opposite-ends", fea.opposite_ends,
                        "compare the top block of phi against the bottom block of psi");
  feasibility->add_option("--out", fea.out_path, "write the JSON report here");

  DregArgs dreg;
  dreg.spec.seed = default_seed();
  CLI::App* experiment = app.add_subcommand(
      "dreg-experiment", "Random d-regular graphs: L vs L_sym block bounds");
  experiment->add_option("--n", dreg.spec.n, "node count (default 300)");
  experiment->add_option("--d", dreg.spec.d, "degree (default 30)");
  experiment->add_option("--replicates", dreg.spec.replicates,
                         "number of graphs (default 25)");
  experiment->add_option("--r", dreg.spec.r, "block width (default 3)");
  experiment->add_option("--j", dreg.spec.j, "block offset (default 0)");
  experiment->add_option("--seed", dreg.spec.seed,
                         "base RNG seed (default 12345 or DKBOUND_SEED)");
  experiment->add_option("--out", dreg.out_path,
                         "write <out>.csv and <out>.json");
  experiment->add_option("--format", dreg.format, "stdout format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitInputError : kExitOk;
  }

  try {
    if (compare->parsed()) return run_compare(cmp);
    if (feasibility->parsed()) return run_feasibility(fea);
    return run_dreg(dreg);
  } catch (const dkb::GapViolation& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const dkb::NoValidInterval& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const dkb::NoFeasibleTransform& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const dkb::DegenerateTransform& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const dkb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
