#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dkb/graph.hpp"
#include "dkb/io.hpp"

namespace {

struct CliResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(DKB_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), got);
  const int status = pclose(pipe);
  return CliResult{WEXITSTATUS(status), std::move(out)};
}

std::string tmp_path(const std::string& name) {
  return std::string("/tmp/dkb_cli_") + name;
}

void write_matrix_file(const std::string& path, const dkb::SymMatrix& m) {
  dkb::io::write_matrix_file(path, m.to_matrix());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("compare: identical matrices give zero bounds and exit 0") {
  const auto phi = tmp_path("id_phi.txt");
  write_matrix_file(phi, dkb::SymMatrix::diagonal({0.0, 1.0, 2.0, 3.5}));

  const CliResult r = run_cli("compare " + phi + " " + phi + " --j 0 --r 1");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("schema") == 1);
  CHECK(j.at("feasible") == true);
  CHECK(j.at("rho1_attained").get<double>() <= 1e-8);
  CHECK(j.at("bound_rho1").get<double>() <= 1e-12);
}

TEST_CASE("compare: dimension mismatch exits 1") {
  const auto a = tmp_path("mm3.txt");
  const auto b = tmp_path("mm4.txt");
  write_matrix_file(a, dkb::SymMatrix::identity(3));
  write_matrix_file(b, dkb::SymMatrix::identity(4));
  const CliResult r = run_cli("compare " + a + " " + b);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("dimension") != std::string::npos);
}

TEST_CASE("compare: no valid interval exits 2") {
  const auto phi = tmp_path("iv_phi.txt");
  const auto psi = tmp_path("iv_psi.txt");
  write_matrix_file(phi, dkb::SymMatrix::diagonal({0.0, 5.0, 10.0}));
  write_matrix_file(psi, dkb::SymMatrix::diagonal({0.0, 0.1, 0.2}));
  const CliResult r = run_cli("compare " + phi + " " + psi + " --j 1 --r 1");
  CHECK(r.exit_code == 2);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("feasible") == false);
}

TEST_CASE("compare: searched regular-graph pair reaches a zero bound") {
  const dkb::ShiftOperatorSet ops =
      dkb::shift_operators(dkb::random_regular(20, 4, 23));
  const auto lp = tmp_path("lap.txt");
  const auto ls = tmp_path("lap_sym.txt");
  write_matrix_file(lp, ops.laplacian);
  write_matrix_file(ls, ops.laplacian_sym);

  const CliResult r =
      run_cli("compare " + lp + " " + ls + " --j 0 --r 3 --search-affine");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("bound_rho1").get<double>() <= 1e-8);
  CHECK(std::abs(j.at("transform").at("c1").get<double>() * 4.0 - 1.0) <= 0.05);
  CHECK(j.at("rho1_attained").get<double>() <=
        j.at("bound_rho1").get<double>() + 1e-8);
}

TEST_CASE("compare: explicit affine transform flags") {
  const dkb::ShiftOperatorSet ops =
      dkb::shift_operators(dkb::random_regular(16, 4, 29));
  const auto lp = tmp_path("lap_c1.txt");
  const auto ls = tmp_path("lap_sym_c1.txt");
  write_matrix_file(lp, ops.laplacian);
  write_matrix_file(ls, ops.laplacian_sym);

  const auto out = tmp_path("report.json");
  const CliResult r = run_cli("compare " + lp + " " + ls +
                              " --j 0 --r 2 --c1 0.25 --c0 0 --out " + out);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("transform").at("c1") == 0.25);
  CHECK(j.at("bound_rho2").get<double>() <= 1e-10);

  // A flat transform destroys the spectrum: infeasible.
  const CliResult flat =
      run_cli("compare " + lp + " " + ls + " --j 0 --r 2 --c1 0 --c0 5");
  CHECK(flat.exit_code == 2);
}

TEST_CASE("feasibility: gapless spectra exit 2 with the gap reason") {
  const auto p = tmp_path("gapless.txt");
  write_matrix_file(p, dkb::SymMatrix::diagonal({0.0, 1.0, 1.0}));
  const CliResult r = run_cli("feasibility " + p + " " + p + " --j 1 --r 1");
  CHECK(r.exit_code == 2);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("gap_ok") == false);
  CHECK(j.at("failure") == "gap");
}

TEST_CASE("feasibility: gapped identical pair is standard-feasible") {
  const auto p = tmp_path("gapped.txt");
  write_matrix_file(p, dkb::SymMatrix::diagonal({0.0, 1.0, 2.0, 3.0}));
  const CliResult r = run_cli("feasibility " + p + " " + p + " --j 1 --r 2");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("standard_feasible") == true);
}

TEST_CASE("feasibility: opposite ends of A vs L needs the transform") {
  const dkb::ShiftOperatorSet ops =
      dkb::shift_operators(dkb::random_regular(24, 6, 31));
  const auto ap = tmp_path("adj.txt");
  const auto lp = tmp_path("lap_oe.txt");
  write_matrix_file(ap, ops.adjacency);
  write_matrix_file(lp, ops.laplacian);

  const CliResult r = run_cli("feasibility " + ap + " " + lp +
                              " --j 0 --r 3 --opposite-ends --search-affine");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("standard_feasible") == false);
  CHECK(j.at("affine_feasible") == true);
  // The default grid resolves the map up to its spacing; the acceptance
  // suite drives an explicit box onto the exact relation.
  CHECK(j.at("affine").at("bound_rho1").get<double>() <= 0.2);
}

TEST_CASE("dreg-experiment: small run emits the pinned CSV header and is stable") {
  const std::string out = tmp_path("exp");
  const std::string args =
      "dreg-experiment --n 16 --d 3 --replicates 2 --r 2 --seed 99 --out " + out;

  const CliResult r1 = run_cli(args);
  CHECK(r1.exit_code == 0);
  const std::string csv1 = slurp(out + ".csv");
  CHECK(csv1.rfind("replicate,rho1,thm4_bound,ext_bound,c1,c0,delta\n", 0) == 0);

  const CliResult r2 = run_cli(args);
  CHECK(r2.exit_code == 0);
  CHECK(slurp(out + ".csv") == csv1);  // byte-identical rerun
  CHECK(r1.output == r2.output);

  const auto summary = nlohmann::json::parse(slurp(out + ".json"));
  CHECK(summary.at("schema") == 1);
  CHECK(summary.at("columns").at("rho1").at("max").get<double>() <=
        summary.at("columns").at("ext_bound").at("min").get<double>() + 1e-8);

  // The environment seed default matches an explicit --seed.
  const CliResult renv = run_cli(
      "dreg-experiment --n 16 --d 3 --replicates 2 --r 2 --seed 12345");
  const std::string cmd_env =
      "DKBOUND_SEED=12345 " DKB_CLI_PATH
      " dreg-experiment --n 16 --d 3 --replicates 2 --r 2 2>&1";
  FILE* pipe = popen(cmd_env.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::string out_env;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out_env.append(buf.data(), got);
  pclose(pipe);
  CHECK(out_env == renv.output);
}

TEST_CASE("unknown flags exit 1") {
  const CliResult r = run_cli("compare --bogus");
  CHECK(r.exit_code == 1);
}
