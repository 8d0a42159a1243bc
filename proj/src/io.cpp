#include "dkb/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "dkb/errors.hpp"

namespace dkb::io {

namespace {

/// Next line with comments ('#' to end of line) stripped and blanks skipped.
bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

std::size_t parse_header(const std::string& line, const char* what) {
  std::istringstream ss(line);
  std::string tag;
  long long count = -1;
  if (!(ss >> tag >> count) || tag != "n" || count < 1)
    throw ParseError(std::string(what) + ": expected header line \"n <count>\"");
  std::string rest;
  if (ss >> rest) throw ParseError(std::string(what) + ": trailing header tokens");
  return static_cast<std::size_t>(count);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open: " + path);
  return in;
}

nlohmann::json json_or_null(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

Matrix read_matrix(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("matrix: empty input");
  const std::size_t n = parse_header(line, "matrix");

  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_content_line(in, line))
      throw ParseError("matrix: expected " + std::to_string(n) + " rows");
    std::istringstream ss(line);
    for (std::size_t j = 0; j < n; ++j) {
      if (!(ss >> m(i, j)))
        throw ParseError("matrix: row " + std::to_string(i) + " has fewer than " +
                         std::to_string(n) + " values");
    }
    std::string rest;
    if (ss >> rest)
      throw ParseError("matrix: row " + std::to_string(i) + " has extra values");
  }
  if (!m.all_finite()) throw ParseError("matrix: non-finite value");
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  auto in = open_in(path);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << "n " << m.rows() << "\n";
  char buf[32];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out << (j ? " " : "") << buf;
    }
    out << "\n";
  }
}

void write_matrix_file(const std::string& path, const Matrix& m) {
  auto out = open_out(path);
  write_matrix(out, m);
}

SymMatrix to_symmetric(const Matrix& m, bool* warned) {
  if (m.rows() != m.cols()) throw ShapeError("matrix is not square");
  double asym = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
  if (asym > 1e-8)
    throw InvalidInput("matrix asymmetry " + std::to_string(asym) +
                       " exceeds 1e-8");
  if (warned) *warned = asym > 0.0;
  return SymMatrix::symmetrized(m);
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("edge list: empty input");
  const std::size_t n = parse_header(line, "edge list");

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  while (next_content_line(in, line)) {
    std::istringstream ss(line);
    long long u = -1, v = -1;
    if (!(ss >> u >> v) || u < 0 || v < 0)
      throw ParseError("edge list: bad edge line: " + line);
    std::string rest;
    if (ss >> rest) throw ParseError("edge list: extra tokens: " + line);
    edges.emplace_back(static_cast<std::uint32_t>(u),
                       static_cast<std::uint32_t>(v));
  }
  try {
    return make_graph(n, std::move(edges));
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("edge list: ") + e.what());
  }
}

Graph read_edge_list_file(const std::string& path) {
  auto in = open_in(path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.n << "\n";
  for (const auto& [u, v] : g.edges) out << u << " " << v << "\n";
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  auto out = open_out(path);
  write_edge_list(out, g);
}

nlohmann::json report_to_json(const BoundReport& rep) {
  nlohmann::json j;
  j["schema"] = 1;
  j["n"] = rep.n;
  j["j"] = rep.j;
  j["r"] = rep.r;
  j["transform"] = {{"coefficients", rep.transform.coefficients()},
                    {"c1", rep.transform.c1()},
                    {"c0", rep.transform.c0()}};
  j["feasible"] = rep.feasible();
  j["gap_ok"] = rep.gap_ok;
  j["fragile"] = rep.fragile();
  j["numerator"] = rep.numerator;
  j["rho1_attained"] = rep.rho1_attained;
  j["rho2_attained"] = rep.rho2_attained;
  j["bound_rho1"] = json_or_null(rep.bound_rho1);
  j["bound_rho2"] = json_or_null(rep.bound_rho2);
  j["delta_used"] = json_or_null(rep.delta_used);
  if (!rep.feasible()) j["failure"] = rep.failure_reason();

  const auto choice_json = [](const ChoiceDiagnostics& c) {
    nlohmann::json out;
    out["a"] = std::isfinite(c.interval.a) ? nlohmann::json(c.interval.a)
                                           : nlohmann::json(nullptr);
    out["b"] = std::isfinite(c.interval.b) ? nlohmann::json(c.interval.b)
                                           : nlohmann::json(nullptr);
    out["delta"] = std::isfinite(c.interval.delta)
                       ? nlohmann::json(c.interval.delta)
                       : nlohmann::json(nullptr);
    out["constraints1"] = c.constraints1;
    out["constraints2"] = c.constraints2;
    out["valid"] = c.valid();
    return out;
  };
  j["choice1"] = choice_json(rep.feasibility.choice1);
  j["choice2"] = choice_json(rep.feasibility.choice2);
  if (rep.interval) j["used_choice"] = rep.interval->choice;

  if (rep.standard) {
    j["standard"] = {{"feasible", rep.standard_feasible},
                     {"bound_rho1", rep.standard->rho1_bound},
                     {"bound_rho2", rep.standard->rho2_bound},
                     {"delta", std::isfinite(rep.standard->delta)
                                   ? nlohmann::json(rep.standard->delta)
                                   : nlohmann::json(nullptr)}};
  } else {
    j["standard"] = {{"feasible", rep.standard_feasible}};
  }
  return j;
}

nlohmann::json landscape_to_json(const Landscape& land) {
  nlohmann::json j;
  j["schema"] = 1;
  j["c1_values"] = land.c1_values;
  j["c0_values"] = land.c0_values;
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : land.cells) {
    nlohmann::json cj;
    cj["c1"] = c.c1;
    cj["c0"] = c.c0;
    cj["bound_rho1"] = json_or_null(c.bound_rho1);
    cj["bound_rho2"] = json_or_null(c.bound_rho2);
    if (!c.failure.empty()) cj["failure"] = c.failure;
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  return j;
}

}  // namespace dkb::io
