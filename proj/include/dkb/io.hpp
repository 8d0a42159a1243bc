#pragma once

#include <iosfwd>
#include <string>

#include "dkb/bounds.hpp"
#include "dkb/graph.hpp"
#include "dkb/matrix.hpp"
#include "dkb/search.hpp"

#include <json.hpp>

namespace dkb::io {

/// Matrix text format: a header line "n <count>" followed by n lines of n
/// whitespace-separated decimal values. '#' starts a comment.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& m);
void write_matrix_file(const std::string& path, const Matrix& m);

/// A loaded matrix must be square and symmetric to 1e-8 (max entry
/// deviation); smaller deviations are symmetrized away. `warned` reports
/// whether anything had to be averaged.
SymMatrix to_symmetric(const Matrix& m, bool* warned = nullptr);

/// Edge list text format: a header line "n <count>", then one edge per line
/// as "u v" with 0-based ids. '#' starts a comment.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

/// Serialized bound report. Top-level "schema": 1.
nlohmann::json report_to_json(const BoundReport& rep);

nlohmann::json landscape_to_json(const Landscape& land);

}  // namespace dkb::io
