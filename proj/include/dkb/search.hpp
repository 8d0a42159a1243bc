#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dkb/bounds.hpp"
#include "dkb/matrix.hpp"

namespace dkb {

/// Grid-plus-refinement search box over affine transform parameters.
/// Each refinement round shrinks both ranges by a factor of 5 around the
/// incumbent. Slopes inside the zero band are skipped (a flat transform
/// destroys the spectrum).
struct SearchConfig {
  double c1_min;
  double c1_max;
  double c0_min;
  double c0_max;
  std::size_t grid_points = 41;
  std::size_t refinement_rounds = 3;
  double exclude_zero_band = 1e-6;

  void validate() const;
};

/// Default box: slope range +-2 scaled by ||Psi||_2 / ||Phi||_2 (the optimal
/// affine map's magnitude is bracketed by the norm ratio), offset range
/// +-||Psi||_2.
SearchConfig default_search_config(const SymMatrix& phi, const SymMatrix& psi);

struct PerChoiceBest {
  bool found = false;
  PolynomialTransform transform = PolynomialTransform::identity();
  double delta = 0.0;
  double bound_rho2 = 0.0;
  double bound_rho1 = 0.0;
};

struct SearchResult {
  PolynomialTransform best_transform = PolynomialTransform::identity();
  BoundReport best_report;
  PerChoiceBest choice1;  // best transform under interval choice 1
  PerChoiceBest choice2;  // best transform under interval choice 2
  std::size_t evaluations = 0;
};

/// Minimize the extended bound over the affine grid. The evaluated set also
/// always contains the exact identity transform, so whenever the identity is
/// feasible the result is at least as good. Deterministic for a fixed
/// config; ties break toward smaller |c0|, then smaller |c1 - 1|.
/// Throws GapViolation / NoFeasibleTransform.
SearchResult search_affine(const SymMatrix& phi, const SymMatrix& psi,
                           std::size_t j, std::size_t r,
                           const SearchConfig& cfg);

/// One full grid evaluation without refinement, for plotting/diagnostics.
struct LandscapeCell {
  double c1;
  double c0;
  std::optional<double> bound_rho1;
  std::optional<double> bound_rho2;
  std::string failure;  // "", "zero_band", "gap", "constraints1", "constraints2"
};

struct Landscape {
  std::vector<double> c1_values;
  std::vector<double> c0_values;
  std::vector<LandscapeCell> cells;  // c1-major order

  const LandscapeCell& at(std::size_t i1, std::size_t i0) const {
    return cells[i1 * c0_values.size() + i0];
  }
};

Landscape bound_landscape(const SymMatrix& phi, const SymMatrix& psi,
                          std::size_t j, std::size_t r,
                          const SearchConfig& cfg);

}  // namespace dkb
