#include "dkb/search.hpp"

#include <algorithm>
#include <cmath>

#include "dkb/errors.hpp"

namespace dkb {

void SearchConfig::validate() const {
  if (!(c1_min <= c1_max) || !(c0_min <= c0_max))
    throw InvalidInput("SearchConfig: empty parameter range");
  if (grid_points < 3) throw InvalidInput("SearchConfig: need grid_points >= 3");
  if (!(exclude_zero_band > 0.0))
    throw InvalidInput("SearchConfig: exclude_zero_band must be positive");
}

SearchConfig default_search_config(const SymMatrix& phi, const SymMatrix& psi) {
  const double nphi = spectral_norm(phi);
  const double npsi = spectral_norm(psi);
  const double scale = (nphi > 0.0 && npsi > 0.0) ? npsi / nphi : 1.0;
  const double c0_half = npsi > 0.0 ? npsi : 1.0;
  SearchConfig cfg;
  cfg.c1_min = -2.0 * scale;
  cfg.c1_max = 2.0 * scale;
  cfg.c0_min = -c0_half;
  cfg.c0_max = c0_half;
  return cfg;
}

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t pts) {
  std::vector<double> v(pts);
  const double step = (hi - lo) / static_cast<double>(pts - 1);
  for (std::size_t i = 0; i < pts; ++i)
    v[i] = lo + static_cast<double>(i) * step;
  return v;
}

std::vector<double> centered_grid(double center, double range_len,
                                  std::size_t pts) {
  std::vector<double> v(pts);
  const double step = range_len / static_cast<double>(pts - 1);
  const double mid = static_cast<double>((pts - 1) / 2);
  for (std::size_t i = 0; i < pts; ++i)
    v[i] = center + (static_cast<double>(i) - mid) * step;
  return v;
}

struct Candidate {
  bool found = false;
  double bound = 0.0;  // rho2-scale bound (numerator / delta)
  double c1 = 0.0;
  double c0 = 0.0;
  double delta = 0.0;
};

/// Strict total order so the winner does not depend on evaluation order:
/// bound, then |c0|, then |c1 - 1|, then the raw values.
bool improves(double bound, double c1, double c0, const Candidate& inc) {
  if (!inc.found) return true;
  if (bound != inc.bound) return bound < inc.bound;
  const double ac0 = std::abs(c0), ic0 = std::abs(inc.c0);
  if (ac0 != ic0) return ac0 < ic0;
  const double ac1 = std::abs(c1 - 1.0), ic1 = std::abs(inc.c1 - 1.0);
  if (ac1 != ic1) return ac1 < ic1;
  if (c0 != inc.c0) return c0 < inc.c0;
  return c1 < inc.c1;
}

struct GridScan {
  Candidate overall;
  Candidate per_choice[2];
  std::size_t evaluations = 0;
};

/// Evaluate every (c1, c0) cell of one grid. The numerator group-factors by
/// c1: the eigenvalues of c1*Phi + c0*I - Psi are those of c1*Phi - Psi
/// shifted by c0, so one extreme-eigenvalue solve per slope covers the whole
/// offset axis.
void scan_grid(const SymMatrix& phi, const SymMatrix& psi,
               const Spectrum& sphi, const Spectrum& spsi, std::size_t j,
               std::size_t r, const std::vector<double>& c1s,
               const std::vector<double>& c0s, double zero_band,
               GridScan& scan) {
  const std::size_t n = sphi.n;
  TransformedSpectrum ts{std::vector<double>(n),
                         PolynomialTransform::identity()};
  std::vector<double> base(n);

  for (const double c1 : c1s) {
    if (std::abs(c1) < zero_band) continue;
    const EigExtremes ext = eig_extremes(scale_sub(c1, phi, psi));
    for (std::size_t i = 0; i < n; ++i) base[i] = c1 * sphi.eigenvalues[i];

    for (const double c0 : c0s) {
      for (std::size_t i = 0; i < n; ++i) ts.values[i] = base[i] + c0;
      const double numerator =
          std::max(std::abs(ext.min + c0), std::abs(ext.max + c0));
      const DkFeasibility feas = dk_feasibility(ts, spsi, j, r);
      ++scan.evaluations;

      const ChoiceDiagnostics* choices[2] = {&feas.choice1, &feas.choice2};
      for (int c = 0; c < 2; ++c) {
        if (!choices[c]->valid()) continue;
        const double delta = choices[c]->interval.delta;
        const double bound = numerator / delta;
        if (improves(bound, c1, c0, scan.per_choice[c])) {
          scan.per_choice[c] = Candidate{true, bound, c1, c0, delta};
        }
      }
      if (feas.any_valid()) {
        const double delta = feas.best_delta();
        const double bound = numerator / delta;
        if (improves(bound, c1, c0, scan.overall)) {
          scan.overall = Candidate{true, bound, c1, c0, delta};
        }
      }
    }
  }
}

BoundReport report_for(const SymMatrix& phi, const SymMatrix& psi,
                       const Spectrum& sphi, const Spectrum& spsi,
                       const AttainedDistances& att, std::size_t j,
                       std::size_t r, double c1, double c0) {
  const PolynomialTransform p = PolynomialTransform::affine(c1, c0);
  const EigExtremes ext = eig_extremes(scale_sub(c1, phi, psi));
  const double numerator =
      std::max(std::abs(ext.min + c0), std::abs(ext.max + c0));
  const TransformedSpectrum ts = transform_spectrum(p, sphi);
  BoundReport rep =
      evaluate_extended(sphi, spsi, ts, p, j, r, numerator, true, att);
  if (j == 0) {
    rep.standard = theorem4_bound(sphi, spsi, phi, psi, r);
    rep.standard_feasible = true;
  }
  return rep;
}

}  // namespace

SearchResult search_affine(const SymMatrix& phi, const SymMatrix& psi,
                           std::size_t j, std::size_t r,
                           const SearchConfig& cfg) {
  cfg.validate();
  if (phi.n() != psi.n()) throw ShapeError("search_affine: dimensions differ");

  const Spectrum sphi = eig_sym(phi);
  const Spectrum spsi = eig_sym(psi);
  if (!check_gap_assumption(sphi, spsi, j, r, 0.0))
    throw GapViolation("search_affine: required eigengap is zero");
  const AttainedDistances att = attained_distances(sphi, spsi, j, r);

  GridScan scan;
  double c1_len = cfg.c1_max - cfg.c1_min;
  double c0_len = cfg.c0_max - cfg.c0_min;

  for (std::size_t round = 0; round <= cfg.refinement_rounds; ++round) {
    std::vector<double> c1s, c0s;
    if (round == 0) {
      c1s = linspace(cfg.c1_min, cfg.c1_max, cfg.grid_points);
      c0s = linspace(cfg.c0_min, cfg.c0_max, cfg.grid_points);
      // The identity transform is always part of the evaluated set, so a
      // feasible identity is never beaten by grid resolution.
      c1s.push_back(1.0);
      c0s.push_back(0.0);
    } else {
      if (!scan.overall.found) break;
      c1_len /= 5.0;
      c0_len /= 5.0;
      c1s = centered_grid(scan.overall.c1, c1_len, cfg.grid_points);
      c0s = centered_grid(scan.overall.c0, c0_len, cfg.grid_points);
      // Keep the incumbent cell in the evaluated set (monotone refinement).
      c1s.push_back(scan.overall.c1);
      c0s.push_back(scan.overall.c0);
    }
    scan_grid(phi, psi, sphi, spsi, j, r, c1s, c0s, cfg.exclude_zero_band,
              scan);
  }

  if (!scan.overall.found)
    throw NoFeasibleTransform(
        "search_affine: no grid point satisfies the constraints");

  SearchResult out;
  out.evaluations = scan.evaluations;
  out.best_transform =
      PolynomialTransform::affine(scan.overall.c1, scan.overall.c0);
  out.best_report = report_for(phi, psi, sphi, spsi, att, j, r,
                               scan.overall.c1, scan.overall.c0);

  PerChoiceBest* bests[2] = {&out.choice1, &out.choice2};
  for (int c = 0; c < 2; ++c) {
    const Candidate& cand = scan.per_choice[c];
    if (!cand.found) continue;
    PerChoiceBest& best = *bests[c];
    best.found = true;
    best.transform = PolynomialTransform::affine(cand.c1, cand.c0);
    best.delta = cand.delta;
    best.bound_rho2 = cand.bound;
    best.bound_rho1 = c_factor(sphi.n, r) * cand.bound;
  }
  return out;
}

Landscape bound_landscape(const SymMatrix& phi, const SymMatrix& psi,
                          std::size_t j, std::size_t r,
                          const SearchConfig& cfg) {
  cfg.validate();
  if (phi.n() != psi.n())
    throw ShapeError("bound_landscape: dimensions differ");

  const Spectrum sphi = eig_sym(phi);
  const Spectrum spsi = eig_sym(psi);
  const bool gap_ok = check_gap_assumption(sphi, spsi, j, r, 0.0);

  Landscape land;
  land.c1_values = linspace(cfg.c1_min, cfg.c1_max, cfg.grid_points);
  land.c0_values = linspace(cfg.c0_min, cfg.c0_max, cfg.grid_points);
  land.cells.reserve(cfg.grid_points * cfg.grid_points);

  const std::size_t n = sphi.n;
  const double cnr = c_factor(n, r);
  TransformedSpectrum ts{std::vector<double>(n),
                         PolynomialTransform::identity()};

  for (const double c1 : land.c1_values) {
    const bool banded = std::abs(c1) < cfg.exclude_zero_band;
    EigExtremes ext{0.0, 0.0};
    if (!banded && gap_ok) ext = eig_extremes(scale_sub(c1, phi, psi));

    for (const double c0 : land.c0_values) {
      LandscapeCell cell;
      cell.c1 = c1;
      cell.c0 = c0;
      if (banded) {
        cell.failure = "zero_band";
      } else if (!gap_ok) {
        cell.failure = "gap";
      } else {
        for (std::size_t i = 0; i < n; ++i)
          ts.values[i] = c1 * sphi.eigenvalues[i] + c0;
        const DkFeasibility feas = dk_feasibility(ts, spsi, j, r);
        if (feas.any_valid()) {
          const double numerator =
              std::max(std::abs(ext.min + c0), std::abs(ext.max + c0));
          const double b2 = numerator / feas.best_delta();
          cell.bound_rho2 = b2;
          cell.bound_rho1 = cnr * b2;
        } else if (!feas.choice1.constraints1 && !feas.choice2.constraints1) {
          cell.failure = "constraints1";
        } else {
          cell.failure = "constraints2";
        }
      }
      land.cells.push_back(std::move(cell));
    }
  }
  return land;
}

}  // namespace dkb
