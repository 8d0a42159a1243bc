#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dkb/linalg.hpp"
#include "dkb/matrix.hpp"
#include "dkb/subspace.hpp"
#include "dkb/transforms.hpp"

namespace dkb {

/// DK interval parameters: S1 = [a, b], S2 = R \ (a - delta, b + delta).
/// choice 1 builds S1 from the transformed spectrum, choice 2 from the
/// untransformed one. A triplet is only usable when delta > 0; that is
/// judged by the constraint checks, not here.
struct IntervalTriplet {
  double a;
  double b;
  double delta;
  int choice;  // 1 or 2
};

/// Partition of the excluded indices {0..n-1} \ {j..j+r-1} (0-based) by the
/// transformed values: above_b holds indices with p(phi_i) > b, below_a those
/// with p(phi_i) < a. Values landing inside [a, b] -- including exact endpoint
/// hits, which are flagged -- stay unclassified and fail the covering
/// constraint.
struct IndexPartition {
  std::vector<std::size_t> above_b;       // A1
  std::vector<std::size_t> below_a;       // A2
  std::vector<std::size_t> unclassified;  // inside [a, b]
  bool endpoint_hit = false;

  bool covers_all() const { return unclassified.empty(); }
};

/// Nonzero eigengap check on one ascending value list, with the boundary
/// conventions value[0-th] = -inf, value[(n+1)-th] = +inf.
bool spectrum_has_gaps(const std::vector<double>& ascending, std::size_t j,
                       std::size_t r, double tol);

/// Both spectra have nonzero j-th and (j+r)-th eigengaps (the j = 0 case is
/// the nonzero r-th eigengap assumption).
bool check_gap_assumption(const Spectrum& sphi, const Spectrum& spsi,
                          std::size_t j, std::size_t r, double tol);

/// First-r bound from the untransformed spectra: the denominator is the
/// between-matrix eigengap max(phi_{r+1} - psi_r, psi_{r+1} - phi_r), which
/// is positive whenever both r-th eigengaps are nonzero.
struct Theorem4Bound {
  double rho1_bound;
  double rho2_bound;
  double delta;
};
Theorem4Bound theorem4_bound(const Spectrum& sphi, const Spectrum& spsi,
                             const SymMatrix& phi, const SymMatrix& psi,
                             std::size_t r);

IndexPartition index_partition(const TransformedSpectrum& ts, std::size_t j,
                               std::size_t r, const IntervalTriplet& interval);

/// Choice 1: [a, b] spans the transformed inner block;
/// delta1 = min(psi_{j+r+1} - b, a - psi_j).
IntervalTriplet interval_choice1(const TransformedSpectrum& ts,
                                 const Spectrum& spsi, std::size_t j,
                                 std::size_t r);

/// Choice 2: a = psi_{j+1}, b = psi_{j+r};
/// delta2 = min(min_{A1} p(phi_i) - b, a - max_{A2} p(phi_i)), with
/// min over an empty set = +inf and max over an empty set = -inf.
std::pair<IntervalTriplet, IndexPartition> interval_choice2(
    const TransformedSpectrum& ts, const Spectrum& spsi, std::size_t j,
    std::size_t r);

/// Strict inequalities delta1 > 0, a1 - psi_{j+1} < delta1,
/// psi_{j+r} - b1 < delta1.
bool check_constraints2A(const TransformedSpectrum& ts, const Spectrum& spsi,
                         std::size_t j, std::size_t r,
                         const IntervalTriplet& t1);

/// Strict inequalities delta2 > 0, a2 - min_inner < delta2,
/// max_inner - b2 < delta2.
bool check_constraints2B(const TransformedSpectrum& ts, const Spectrum& spsi,
                         std::size_t j, std::size_t r,
                         const IntervalTriplet& t2);

/// Interval separations of an affine transform from the endpoint table,
/// for whichever sign c1 has.
struct AffineDeltas {
  double delta1;
  double delta2;
};
AffineDeltas affine_deltas(const PolynomialTransform& f, const Spectrum& sphi,
                           const Spectrum& spsi, std::size_t j, std::size_t r);

/// Everything evaluated for one interval choice.
struct ChoiceDiagnostics {
  IntervalTriplet interval{0.0, 0.0, 0.0, 0};
  IndexPartition partition;
  bool constraints1 = false;
  bool constraints2 = false;
  /// Smallest margin by which the strict inequalities held (only meaningful
  /// when valid()); margins below 1e-10 mark the certificate as fragile.
  double min_margin = 0.0;

  bool valid() const { return constraints1 && constraints2; }
};

/// Feasibility of both interval choices for a value-by-index list against
/// the ascending psi spectrum.
struct DkFeasibility {
  ChoiceDiagnostics choice1;
  ChoiceDiagnostics choice2;

  bool any_valid() const { return choice1.valid() || choice2.valid(); }
  /// Largest valid separation; call only when any_valid().
  double best_delta() const;
  int used_choice() const;
  bool fragile() const;
};
DkFeasibility dk_feasibility(const TransformedSpectrum& ts,
                             const Spectrum& spsi, std::size_t j,
                             std::size_t r);

struct AttainedDistances {
  double rho1;
  double rho2;
};
AttainedDistances attained_distances(const Spectrum& sphi,
                                     const Spectrum& spsi, std::size_t j,
                                     std::size_t r);

enum class NormKind { rho1, rho2 };

/// Full record for one transform: attained distances, the interval
/// diagnostics for both choices, and (when some choice is valid) the bounds
/// numerator / delta_used and c_{n,r} * that. delta_used is the largest
/// valid separation. The standard first-r bound is attached when j == 0.
struct BoundReport {
  std::size_t n = 0;
  std::size_t j = 0;
  std::size_t r = 0;
  PolynomialTransform transform = PolynomialTransform::identity();
  NormKind requested = NormKind::rho1;

  double rho1_attained = 0.0;
  double rho2_attained = 0.0;
  double numerator = 0.0;  // ||p(Phi) - Psi||_2

  bool gap_ok = false;
  DkFeasibility feasibility;

  std::optional<double> delta_used;
  std::optional<double> bound_rho1;
  std::optional<double> bound_rho2;
  std::optional<IntervalTriplet> interval;

  std::optional<Theorem4Bound> standard;
  bool standard_feasible = false;

  bool feasible() const { return bound_rho2.has_value(); }
  bool fragile() const { return feasibility.fragile(); }
  std::optional<double> bound(NormKind k) const {
    return k == NormKind::rho1 ? bound_rho1 : bound_rho2;
  }
  /// "gap", "constraints1", "constraints2", or "" when feasible.
  std::string failure_reason() const;
};

/// Spectra-level evaluation with a caller-supplied numerator; does not
/// throw on infeasibility. The grid search runs on this.
BoundReport evaluate_extended(const Spectrum& sphi, const Spectrum& spsi,
                              const TransformedSpectrum& ts,
                              const PolynomialTransform& p, std::size_t j,
                              std::size_t r, double numerator, bool gap_ok,
                              const AttainedDistances& attained,
                              NormKind requested = NormKind::rho1);

/// Matrix-level bound; throws GapViolation / NoValidInterval.
BoundReport extended_bound(const SymMatrix& phi, const SymMatrix& psi,
                           const PolynomialTransform& p, std::size_t j,
                           std::size_t r,
                           NormKind requested = NormKind::rho1);

/// Matrix-level bound that reports infeasibility in the record instead of
/// throwing.
BoundReport try_extended_bound(const SymMatrix& phi, const SymMatrix& psi,
                               const PolynomialTransform& p, std::size_t j,
                               std::size_t r,
                               NormKind requested = NormKind::rho1);

/// Do the untransformed spectra admit DK intervals for the (j, r) blocks?
/// Identity-transform feasibility of the extended machinery.
bool standard_requirements_feasible(const Spectrum& sphi, const Spectrum& spsi,
                                    std::size_t j, std::size_t r);

/// Same question for a caller-chosen index bookkeeping of the Phi values
/// (e.g. reversed order for opposite-ends comparisons). `gaps_ok` is the
/// eigengap status of that bookkeeping, supplied by the caller.
bool standard_requirements_feasible(const TransformedSpectrum& phi_values,
                                    const Spectrum& spsi, std::size_t j,
                                    std::size_t r, bool gaps_ok);

}  // namespace dkb
