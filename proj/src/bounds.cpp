#include "dkb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dkb/errors.hpp"

namespace dkb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFragileMargin = 1e-10;

void check_block(std::size_t n, std::size_t j, std::size_t r) {
  if (r < 1 || j + r > n)
    throw InvalidInput("bounds: block indices out of range");
}

/// psi_j in 1-based position terms; position 0 is -inf, position n+1 is +inf.
double psi_at(const Spectrum& s, std::size_t pos_1based) {
  if (pos_1based == 0) return -kInf;
  if (pos_1based > s.n) return kInf;
  return s.eigenvalues[pos_1based - 1];
}

double min_inner(const TransformedSpectrum& ts, std::size_t j, std::size_t r) {
  double m = kInf;
  for (std::size_t i = j; i < j + r; ++i) m = std::min(m, ts.values[i]);
  return m;
}

double max_inner(const TransformedSpectrum& ts, std::size_t j, std::size_t r) {
  double m = -kInf;
  for (std::size_t i = j; i < j + r; ++i) m = std::max(m, ts.values[i]);
  return m;
}

}  // namespace

bool spectrum_has_gaps(const std::vector<double>& ascending, std::size_t j,
                       std::size_t r, double tol) {
  const std::size_t n = ascending.size();
  check_block(n, j, r);
  if (tol < 0.0) throw InvalidInput("spectrum_has_gaps: negative tolerance");
  const double lo_gap =
      (j == 0) ? kInf : ascending[j] - ascending[j - 1];
  const double hi_gap =
      (j + r == n) ? kInf : ascending[j + r] - ascending[j + r - 1];
  return lo_gap > tol && hi_gap > tol;
}

bool check_gap_assumption(const Spectrum& sphi, const Spectrum& spsi,
                          std::size_t j, std::size_t r, double tol) {
  if (sphi.n != spsi.n)
    throw ShapeError("check_gap_assumption: spectra sizes differ");
  return spectrum_has_gaps(sphi.eigenvalues, j, r, tol) &&
         spectrum_has_gaps(spsi.eigenvalues, j, r, tol);
}

Theorem4Bound theorem4_bound(const Spectrum& sphi, const Spectrum& spsi,
                             const SymMatrix& phi, const SymMatrix& psi,
                             std::size_t r) {
  if (phi.n() != psi.n() || sphi.n != spsi.n || sphi.n != phi.n())
    throw ShapeError("theorem4_bound: dimensions differ");
  if (!check_gap_assumption(sphi, spsi, 0, r, 0.0))
    throw GapViolation("theorem4_bound: r-th eigengap is zero");

  const std::size_t n = sphi.n;
  const double phi_r = sphi.eigenvalues[r - 1];
  const double psi_r = spsi.eigenvalues[r - 1];
  const double phi_r1 = (r == n) ? kInf : sphi.eigenvalues[r];
  const double psi_r1 = (r == n) ? kInf : spsi.eigenvalues[r];

  Theorem4Bound out;
  out.delta = std::max(phi_r1 - psi_r, psi_r1 - phi_r);
  const double num = spectral_norm(scale_sub(1.0, phi, psi));
  out.rho2_bound = num / out.delta;
  out.rho1_bound = c_factor(n, r) * out.rho2_bound;
  return out;
}

IndexPartition index_partition(const TransformedSpectrum& ts, std::size_t j,
                               std::size_t r, const IntervalTriplet& interval) {
  const std::size_t n = ts.size();
  check_block(n, j, r);
  if (!(interval.a <= interval.b))
    throw InvalidInput("index_partition: interval has a > b");

  IndexPartition part;
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= j && i < j + r) continue;
    const double v = ts.values[i];
    if (v > interval.b) {
      part.above_b.push_back(i);
    } else if (v < interval.a) {
      part.below_a.push_back(i);
    } else {
      part.unclassified.push_back(i);
      if (v == interval.a || v == interval.b) part.endpoint_hit = true;
    }
  }
  return part;
}

IntervalTriplet interval_choice1(const TransformedSpectrum& ts,
                                 const Spectrum& spsi, std::size_t j,
                                 std::size_t r) {
  check_block(ts.size(), j, r);
  if (ts.size() != spsi.n)
    throw ShapeError("interval_choice1: spectra sizes differ");
  IntervalTriplet t;
  t.choice = 1;
  t.a = min_inner(ts, j, r);
  t.b = max_inner(ts, j, r);
  t.delta = std::min(psi_at(spsi, j + r + 1) - t.b, t.a - psi_at(spsi, j));
  return t;
}

std::pair<IntervalTriplet, IndexPartition> interval_choice2(
    const TransformedSpectrum& ts, const Spectrum& spsi, std::size_t j,
    std::size_t r) {
  check_block(ts.size(), j, r);
  if (ts.size() != spsi.n)
    throw ShapeError("interval_choice2: spectra sizes differ");
  IntervalTriplet t;
  t.choice = 2;
  t.a = psi_at(spsi, j + 1);
  t.b = psi_at(spsi, j + r);

  IndexPartition part = index_partition(ts, j, r, t);
  double min_above = kInf;   // min over A1
  double max_below = -kInf;  // max over A2
  for (std::size_t i : part.above_b) min_above = std::min(min_above, ts.values[i]);
  for (std::size_t i : part.below_a) max_below = std::max(max_below, ts.values[i]);
  t.delta = std::min(min_above - t.b, t.a - max_below);
  return {t, std::move(part)};
}

bool check_constraints2A(const TransformedSpectrum& ts, const Spectrum& spsi,
                         std::size_t j, std::size_t r,
                         const IntervalTriplet& t1) {
  check_block(ts.size(), j, r);
  const double psi_in_lo = psi_at(spsi, j + 1);
  const double psi_in_hi = psi_at(spsi, j + r);
  return t1.delta > 0.0 && (t1.a - psi_in_lo) < t1.delta &&
         (psi_in_hi - t1.b) < t1.delta;
}

bool check_constraints2B(const TransformedSpectrum& ts,
                         const Spectrum& /*spsi*/, std::size_t j,
                         std::size_t r, const IntervalTriplet& t2) {
  // The psi order statistics already live in t2's endpoints.
  check_block(ts.size(), j, r);
  const double lo = min_inner(ts, j, r);
  const double hi = max_inner(ts, j, r);
  return t2.delta > 0.0 && (t2.a - lo) < t2.delta && (hi - t2.b) < t2.delta;
}

AffineDeltas affine_deltas(const PolynomialTransform& f, const Spectrum& sphi,
                           const Spectrum& spsi, std::size_t j, std::size_t r) {
  if (sphi.n != spsi.n) throw ShapeError("affine_deltas: spectra sizes differ");
  const AffineEndpoints e = affine_endpoints(f, sphi, j, r);
  AffineDeltas d;
  d.delta1 = std::min(psi_at(spsi, j + r + 1) - e.max_inner,
                      e.min_inner - psi_at(spsi, j));
  d.delta2 = std::min(e.min_excluded_above - psi_at(spsi, j + r),
                      psi_at(spsi, j + 1) - e.max_excluded_below);
  return d;
}

namespace {

/// Margin bookkeeping for the fragility diagnostic: smallest slack in the
/// strict inequalities that certify a choice, plus the distance of every
/// classified value from the interval it had to clear.
double choice_margin(const TransformedSpectrum& ts, const IntervalTriplet& t,
                     const IndexPartition& part, double slack_lo,
                     double slack_hi) {
  double m = std::min({t.delta, slack_lo, slack_hi});
  for (std::size_t i : part.above_b) m = std::min(m, ts.values[i] - t.b);
  for (std::size_t i : part.below_a) m = std::min(m, t.a - ts.values[i]);
  return m;
}

}  // namespace

DkFeasibility dk_feasibility(const TransformedSpectrum& ts,
                             const Spectrum& spsi, std::size_t j,
                             std::size_t r) {
  DkFeasibility out;

  {
    ChoiceDiagnostics& c = out.choice1;
    c.interval = interval_choice1(ts, spsi, j, r);
    c.partition = index_partition(ts, j, r, c.interval);
    c.constraints1 = c.partition.covers_all();
    c.constraints2 = check_constraints2A(ts, spsi, j, r, c.interval);
    if (c.valid()) {
      const double slack_lo = c.interval.delta - (c.interval.a - psi_at(spsi, j + 1));
      const double slack_hi = c.interval.delta - (psi_at(spsi, j + r) - c.interval.b);
      c.min_margin = choice_margin(ts, c.interval, c.partition, slack_lo, slack_hi);
    }
  }
  {
    ChoiceDiagnostics& c = out.choice2;
    auto [t2, part2] = interval_choice2(ts, spsi, j, r);
    c.interval = t2;
    c.partition = std::move(part2);
    c.constraints1 = c.partition.covers_all();
    c.constraints2 = check_constraints2B(ts, spsi, j, r, c.interval);
    if (c.valid()) {
      const double slack_lo = c.interval.delta - (c.interval.a - min_inner(ts, j, r));
      const double slack_hi = c.interval.delta - (max_inner(ts, j, r) - c.interval.b);
      c.min_margin = choice_margin(ts, c.interval, c.partition, slack_lo, slack_hi);
    }
  }
  return out;
}

double DkFeasibility::best_delta() const {
  double d = -kInf;
  if (choice1.valid()) d = std::max(d, choice1.interval.delta);
  if (choice2.valid()) d = std::max(d, choice2.interval.delta);
  return d;
}

int DkFeasibility::used_choice() const {
  if (choice1.valid() && choice2.valid())
    return choice1.interval.delta >= choice2.interval.delta ? 1 : 2;
  if (choice1.valid()) return 1;
  if (choice2.valid()) return 2;
  return 0;
}

bool DkFeasibility::fragile() const {
  bool frag = false;
  if (choice1.valid()) frag = frag || choice1.min_margin < kFragileMargin;
  if (choice2.valid()) frag = frag || choice2.min_margin < kFragileMargin;
  return frag;
}

AttainedDistances attained_distances(const Spectrum& sphi,
                                     const Spectrum& spsi, std::size_t j,
                                     std::size_t r) {
  const EigenvectorBlock w = EigenvectorBlock::from_spectrum(sphi, j, r);
  const EigenvectorBlock v = EigenvectorBlock::from_spectrum(spsi, j, r);
  return {rho1(w, v), rho2(w, v)};
}

std::string BoundReport::failure_reason() const {
  if (!gap_ok) return "gap";
  if (feasible()) return "";
  if (!feasibility.choice1.constraints1 && !feasibility.choice2.constraints1)
    return "constraints1";
  return "constraints2";
}

BoundReport evaluate_extended(const Spectrum& sphi, const Spectrum& spsi,
                              const TransformedSpectrum& ts,
                              const PolynomialTransform& p, std::size_t j,
                              std::size_t r, double numerator, bool gap_ok,
                              const AttainedDistances& attained,
                              NormKind requested) {
  BoundReport rep;
  rep.n = sphi.n;
  rep.j = j;
  rep.r = r;
  rep.transform = p;
  rep.requested = requested;
  rep.rho1_attained = attained.rho1;
  rep.rho2_attained = attained.rho2;
  rep.numerator = numerator;
  rep.gap_ok = gap_ok;
  if (!gap_ok) return rep;

  rep.feasibility = dk_feasibility(ts, spsi, j, r);
  if (!rep.feasibility.any_valid()) return rep;

  const double delta = rep.feasibility.best_delta();
  rep.delta_used = delta;
  rep.interval = rep.feasibility.used_choice() == 1
                     ? rep.feasibility.choice1.interval
                     : rep.feasibility.choice2.interval;
  const double b2 = numerator / delta;
  rep.bound_rho2 = b2;
  rep.bound_rho1 = c_factor(rep.n, r) * b2;
  return rep;
}

namespace {

BoundReport build_report(const SymMatrix& phi, const SymMatrix& psi,
                         const PolynomialTransform& p, std::size_t j,
                         std::size_t r, NormKind requested) {
  if (phi.n() != psi.n()) throw ShapeError("extended_bound: dimensions differ");
  check_block(phi.n(), j, r);
  if (!phi.all_finite() || !psi.all_finite())
    throw InvalidInput("extended_bound: non-finite entries");

  const Spectrum sphi = eig_sym(phi);
  const Spectrum spsi = eig_sym(psi);
  const bool gap_ok = check_gap_assumption(sphi, spsi, j, r, 0.0);

  const TransformedSpectrum ts = transform_spectrum(p, sphi);
  const double numerator = spectral_norm(scale_sub(1.0, eval_matrix(p, phi), psi));
  const AttainedDistances att = attained_distances(sphi, spsi, j, r);

  BoundReport rep =
      evaluate_extended(sphi, spsi, ts, p, j, r, numerator, gap_ok, att, requested);

  if (j == 0 && check_gap_assumption(sphi, spsi, 0, r, 0.0)) {
    rep.standard = theorem4_bound(sphi, spsi, phi, psi, r);
    rep.standard_feasible = true;
  }
  return rep;
}

}  // namespace

BoundReport extended_bound(const SymMatrix& phi, const SymMatrix& psi,
                           const PolynomialTransform& p, std::size_t j,
                           std::size_t r, NormKind requested) {
  BoundReport rep = build_report(phi, psi, p, j, r, requested);
  if (!rep.gap_ok)
    throw GapViolation("extended_bound: required eigengap is zero");
  if (!rep.feasible())
    throw NoValidInterval("extended_bound: no interval choice satisfies the constraints (" +
                          rep.failure_reason() + ")");
  return rep;
}

BoundReport try_extended_bound(const SymMatrix& phi, const SymMatrix& psi,
                               const PolynomialTransform& p, std::size_t j,
                               std::size_t r, NormKind requested) {
  return build_report(phi, psi, p, j, r, requested);
}

bool standard_requirements_feasible(const Spectrum& sphi, const Spectrum& spsi,
                                    std::size_t j, std::size_t r) {
  if (!check_gap_assumption(sphi, spsi, j, r, 0.0)) return false;
  return dk_feasibility(identity_values(sphi), spsi, j, r).any_valid();
}

bool standard_requirements_feasible(const TransformedSpectrum& phi_values,
                                    const Spectrum& spsi, std::size_t j,
                                    std::size_t r, bool gaps_ok) {
  if (!gaps_ok) return false;
  return dk_feasibility(phi_values, spsi, j, r).any_valid();
}

}  // namespace dkb
