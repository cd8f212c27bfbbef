#include "expmap/density.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "expmap/symbolic.hpp"

namespace expmap {

namespace {
// Bins this much stationary mass or more count as support.
constexpr double kSupportMass = 1e-12;
}

double DensityEstimate::cdf(double x) const {
  if (x <= domain.lo) return 0.0;
  if (x >= domain.hi) return 1.0;
  double w = bin_width();
  double t = (x - domain.lo) / w;
  int i = std::min(static_cast<int>(t), bins - 1);
  double acc = 0.0;
  for (int k = 0; k < i; ++k) acc += values[k] * w;
  acc += values[i] * (x - (domain.lo + i * w));
  return acc;
}

double DensityEstimate::inf_on(const Interval& w) const {
  double bw = bin_width();
  int lo = std::clamp(static_cast<int>(std::floor((w.lo - domain.lo) / bw)), 0,
                      bins - 1);
  int hi = std::clamp(static_cast<int>(std::ceil((w.hi - domain.lo) / bw)) - 1,
                      0, bins - 1);
  double m = std::numeric_limits<double>::infinity();
  for (int i = lo; i <= hi; ++i) m = std::min(m, values[i]);
  return m;
}

Eigen::SparseMatrix<double> ulam_matrix(const MapSnapshot& snap, int bins) {
  if (bins < 2) throw BinsTooSmall("need at least 2 bins");
  double lo = snap.domain.lo, w = snap.domain.length() / bins;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(bins) * 4);

  for (int k = 1; k <= snap.branch_count(); ++k) {
    double xlo = snap.breakpoints[k - 1], xhi = snap.breakpoints[k];
    if (!(xhi > xlo)) continue;
    double y1 = branch_value(snap, k, xlo), y2 = branch_value(snap, k, xhi);
    Interval im{std::min(y1, y2), std::max(y1, y2)};

    int jlo = std::clamp(static_cast<int>(std::floor((im.lo - lo) / w)), 0,
                         bins - 1);
    int jhi = std::clamp(static_cast<int>(std::ceil((im.hi - lo) / w)), 1, bins);
    for (int j = jlo; j < jhi; ++j) {
      double ylo = std::max(im.lo, lo + j * w);
      double yhi = std::min(im.hi, lo + (j + 1) * w);
      if (!(yhi > ylo)) continue;
      double p1 = branch_inverse(snap, k, ylo);
      double p2 = branch_inverse(snap, k, yhi);
      double plo = std::clamp(std::min(p1, p2), xlo, xhi);
      double phi = std::clamp(std::max(p1, p2), xlo, xhi);
      // spread the preimage interval over the source bins
      int ilo = std::clamp(static_cast<int>(std::floor((plo - lo) / w)), 0,
                           bins - 1);
      int ihi = std::clamp(static_cast<int>(std::ceil((phi - lo) / w)), 1, bins);
      for (int i = ilo; i < ihi; ++i) {
        double overlap = std::min(phi, lo + (i + 1) * w) -
                         std::max(plo, lo + i * w);
        if (overlap > 0.0) trip.emplace_back(i, j, overlap / w);
      }
    }
  }

  Eigen::SparseMatrix<double> M(bins, bins);
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

DensityEstimate invariant_density(const MapSnapshot& snap, int bins,
                                  double tol, int max_iter) {
  Eigen::SparseMatrix<double> M = ulam_matrix(snap, bins).transpose();
  Eigen::VectorXd m = Eigen::VectorXd::Constant(bins, 1.0 / bins);

  double diff = std::numeric_limits<double>::infinity();
  int it = 0;
  while (it < max_iter) {
    Eigen::VectorXd next = M * m;
    double s = next.sum();
    if (s <= 0.0) throw NoConvergence(it);
    next /= s;
    diff = (next - m).lpNorm<1>();
    m = std::move(next);
    ++it;
    if (diff <= tol) break;
  }
  if (diff > tol) throw NoConvergence(max_iter);

  DensityEstimate d;
  d.domain = snap.domain;
  d.bins = bins;
  d.iterations = it;
  d.stationarity_residual = diff;
  double w = d.bin_width();
  d.values.resize(bins);
  for (int i = 0; i < bins; ++i) d.values[i] = m[i] / w;

  int first = -1, last = -1;
  for (int i = 0; i < bins; ++i) {
    if (m[i] > kSupportMass) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) throw SupportMismatch("stationary mass vanished everywhere");
  d.support = {d.domain.lo + first * w, d.domain.lo + (last + 1) * w};
  d.normalization_residual = std::abs(m.sum() - 1.0);
  return d;
}

DensityEstimate parry_density(double beta, int bins, double tail_tol) {
  if (beta <= 1.0) throw InvalidSlopes("beta map density needs beta > 1");
  if (bins < 2) throw BinsTooSmall("need at least 2 bins");

  // levels t_n = T^n(1) with weights beta^{-n}
  std::vector<double> levels{1.0};
  std::vector<double> weights{1.0};
  double t = 1.0, wgt = 1.0;
  while (true) {
    t = beta * t;
    t -= std::floor(t);
    wgt /= beta;
    if (wgt < tail_tol) break;
    levels.push_back(t);
    weights.push_back(wgt);
  }

  DensityEstimate d;
  d.domain = {0.0, 1.0};
  d.bins = bins;
  d.values.assign(bins, 0.0);
  double w = d.bin_width();
  double total = 0.0;
  for (int i = 0; i < bins; ++i) {
    double u = i * w, v = (i + 1) * w;
    double acc = 0.0;
    for (size_t n = 0; n < levels.size(); ++n) {
      double overlap = std::min(v, levels[n]) - u;  // |[u,v) cap [0, t_n)|
      if (overlap > 0.0) acc += weights[n] * overlap;
    }
    d.values[i] = acc / w;
    total += acc;
  }
  for (double& v : d.values) v /= total;

  int first = -1, last = -1;
  for (int i = 0; i < bins; ++i) {
    if (d.values[i] * w > kSupportMass) {
      if (first < 0) first = i;
      last = i;
    }
  }
  d.support = {first * w, (last + 1) * w};
  return d;
}

Interval support_estimate(const MapSnapshot& snap,
                          const DensityEstimate& density) {
  Interval orbit_hull = invariant_interval(snap);
  double w = density.bin_width();
  if (std::abs(density.support.lo - orbit_hull.lo) > w ||
      std::abs(density.support.hi - orbit_hull.hi) > w)
    throw SupportMismatch("density mass hull disagrees with the orbit closure");
  return density.support;
}

double l1_distance(const DensityEstimate& f, const DensityEstimate& g) {
  if (f.bins != g.bins || std::abs(f.domain.lo - g.domain.lo) > 1e-12 ||
      std::abs(f.domain.hi - g.domain.hi) > 1e-12)
    throw ConfigError("L1 distance needs matching grids");
  double w = f.bin_width(), acc = 0.0;
  for (int i = 0; i < f.bins; ++i) acc += std::abs(f.values[i] - g.values[i]) * w;
  return acc;
}

VariationReport variation_report(const FamilyDescriptor& family, double a,
                                 const DensityEstimate& density) {
  double lambda = family.lambda_min;
  if (lambda <= 1.0) throw ExpansionTooWeak("variation bound needs lambda > 1");

  VariationReport rep;
  double p = lambda;
  rep.tau = 1;
  while (p <= 3.0) {
    p *= lambda;
    ++rep.tau;
    if (rep.tau > 64) throw ExpansionTooWeak("lambda^tau never clears 3");
  }

  MapSnapshot snap = snapshot(family, a);
  rep.delta = cylinders(snap, rep.tau).min_length;
  if (!(rep.delta > 0.0))
    throw ExpansionTooWeak("degenerate monotonicity partition");
  rep.Cv = 3.0 / (rep.delta * (p - 3.0));

  for (int i = 0; i + 1 < density.bins; ++i)
    rep.empirical_variation += std::abs(density.values[i + 1] - density.values[i]);

  // best window of length 1/(2 Cv), bin aligned
  double w = density.bin_width();
  double want = std::min(1.0 / (2.0 * rep.Cv), density.domain.length());
  int span = std::max(1, static_cast<int>(std::ceil(want / w)));
  span = std::min(span, density.bins);
  double best = -1.0;
  int best_i = 0;
  for (int i = 0; i + span <= density.bins; ++i) {
    double m = std::numeric_limits<double>::infinity();
    for (int k = i; k < i + span; ++k) m = std::min(m, density.values[k]);
    if (m > best) {
      best = m;
      best_i = i;
    }
  }
  rep.window_min = best;
  rep.lower_interval = {density.domain.lo + best_i * w,
                        density.domain.lo + (best_i + span) * w};
  rep.lower_bound_ok = best >= 1.0 / (3.0 * rep.Cv);

  rep.inf_support = density.inf_on(density.support);
  rep.sup_density = *std::max_element(density.values.begin(), density.values.end());
  rep.C1_estimate = std::max(rep.sup_density,
                             rep.inf_support > 0.0
                                 ? 1.0 / rep.inf_support
                                 : std::numeric_limits<double>::infinity());
  return rep;
}

}  // namespace expmap
