#pragma once

#include <Eigen/SparseCore>
#include <vector>

#include "expmap/families.hpp"

namespace expmap {

/// Piecewise constant density on a uniform grid over `domain`.
struct DensityEstimate {
  Interval domain;
  int bins = 0;
  std::vector<double> values;  // density height per bin, integrates to ~1
  Interval support;            // hull of the bins carrying mass
  double normalization_residual = 0.0;
  double stationarity_residual = 0.0;  // L1 mass change of the last iteration
  int iterations = 0;

  double bin_width() const { return domain.length() / bins; }
  double mass(int i) const { return values[i] * bin_width(); }
  double cdf(double x) const;  // piecewise linear
  double inf_on(const Interval& w) const;
};

/// Row-stochastic transfer matrix on bin masses: entry (i, k) is the fraction
/// of bin i that T maps into bin k, computed from exact branch inverses.
Eigen::SparseMatrix<double> ulam_matrix(const MapSnapshot& snap, int bins);

/// Power iteration on the transposed Ulam matrix from the uniform mass vector.
/// Throws NoConvergence when the L1 mass change stays above tol.
DensityEstimate invariant_density(const MapSnapshot& snap, int bins,
                                  double tol = 1e-12, int max_iter = 100000);

/// Exact invariant density of x -> beta*x mod 1, bin averaged:
/// phi(x) proportional to the sum of beta^{-n} over n >= 0 with x < T^n(1).
DensityEstimate parry_density(double beta, int bins, double tail_tol = 1e-14);

/// Mass hull of the estimate, cross-checked against the orbit-closure
/// invariant interval; disagreement beyond one bin width is SupportMismatch.
Interval support_estimate(const MapSnapshot& snap, const DensityEstimate& density);

/// Integral of |f - g|; requires matching domain and bin count.
double l1_distance(const DensityEstimate& f, const DensityEstimate& g);

struct VariationReport {
  int tau = 0;        // smallest power with lambda^tau > 3
  double delta = 0.0; // shortest monotonicity interval of T^tau
  double Cv = 0.0;    // 3 / (delta * (lambda^tau - 3))
  double empirical_variation = 0.0;  // total variation of the bin values
  Interval lower_interval;           // best window of length 1/(2 Cv)
  double window_min = 0.0;           // inf of the density on that window
  bool lower_bound_ok = false;       // window_min >= 1/(3 Cv)
  double inf_support = 0.0;
  double sup_density = 0.0;
  double C1_estimate = 0.0;  // max(sup phi, 1/inf phi on support)
};

/// Variation bound Cv and the guaranteed lower-bound window for the density,
/// checked against the supplied estimate.
VariationReport variation_report(const FamilyDescriptor& family, double a,
                                 const DensityEstimate& density);

}  // namespace expmap
