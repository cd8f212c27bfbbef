#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expmap/density.hpp"
#include "expmap/param_derivative.hpp"

namespace expmap {

struct OrbitOptions {
  int n = 1000000;
  int burn_in = 1000;
  bool dither = false;  // breaks exact dyadic collapse, seeded
  double dither_scale = 0x1p-48;
  std::uint64_t seed = 0;
};

/// x_1 .. x_n after the burn-in, optionally with a tiny uniform perturbation
/// applied after each map step.
std::vector<double> iterate_orbit(const MapSnapshot& snap, double x0,
                                  const OrbitOptions& opt);

struct EmpiricalMeasure {
  std::vector<double> samples;  // sorted
  Interval domain;

  double cdf(double x) const;
};

EmpiricalMeasure empirical_measure(std::vector<double> samples, Interval domain);

/// sup |F_emp - F| over the sample points (both one-sided limits) and the
/// density's bin edges.
double kolmogorov_distance(const EmpiricalMeasure& emp,
                           const DensityEstimate& density);

/// Fraction of the samples landing in B.
double birkhoff_statistic(const std::vector<double>& samples, const Interval& B);

/// Checks F_n <= C * |B| / |domain| for the interval frequency.
bool limsup_check(double frequency, const Interval& B, const Interval& domain,
                  double C);

struct SweepConfig {
  int n = 1000000;
  int bins = 4096;
  int burn_in = 1000;
  double threshold = 0.01;  // Kolmogorov distance acceptance level
  std::uint64_t seed = 0;
  bool dither = false;
  int threads = 0;  // 0 picks the hardware count, 1 forces serial
  std::vector<Interval> test_intervals;
};

struct SweepRow {
  double param = 0.0;
  double x0 = 0.0;
  double ks = 0.0;
  bool pass = false;
  std::string error;  // nonempty when the row could not be evaluated
  std::vector<double> interval_freqs;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int pass_count = 0;
  int fail_count = 0;
  int error_count = 0;
};

/// One row per parameter: orbit of X(a), stationary density at a, Kolmogorov
/// distance between them.  Rows are independent and seeded per index, so the
/// result is identical in serial and parallel runs.
SweepResult parameter_sweep(const FamilyDescriptor& family, const SampledMap& X,
                            const SweepConfig& config);

}  // namespace expmap
