#include "expmap/typicality.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace expmap {

std::vector<double> iterate_orbit(const MapSnapshot& snap, double x0,
                                  const OrbitOptions& opt) {
  if (opt.n < 1) throw ConfigError("orbit length must be >= 1");
  if (!snap.domain.contains(x0, 1e-9))
    throw DomainViolation("orbit seed outside the domain");

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> jitter(-opt.dither_scale,
                                                opt.dither_scale);
  auto step = [&](double x) {
    double y = evaluate(snap, std::clamp(x, snap.domain.lo, snap.domain.hi));
    if (opt.dither) y += jitter(rng);
    return std::clamp(y, snap.domain.lo, snap.domain.hi);
  };

  double x = std::clamp(x0, snap.domain.lo, snap.domain.hi);
  for (int i = 0; i < opt.burn_in; ++i) x = step(x);
  std::vector<double> out(opt.n);
  for (int i = 0; i < opt.n; ++i) {
    x = step(x);
    out[i] = x;
  }
  return out;
}

double EmpiricalMeasure::cdf(double x) const {
  auto it = std::upper_bound(samples.begin(), samples.end(), x);
  return double(it - samples.begin()) / double(samples.size());
}

EmpiricalMeasure empirical_measure(std::vector<double> samples, Interval domain) {
  if (samples.empty()) throw EmptyOrbit("no samples");
  std::sort(samples.begin(), samples.end());
  return {std::move(samples), domain};
}

double kolmogorov_distance(const EmpiricalMeasure& emp,
                           const DensityEstimate& density) {
  double w = density.bin_width();
  std::vector<double> prefix(density.bins + 1, 0.0);
  for (int i = 0; i < density.bins; ++i)
    prefix[i + 1] = prefix[i] + density.values[i] * w;
  auto cdf = [&](double x) {
    if (x <= density.domain.lo) return 0.0;
    if (x >= density.domain.hi) return prefix[density.bins];
    double t = (x - density.domain.lo) / w;
    int i = std::min(static_cast<int>(t), density.bins - 1);
    return prefix[i] + density.values[i] * (x - (density.domain.lo + i * w));
  };

  double n = double(emp.samples.size());
  double sup = 0.0;
  for (size_t i = 0; i < emp.samples.size(); ++i) {
    double f = cdf(emp.samples[i]);
    sup = std::max(sup, std::abs(double(i) / n - f));
    sup = std::max(sup, std::abs(double(i + 1) / n - f));
  }
  for (int i = 0; i <= density.bins; ++i) {
    double x = density.domain.lo + i * w;
    sup = std::max(sup, std::abs(emp.cdf(x) - prefix[i]));
  }
  return sup;
}

double birkhoff_statistic(const std::vector<double>& samples, const Interval& B) {
  if (samples.empty()) throw EmptyOrbit("no samples");
  std::size_t hits = 0;
  for (double x : samples)
    if (x > B.lo && x < B.hi) ++hits;
  return double(hits) / double(samples.size());
}

bool limsup_check(double frequency, const Interval& B, const Interval& domain,
                  double C) {
  return frequency <= C * B.length() / domain.length();
}

SweepResult parameter_sweep(const FamilyDescriptor& family, const SampledMap& X,
                            const SweepConfig& config) {
  std::size_t count = X.params.size();
  if (count == 0) throw ConfigError("empty parameter grid");

  SweepResult result;
  result.rows.resize(count);

  auto run_row = [&](std::size_t i) {
    SweepRow& row = result.rows[i];
    row.param = X.params[i];
    row.x0 = X.values[i];
    try {
      MapSnapshot snap = snapshot(family, row.param);
      OrbitOptions opt;
      opt.n = config.n;
      opt.burn_in = config.burn_in;
      opt.dither = config.dither;
      opt.seed = config.seed ^ (0x9e3779b97f4a7c15ull * (i + 1));
      std::vector<double> orbit = iterate_orbit(snap, row.x0, opt);
      for (const Interval& B : config.test_intervals)
        row.interval_freqs.push_back(birkhoff_statistic(orbit, B));
      DensityEstimate density = invariant_density(snap, config.bins);
      EmpiricalMeasure emp = empirical_measure(std::move(orbit), snap.domain);
      row.ks = kolmogorov_distance(emp, density);
      row.pass = row.ks <= config.threshold;
    } catch (const std::exception& e) {
      row.error = e.what();
      row.pass = false;
    }
  };

  unsigned threads = config.threads > 0
                         ? unsigned(config.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) run_row(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < count; i += threads) run_row(i);
      });
    for (std::thread& th : pool) th.join();
  }

  for (const SweepRow& row : result.rows) {
    if (!row.error.empty())
      ++result.error_count;
    else if (row.pass)
      ++result.pass_count;
    else
      ++result.fail_count;
  }
  return result;
}

}  // namespace expmap
