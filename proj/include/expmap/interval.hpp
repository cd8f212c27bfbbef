#pragma once

#include <algorithm>
#include <cmath>

namespace expmap {

/// Closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }

  bool contains(double x, double tol = 0.0) const {
    return x >= lo - tol && x <= hi + tol;
  }

  bool contains(const Interval& other, double tol = 0.0) const {
    return other.lo >= lo - tol && other.hi <= hi + tol;
  }

  Interval hull(const Interval& other) const {
    return {std::min(lo, other.lo), std::max(hi, other.hi)};
  }
};

inline double dist(const Interval& a, const Interval& b) {
  if (a.hi < b.lo) return b.lo - a.hi;
  if (b.hi < a.lo) return a.lo - b.hi;
  return 0.0;
}

}  // namespace expmap
