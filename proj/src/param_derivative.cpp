#include "expmap/param_derivative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace expmap {

namespace {
constexpr double kEscapeTol = 1e-9;
}

double x_value(const XMapSpec& x, double a) {
  switch (x.type) {
    case XMapSpec::Type::Affine: return x.c0 + x.c1 * a;
    case XMapSpec::Type::Reciprocal: return x.c0 / a;
    case XMapSpec::Type::MarkovPeriod2: return a * a / (1.0 - a + a * a);
  }
  return 0.0;
}

double x_deriv(const XMapSpec& x, double a) {
  switch (x.type) {
    case XMapSpec::Type::Affine: return x.c1;
    case XMapSpec::Type::Reciprocal: return -x.c0 / (a * a);
    case XMapSpec::Type::MarkovPeriod2: {
      double q = 1.0 - a + a * a;
      return a * (2.0 - a) / (q * q);
    }
  }
  return 0.0;
}

SampledMap sample_map(const XMapSpec& x, const std::vector<double>& params) {
  SampledMap out;
  out.params = params;
  for (double a : params) {
    out.values.push_back(x_value(x, a));
    out.derivs.push_back(x_deriv(x, a));
  }
  return out;
}

std::vector<double> uniform_param_grid(const FamilyDescriptor& family, int grid_size) {
  if (grid_size < 2) throw ConfigError("parameter grid needs at least 2 points");
  std::vector<double> grid(grid_size);
  const Interval& I = family.param_interval;
  for (int i = 0; i < grid_size; ++i)
    grid[i] = I.lo + I.length() * double(i) / double(grid_size - 1);
  return grid;
}

OrbitRecord orbit_with_derivative(const FamilyDescriptor& family, double a,
                                  double X_value, double X_deriv, int n,
                                  double guard_tol) {
  MapSnapshot snap = snapshot(family, a);
  if (!snap.domain.contains(X_value, kEscapeTol))
    throw DomainViolation("orbit seed outside the invariant interval");

  OrbitRecord rec;
  rec.param = a;
  rec.points.reserve(n + 1);
  rec.param_derivs.reserve(n + 1);
  rec.space_derivs.reserve(n + 1);
  rec.points.push_back(X_value);
  rec.param_derivs.push_back(X_deriv);
  rec.space_derivs.push_back(1.0);

  double x = X_value, d = X_deriv, s = 1.0;
  for (int j = 1; j <= n; ++j) {
    for (size_t i = 1; i + 1 < snap.breakpoints.size(); ++i) {
      if (std::abs(x - snap.breakpoints[i]) <= guard_tol) {
        rec.breakpoint_hits.push_back(j - 1);
        break;
      }
    }
    int k = branch_index(snap, std::clamp(x, snap.domain.lo, snap.domain.hi));
    double dx = branch_derivative(snap, k, x);
    d = dx * d + branch_param_partial(snap, k, x);
    s = dx * s;
    x = branch_value(snap, k, x);
    if (!snap.domain.contains(x, kEscapeTol))
      throw DomainEscape("orbit left the invariant interval at step " +
                         std::to_string(j));
    x = std::clamp(x, snap.domain.lo, snap.domain.hi);
    rec.points.push_back(x);
    rec.param_derivs.push_back(d);
    rec.space_derivs.push_back(s);
  }
  return rec;
}

double finite_difference_check(const FamilyDescriptor& family, double a,
                               double X_value, double X_deriv, int n, double h) {
  if (!family.param_interval.contains(a - h) ||
      !family.param_interval.contains(a + h))
    throw ParamOutOfRange("finite difference stencil leaves the parameter interval");

  OrbitRecord lo = orbit_with_derivative(family, a - h, X_value - h * X_deriv,
                                         X_deriv, n);
  OrbitRecord mid = orbit_with_derivative(family, a, X_value, X_deriv, n);
  OrbitRecord hi = orbit_with_derivative(family, a + h, X_value + h * X_deriv,
                                         X_deriv, n);

  // All three orbits must share one element of the parameter partition.
  MapSnapshot s_lo = snapshot(family, a - h);
  MapSnapshot s_mid = snapshot(family, a);
  MapSnapshot s_hi = snapshot(family, a + h);
  for (int j = 0; j < n; ++j) {
    int k = branch_index(s_mid, mid.points[j]);
    if (branch_index(s_lo, lo.points[j]) != k ||
        branch_index(s_hi, hi.points[j]) != k)
      throw CylinderCrossing("orbit combinatorics change across the stencil at step " +
                             std::to_string(j));
  }

  double worst = 0.0;
  for (int j = 1; j <= n; ++j) {
    double central = (hi.points[j] - lo.points[j]) / (2.0 * h);
    double err = std::abs(mid.param_derivs[j] - central) /
                 std::max(std::abs(mid.param_derivs[j]), 1.0);
    worst = std::max(worst, err);
  }
  return worst;
}

double condition_one_threshold(const FamilyDescriptor& family, int param_grid,
                               int space_grid) {
  double sup = 0.0;
  for (double a : uniform_param_grid(family, param_grid)) {
    MapSnapshot snap = snapshot(family, a);
    Interval K = invariant_interval(snap);
    for (int i = 0; i <= space_grid; ++i) {
      double x = K.lo + K.length() * double(i) / double(space_grid);
      if (is_interior_breakpoint(snap, x)) continue;
      int k = branch_index(snap, x);
      sup = std::max(sup, std::abs(branch_param_partial(snap, k, x)));
    }
  }
  return sup / (family.lambda_min - 1.0) + 2.0 * family.lip_const;
}

ConditionOneReport check_condition_one(const FamilyDescriptor& family,
                                       const SampledMap& X, int j_max,
                                       double guard_tol) {
  if (X.params.size() < 2) throw ConfigError("condition (I) check needs grid_size >= 2");

  ConditionOneReport rep;
  rep.threshold = condition_one_threshold(family);

  std::vector<OrbitRecord> orbits;
  orbits.reserve(X.params.size());
  for (size_t i = 0; i < X.params.size(); ++i)
    orbits.push_back(orbit_with_derivative(family, X.params[i], X.values[i],
                                           X.derivs[i], j_max, guard_tol));

  auto reliable_through = [](const OrbitRecord& o, int j) {
    return o.first_hit() < 0 || o.first_hit() >= j;
  };

  double best = 0.0;
  for (int j = 0; j <= j_max && rep.j0 < 0; ++j) {
    double inf_abs = std::numeric_limits<double>::infinity();
    int usable = 0;
    for (const OrbitRecord& o : orbits) {
      if (!reliable_through(o, j)) continue;  // finitely many flagged parameters
      ++usable;
      inf_abs = std::min(inf_abs, std::abs(o.param_derivs[j]));
    }
    if (usable == 0) continue;
    best = std::max(best, inf_abs);
    if (inf_abs > rep.threshold) {
      rep.j0 = j;
      rep.min_abs_deriv = inf_abs;
    }
  }

  if (rep.j0 < 0) {
    rep.min_abs_deriv = best;
    rep.pass = false;
    return rep;
  }

  double c0 = 1.0;
  for (const OrbitRecord& o : orbits) {
    for (int j = rep.j0 + 1; j <= j_max; ++j) {
      if (!reliable_through(o, j)) break;
      double space = std::abs(o.space_derivs[j] / o.space_derivs[rep.j0]);
      if (space == 0.0) continue;
      double r = std::abs(o.param_derivs[j]) / space;
      if (r > 0.0) c0 = std::max(c0, std::max(r, 1.0 / r));
    }
  }
  rep.C0_estimate = c0;
  rep.pass = true;
  return rep;
}

namespace {

struct TentStep {
  double deriv;          // one-sided T' at the point
  double dalpha_partial; // dT/dalpha at the point
  double dbeta_partial;  // dT/dbeta at the point
  double next;
};

TentStep tent_step(double alpha, double beta, double x) {
  if (x <= 0.0) return {alpha, x, 0.0, 1.0 + alpha * x};
  return {-beta, 0.0, -x, 1.0 - beta * x};
}

}  // namespace

TransversalityReport transversality_report(const FamilyDescriptor& family,
                                           double a0, int j_max, double margin,
                                           double c_tol) {
  if (family.kind != FamilyKind::SkewTent)
    throw NotUnimodal("transversality report needs the skew tent kind");
  const SkewTentData& d = family.tent_data();
  double alpha = d.alpha(a0), beta = d.beta(a0);
  double lambda = std::min(alpha, beta);  // expansion at a0 itself

  TransversalityReport rep;
  rep.Lambda0 = std::max(std::abs(d.alpha.deriv()) * (beta - 1.0),
                         std::abs(d.beta.deriv())) /
                (lambda - 1.0);
  rep.tail_bound = rep.Lambda0 * std::pow(lambda, -double(j_max));

  OrbitRecord orbit = orbit_with_derivative(family, a0, 0.0, 0.0, j_max);

  // period of the turning point, if hit within j_max steps
  for (int i = 1; i <= j_max; ++i) {
    if (std::abs(orbit.points[i]) <= c_tol) {
      rep.turning_periodic = i;
      break;
    }
  }

  for (int j = 3; j <= j_max; ++j) {
    if (std::abs(orbit.param_derivs[j]) > rep.Lambda0 + margin) {
      rep.j0_found = j;
      rep.deriv_at_j0 = orbit.param_derivs[j];
      break;
    }
  }

  // truncated sum of dT/da(T^i(0)) / (T^i)'(1)
  MapSnapshot snap = snapshot(family, a0);
  int sum_depth = rep.turning_periodic ? std::min(*rep.turning_periodic - 1, j_max)
                                       : j_max;
  double prod1 = 1.0;
  for (int i = 1; i <= sum_depth; ++i) {
    double xi = orbit.points[i];
    prod1 *= tent_step(alpha, beta, xi).deriv;
    int k = branch_index(snap, xi);
    rep.nondegeneracy_sum += branch_param_partial(snap, k, xi) / prod1;
  }

  if (rep.turning_periodic) {
    int p = *rep.turning_periodic;
    double dp = 1.0;
    for (int i = 1; i <= p - 1; ++i)
      dp *= tent_step(alpha, beta, orbit.points[i]).deriv;
    rep.good_map = std::abs(dp) * std::min(alpha, beta) > 2.0;
  }
  return rep;
}

SkewTentPartials skew_tent_partials(const FamilyDescriptor& family, double a,
                                    int j, double c_tol) {
  if (family.kind != FamilyKind::SkewTent)
    throw NotUnimodal("skew tent partials need the skew tent kind");
  if (j < 3) throw ConfigError("skew tent partials need j >= 3");
  const SkewTentData& d = family.tent_data();
  double alpha = d.alpha(a), beta = d.beta(a);

  double x = 0.0, dalpha = 0.0, dbeta = 0.0, prod = 1.0;
  for (int i = 1; i <= j; ++i) {
    TentStep st = tent_step(alpha, beta, x);
    dalpha = st.deriv * dalpha + st.dalpha_partial;
    dbeta = st.deriv * dbeta + st.dbeta_partial;
    if (i >= 2) prod *= st.deriv;  // accumulates (T^{j-1})'(1)
    x = st.next;
    if (i < j && std::abs(x) <= c_tol)
      throw TurningPointHit("turning point orbit returns to 0 at step " +
                            std::to_string(i));
  }
  return {dalpha, dbeta, prod > 0.0 ? 1.0 : (prod < 0.0 ? -1.0 : 0.0)};
}

}  // namespace expmap
