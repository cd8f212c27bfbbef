#pragma once

#include <optional>
#include <vector>

#include "expmap/families.hpp"

namespace expmap {

/// Forward orbit x_j = T_a^j(X(a)) with the parameter-derivative recursion
///   d_j = dT_a/dx(x_{j-1}) d_{j-1} + dT_a/da(x_{j-1})
/// and the cumulative space derivative of T_a^j at X(a).
struct OrbitRecord {
  double param = 0.0;
  std::vector<double> points;        // x_0 .. x_n
  std::vector<double> param_derivs;  // d_0 .. d_n
  std::vector<double> space_derivs;  // s_0 = 1, s_j = (T_a^j)'(x_0)
  std::vector<int> breakpoint_hits;  // steps within guard_tol of a breakpoint

  int first_hit() const { return breakpoint_hits.empty() ? -1 : breakpoint_hits.front(); }
  int steps() const { return static_cast<int>(points.size()) - 1; }
};

/// A C^1 parameter curve supplied as samples on a parameter grid.
struct SampledMap {
  std::vector<double> params;
  std::vector<double> values;
  std::vector<double> derivs;
};

/// Closed-form curves used to seed orbits: affine c0 + c1*a, reciprocal c0/a,
/// and the period-two point of the identity Markov family.
struct XMapSpec {
  enum class Type { Affine, Reciprocal, MarkovPeriod2 };
  Type type = Type::Affine;
  double c0 = 1.0;
  double c1 = 0.0;
};

double x_value(const XMapSpec& x, double a);
double x_deriv(const XMapSpec& x, double a);
SampledMap sample_map(const XMapSpec& x, const std::vector<double>& params);
std::vector<double> uniform_param_grid(const FamilyDescriptor& family, int grid_size);

struct ConditionOneReport {
  int j0 = -1;                // smallest step clearing the threshold, -1 if none
  double threshold = 0.0;     // sup|da T| / (lambda - 1) + 2L
  double min_abs_deriv = 0.0; // inf over the grid of |d_{j0}|
  double C0_estimate = 0.0;   // max over grid and j0 < j <= j_max of max(r, 1/r)
  bool pass = false;
};

struct TransversalityReport {
  double Lambda0 = 0.0;
  std::optional<int> j0_found;
  double deriv_at_j0 = 0.0;
  double nondegeneracy_sum = 0.0;
  double tail_bound = 0.0;  // Lambda0 * lambda^{-j_max}, truncation error scale
  bool good_map = false;
  std::optional<int> turning_periodic;
};

struct SkewTentPartials {
  double dalpha = 0.0;          // d/dalpha of T^j at the turning point
  double dbeta = 0.0;           // d/dbeta  of T^j at the turning point
  double orbit_deriv_sign = 0.0;  // sign of (T^{j-1})'(1)
};

OrbitRecord orbit_with_derivative(const FamilyDescriptor& family, double a,
                                  double X_value, double X_deriv, int n,
                                  double guard_tol = 1e-11);

/// Max over j <= n of |d_j - central difference in a| / max(|d_j|, 1).
/// Throws CylinderCrossing if the orbit combinatorics change over [a-h, a+h].
double finite_difference_check(const FamilyDescriptor& family, double a,
                               double X_value, double X_deriv, int n, double h);

double condition_one_threshold(const FamilyDescriptor& family,
                               int param_grid = 100, int space_grid = 1000);

ConditionOneReport check_condition_one(const FamilyDescriptor& family,
                                       const SampledMap& X, int j_max,
                                       double guard_tol = 1e-11);

TransversalityReport transversality_report(const FamilyDescriptor& family,
                                           double a0, int j_max,
                                           double margin = 1e-6,
                                           double c_tol = 1e-12);

SkewTentPartials skew_tent_partials(const FamilyDescriptor& family, double a,
                                    int j, double c_tol = 1e-12);

}  // namespace expmap
