#pragma once

#include "expmap/families.hpp"

namespace testutil {

inline expmap::FamilySpec beta_spec(double lo = 1.1, double hi = 2.9,
                                    int pieces = 4) {
  expmap::FamilySpec spec;
  spec.kind = expmap::FamilyKind::BetaLike;
  spec.param_interval = {lo, hi};
  spec.base = expmap::mod_one_base(pieces);
  return spec;
}

inline expmap::FamilyDescriptor beta_family(double lo = 1.1, double hi = 2.9,
                                            int pieces = 4) {
  return expmap::build_family(beta_spec(lo, hi, pieces));
}

// Base map with a quadratic piece, exercising the nonlinear branch paths.
inline expmap::FamilyDescriptor curved_beta_family(double lo = 1.5,
                                                   double hi = 2.5) {
  expmap::FamilySpec spec;
  spec.kind = expmap::FamilyKind::BetaLike;
  spec.param_interval = {lo, hi};
  spec.base.breakpoints = {0.0, 1.0, 2.0, 3.0};
  spec.base.pieces = {{0.7, 0.3}, {1.0, 0.0}, {0.8, 0.2}};
  return expmap::build_family(spec);
}

inline expmap::FamilyDescriptor tent_family(double a_lo, double a_hi,
                                            expmap::SlopePath alpha,
                                            expmap::SlopePath beta) {
  expmap::FamilySpec spec;
  spec.kind = expmap::FamilyKind::SkewTent;
  spec.param_interval = {a_lo, a_hi};
  spec.alpha = alpha;
  spec.beta = beta;
  return expmap::build_family(spec);
}

// Fixed slopes (constant in a); the parameter interval is a dummy axis.
inline expmap::FamilyDescriptor fixed_tent(double alpha, double beta) {
  return tent_family(0.0, 1.0, {alpha, 0.0}, {beta, 0.0});
}

// alpha(a) = beta(a) = 2 + a on the valid side of the slope constraint.
inline expmap::FamilyDescriptor symmetric_tent(double a_lo = -0.9,
                                               double a_hi = 0.0) {
  return tent_family(a_lo, a_hi, {2.0, 1.0}, {2.0, 1.0});
}

inline expmap::FamilyDescriptor markov_family(
    double lo = 0.1, double hi = 0.9,
    expmap::HomeoSpec g = {expmap::HomeoKind::Identity, 0.0}) {
  expmap::FamilySpec spec;
  spec.kind = expmap::FamilyKind::MarkovExample;
  spec.param_interval = {lo, hi};
  spec.g = g;
  return expmap::build_family(spec);
}

inline expmap::FamilyDescriptor doubling_family() {
  expmap::FamilySpec spec;
  spec.kind = expmap::FamilyKind::PiecewiseAffine;
  spec.param_interval = {0.0, 1.0};
  spec.breakpoints = {0.0, 0.5, 1.0};
  spec.pieces = {{0.0, 2.0}, {0.0, 2.0}};
  return expmap::build_family(spec);
}

}  // namespace testutil
