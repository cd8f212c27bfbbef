#include "expmap/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace expmap {

namespace {
constexpr double kParamTol = 1e-12;
constexpr double kDomainTol = 1e-12;
constexpr double kHullTol = 1e-9;
constexpr int kHullDepth = 60;
}  // namespace

const char* family_kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::BetaLike: return "beta_like";
    case FamilyKind::SkewTent: return "skew_tent";
    case FamilyKind::MarkovExample: return "markov";
    case FamilyKind::PiecewiseAffine: return "piecewise_affine";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// BaseMapSpec
// ---------------------------------------------------------------------------

int BaseMapSpec::piece_index(double x) const {
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  int k = static_cast<int>(it - breakpoints.begin()) - 1;
  return std::clamp(k, 0, static_cast<int>(pieces.size()) - 1);
}

double BaseMapSpec::piece_value(int k, double x) const {
  double u = x - breakpoints[k];
  return pieces[k].slope * u + pieces[k].quad * u * u;
}

double BaseMapSpec::piece_derivative(int k, double x) const {
  double u = x - breakpoints[k];
  return pieces[k].slope + 2.0 * pieces[k].quad * u;
}

double BaseMapSpec::piece_inverse(int k, double y) const {
  double s = pieces[k].slope;
  double q = pieces[k].quad;
  double u;
  if (q == 0.0) {
    u = y / s;
  } else {
    // root of q u^2 + s u - y = 0 with u -> y/s as q -> 0
    u = 2.0 * y / (s + std::sqrt(s * s + 4.0 * q * y));
  }
  return breakpoints[k] + u;
}

double BaseMapSpec::value(double x) const { return piece_value(piece_index(x), x); }

double BaseMapSpec::derivative(double x) const {
  return piece_derivative(piece_index(x), x);
}

BaseMapSpec mod_one_base(int num_pieces) {
  BaseMapSpec base;
  for (int k = 0; k <= num_pieces; ++k) base.breakpoints.push_back(double(k));
  base.pieces.assign(num_pieces, BasePiece{1.0, 0.0});
  return base;
}

// ---------------------------------------------------------------------------
// HomeoSpec
// ---------------------------------------------------------------------------

double HomeoSpec::value(double x) const {
  if (kind == HomeoKind::Identity) return x;
  return (x + c * x * x) / (1.0 + c);
}

double HomeoSpec::derivative(double x) const {
  if (kind == HomeoKind::Identity) return 1.0;
  return (1.0 + 2.0 * c * x) / (1.0 + c);
}

double HomeoSpec::inverse(double y) const {
  if (kind == HomeoKind::Identity || c == 0.0) return y;
  double t = (1.0 + c) * y;
  return 2.0 * t / (1.0 + std::sqrt(1.0 + 4.0 * c * t));
}

// ---------------------------------------------------------------------------
// build_family
// ---------------------------------------------------------------------------

namespace {

void validate_request(const FamilySpec& spec) {
  const Interval& I = spec.param_interval;
  if (!(I.length() > 0.0) || !std::isfinite(I.length()))
    throw EmptyParameterInterval("parameter interval must have positive finite length");

  switch (spec.kind) {
    case FamilyKind::BetaLike: {
      const BaseMapSpec& b = spec.base;
      if (b.breakpoints.size() < 2 || b.pieces.size() + 1 != b.breakpoints.size())
        throw ConfigError("base map needs pieces.size()+1 breakpoints");
      if (b.breakpoints.front() != 0.0)
        throw ConfigError("base map breakpoints must start at 0");
      for (size_t k = 0; k + 1 < b.breakpoints.size(); ++k) {
        double w = b.breakpoints[k + 1] - b.breakpoints[k];
        if (!(w > 0.0)) throw ConfigError("base map breakpoints must be increasing");
        double d0 = b.pieces[k].slope;
        double d1 = b.pieces[k].slope + 2.0 * b.pieces[k].quad * w;
        if (!(d0 > 0.0) || !(d1 > 0.0))
          throw NonMonotoneBranch("base map piece " + std::to_string(k) +
                                  " is not increasing");
        double top = b.pieces[k].slope * w + b.pieces[k].quad * w * w;
        if (top > 1.0 + 1e-9)
          throw ConfigError("base map piece " + std::to_string(k) +
                            " leaves [0,1]");
      }
      if (I.hi > b.breakpoints.back())
        throw ConfigError("parameter interval needs base-map pieces beyond those provided");
      break;
    }
    case FamilyKind::SkewTent: {
      // alpha, beta affine in a and 1/alpha + 1/beta convex, so the
      // endpoint checks cover the whole interval.
      for (double a : {I.lo, I.hi}) {
        double al = spec.alpha(a), be = spec.beta(a);
        if (!(al > 1.0) || !(be > 1.0))
          throw InvalidSlopes("skew tent slopes must exceed 1");
        if (1.0 / al + 1.0 / be < 1.0 - kParamTol)
          throw InvalidSlopes("skew tent needs 1/alpha + 1/beta >= 1");
      }
      break;
    }
    case FamilyKind::MarkovExample: {
      if (spec.g.kind == HomeoKind::Quadratic && !(spec.g.c > -0.5))
        throw NonMonotoneBranch("quadratic homeomorphism needs c > -1/2");
      if (!(I.lo > 0.0) || !(I.hi < 1.0))
        throw ConfigError("markov family needs parameter interval inside (0,1)");
      break;
    }
    case FamilyKind::PiecewiseAffine: {
      if (spec.breakpoints.size() < 2 ||
          spec.pieces.size() + 1 != spec.breakpoints.size())
        throw ConfigError("piecewise affine map needs pieces.size()+1 breakpoints");
      for (size_t k = 0; k + 1 < spec.breakpoints.size(); ++k) {
        if (!(spec.breakpoints[k + 1] > spec.breakpoints[k]))
          throw ConfigError("breakpoints must be increasing");
        if (std::abs(spec.pieces[k].slope) <= 1.0)
          throw InvalidSlopes("piecewise affine slopes must exceed 1 in magnitude");
      }
      break;
    }
  }
}

FamilyDescriptor descriptor_shell(const FamilySpec& spec) {
  FamilyDescriptor fam;
  fam.kind = spec.kind;
  fam.param_interval = spec.param_interval;
  fam.lip_const = spec.lip_const;
  fam.lambda_min = 1.0;  // provisional until sampled
  fam.lambda_max = 1.0;
  switch (spec.kind) {
    case FamilyKind::BetaLike:
      fam.data = BetaLikeData{spec.base};
      break;
    case FamilyKind::SkewTent:
      fam.data = SkewTentData{spec.alpha, spec.beta};
      break;
    case FamilyKind::MarkovExample:
      fam.data = MarkovData{spec.g};
      break;
    case FamilyKind::PiecewiseAffine:
      fam.data = PiecewiseAffineData{spec.breakpoints, spec.pieces};
      break;
  }
  return fam;
}

}  // namespace

FamilyDescriptor build_family(const FamilySpec& spec, int param_grid) {
  validate_request(spec);
  FamilyDescriptor fam = descriptor_shell(spec);

  // Sampling check for lambda/Lambda: dense in a; per branch the derivative
  // magnitude is monotone in x, so branch endpoints attain the extremes.
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  int n = std::max(param_grid, 2);
  for (int i = 0; i < n; ++i) {
    double a = fam.param_interval.lo +
               fam.param_interval.length() * double(i) / double(n - 1);
    MapSnapshot snap = snapshot(fam, a);
    for (int k = 1; k <= snap.branch_count(); ++k) {
      for (double x : {snap.breakpoints[k - 1], snap.breakpoints[k]}) {
        double d = std::abs(branch_derivative(snap, k, x));
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
    }
  }
  if (!(lo > 1.0))
    throw InvalidSlopes("expansion <= 1 somewhere on the parameter interval");
  fam.lambda_min = lo;
  fam.lambda_max = hi;

  // Lipschitz constant of the space derivative, exact per kind.
  double lip_needed = 0.0;
  if (spec.kind == FamilyKind::BetaLike) {
    for (const BasePiece& p : spec.base.pieces)
      lip_needed = std::max(lip_needed,
                            2.0 * std::abs(p.quad) * spec.param_interval.hi *
                                spec.param_interval.hi);
  } else if (spec.kind == FamilyKind::MarkovExample &&
             spec.g.kind == HomeoKind::Quadratic) {
    double denom = std::min(spec.param_interval.lo, 1.0 - spec.param_interval.hi);
    lip_needed = 2.0 * std::abs(spec.g.c) / ((1.0 + spec.g.c) * denom);
  }
  fam.lip_const = std::max(spec.lip_const, lip_needed);
  return fam;
}

// ---------------------------------------------------------------------------
// snapshot
// ---------------------------------------------------------------------------

MapSnapshot snapshot(const FamilyDescriptor& family, double a) {
  if (!family.param_interval.contains(a, kParamTol))
    throw ParamOutOfRange("parameter " + std::to_string(a) +
                          " outside the family interval");
  MapSnapshot snap;
  snap.family = family;
  snap.param = a;
  switch (family.kind) {
    case FamilyKind::BetaLike: {
      const BaseMapSpec& base = family.beta_data().base;
      snap.breakpoints.push_back(0.0);
      for (size_t k = 1; k < base.breakpoints.size(); ++k) {
        double t = base.breakpoints[k] / a;
        if (t < 1.0) snap.breakpoints.push_back(t);
      }
      snap.breakpoints.push_back(1.0);
      snap.domain = {0.0, 1.0};
      break;
    }
    case FamilyKind::SkewTent: {
      double be = family.tent_data().beta(a);
      snap.breakpoints = {1.0 - be, 0.0, 1.0};
      snap.domain = {1.0 - be, 1.0};
      break;
    }
    case FamilyKind::MarkovExample: {
      double cut = family.markov_data().g.inverse(a);
      snap.breakpoints = {0.0, cut, 1.0};
      snap.domain = {0.0, 1.0};
      break;
    }
    case FamilyKind::PiecewiseAffine: {
      snap.breakpoints = family.affine_data().breakpoints;
      snap.domain = {snap.breakpoints.front(), snap.breakpoints.back()};
      break;
    }
  }
  return snap;
}

// ---------------------------------------------------------------------------
// Branch-resolved access
// ---------------------------------------------------------------------------

int branch_index(const MapSnapshot& snap, double x) {
  if (!snap.domain.contains(x, kDomainTol))
    throw DomainViolation("point " + std::to_string(x) + " outside the domain");
  auto it = std::upper_bound(snap.breakpoints.begin(), snap.breakpoints.end(), x);
  int k = static_cast<int>(it - snap.breakpoints.begin());
  return std::clamp(k, 1, snap.branch_count());
}

bool is_interior_breakpoint(const MapSnapshot& snap, double x) {
  for (size_t i = 1; i + 1 < snap.breakpoints.size(); ++i)
    if (x == snap.breakpoints[i]) return true;
  return false;
}

namespace {
// Base-map piece backing a BetaLike snapshot branch.
int beta_piece_for_branch(const MapSnapshot& snap, int branch) {
  const BaseMapSpec& base = snap.family.beta_data().base;
  double mid = 0.5 * (snap.breakpoints[branch - 1] + snap.breakpoints[branch]);
  return base.piece_index(snap.param * mid);
}
}  // namespace

double branch_value(const MapSnapshot& snap, int branch, double x) {
  const FamilyDescriptor& fam = snap.family;
  double a = snap.param;
  switch (fam.kind) {
    case FamilyKind::BetaLike: {
      const BaseMapSpec& base = fam.beta_data().base;
      return base.piece_value(beta_piece_for_branch(snap, branch), a * x);
    }
    case FamilyKind::SkewTent: {
      const SkewTentData& d = fam.tent_data();
      return branch == 1 ? 1.0 + d.alpha(a) * x : 1.0 - d.beta(a) * x;
    }
    case FamilyKind::MarkovExample: {
      double gx = fam.markov_data().g.value(x);
      return branch == 1 ? gx / a : (gx - a) / (1.0 - a);
    }
    case FamilyKind::PiecewiseAffine: {
      const PiecewiseAffineData& d = fam.affine_data();
      const AffinePiece& p = d.pieces[branch - 1];
      return p.value_at_left + p.slope * (x - d.breakpoints[branch - 1]);
    }
  }
  return 0.0;
}

double branch_derivative(const MapSnapshot& snap, int branch, double x) {
  const FamilyDescriptor& fam = snap.family;
  double a = snap.param;
  switch (fam.kind) {
    case FamilyKind::BetaLike: {
      const BaseMapSpec& base = fam.beta_data().base;
      return a * base.piece_derivative(beta_piece_for_branch(snap, branch), a * x);
    }
    case FamilyKind::SkewTent: {
      const SkewTentData& d = fam.tent_data();
      return branch == 1 ? d.alpha(a) : -d.beta(a);
    }
    case FamilyKind::MarkovExample: {
      double gp = fam.markov_data().g.derivative(x);
      return branch == 1 ? gp / a : gp / (1.0 - a);
    }
    case FamilyKind::PiecewiseAffine:
      return fam.affine_data().pieces[branch - 1].slope;
  }
  return 0.0;
}

double branch_inverse(const MapSnapshot& snap, int branch, double y) {
  const FamilyDescriptor& fam = snap.family;
  double a = snap.param;
  switch (fam.kind) {
    case FamilyKind::BetaLike: {
      const BaseMapSpec& base = fam.beta_data().base;
      return base.piece_inverse(beta_piece_for_branch(snap, branch), y) / a;
    }
    case FamilyKind::SkewTent: {
      const SkewTentData& d = fam.tent_data();
      return branch == 1 ? (y - 1.0) / d.alpha(a) : (1.0 - y) / d.beta(a);
    }
    case FamilyKind::MarkovExample: {
      const HomeoSpec& g = fam.markov_data().g;
      return branch == 1 ? g.inverse(a * y) : g.inverse(a + (1.0 - a) * y);
    }
    case FamilyKind::PiecewiseAffine: {
      const PiecewiseAffineData& d = fam.affine_data();
      const AffinePiece& p = d.pieces[branch - 1];
      return d.breakpoints[branch - 1] + (y - p.value_at_left) / p.slope;
    }
  }
  return 0.0;
}

double branch_param_partial(const MapSnapshot& snap, int branch, double x) {
  const FamilyDescriptor& fam = snap.family;
  double a = snap.param;
  switch (fam.kind) {
    case FamilyKind::BetaLike: {
      const BaseMapSpec& base = fam.beta_data().base;
      return base.piece_derivative(beta_piece_for_branch(snap, branch), a * x) * x;
    }
    case FamilyKind::SkewTent: {
      const SkewTentData& d = fam.tent_data();
      return branch == 1 ? d.alpha.deriv() * x : -d.beta.deriv() * x;
    }
    case FamilyKind::MarkovExample: {
      double gx = fam.markov_data().g.value(x);
      if (branch == 1) return -gx / (a * a);
      return (gx - 1.0) / ((1.0 - a) * (1.0 - a));
    }
    case FamilyKind::PiecewiseAffine:
      return 0.0;
  }
  return 0.0;
}

bool branch_increasing(const MapSnapshot& snap, int branch) {
  double mid = 0.5 * (snap.breakpoints[branch - 1] + snap.breakpoints[branch]);
  return branch_derivative(snap, branch, mid) > 0.0;
}

// ---------------------------------------------------------------------------
// Point operations
// ---------------------------------------------------------------------------

double evaluate(const MapSnapshot& snap, double x) {
  return branch_value(snap, branch_index(snap, x), x);
}

double space_derivative(const MapSnapshot& snap, double x) {
  if (is_interior_breakpoint(snap, x))
    throw AtBreakpoint("space derivative queried at a breakpoint; nudge to one side");
  return branch_derivative(snap, branch_index(snap, x), x);
}

double param_partial(const FamilyDescriptor& family, double a, double x) {
  MapSnapshot snap = snapshot(family, a);
  if (is_interior_breakpoint(snap, x))
    throw AtBreakpoint("parameter partial queried at a breakpoint");
  return branch_param_partial(snap, branch_index(snap, x), x);
}

Interval invariant_interval(const MapSnapshot& snap) {
  switch (snap.family.kind) {
    case FamilyKind::SkewTent:
    case FamilyKind::MarkovExample:
    case FamilyKind::PiecewiseAffine:
      return snap.domain;
    case FamilyKind::BetaLike:
      break;
  }
  // Orbit closure of a small interval adjacent to 0.  Per-branch images are
  // intervals with sup at the right limit, so the hull of [0,h] maps to
  // [0, max over covered branches of the right-limit value].
  double h = 1e-4;
  int stable = 0;
  for (int iter = 0; iter < kHullDepth && stable < 2; ++iter) {
    double m = 0.0;
    for (int k = 1; k <= snap.branch_count(); ++k) {
      double blo = snap.breakpoints[k - 1];
      if (blo >= h) break;
      double bhi = std::min(snap.breakpoints[k], h);
      m = std::max(m, branch_value(snap, k, bhi));
    }
    double next = std::min(std::max(h, m), snap.domain.hi);
    stable = (next - h < kHullTol) ? stable + 1 : 0;
    h = next;
  }
  return {0.0, h};
}

}  // namespace expmap
