#pragma once

#include <variant>
#include <vector>

#include "expmap/errors.hpp"
#include "expmap/interval.hpp"

namespace expmap {

enum class FamilyKind { BetaLike, SkewTent, MarkovExample, PiecewiseAffine };

const char* family_kind_name(FamilyKind kind);

// ---------------------------------------------------------------------------
// Kind-specific branch data
// ---------------------------------------------------------------------------

/// One piece of the beta-like base map on [b_k, b_{k+1}):
/// T(x) = slope*u + quad*u^2 with u = x - b_k, so T(b_k) = 0.
struct BasePiece {
  double slope = 1.0;
  double quad = 0.0;
};

/// Base map T : [0, b_last] -> [0,1], right continuous, vanishing at each
/// breakpoint.  Only a finite prefix of pieces is stored; builds reject
/// parameter intervals that would need pieces beyond those provided.
struct BaseMapSpec {
  std::vector<double> breakpoints;  // 0 = b_0 < b_1 < ... < b_m
  std::vector<BasePiece> pieces;    // pieces[k] lives on [b_k, b_{k+1})

  int piece_index(double x) const;         // half-open convention
  double value(double x) const;            // T(x)
  double derivative(double x) const;       // T'(x), right-continuous choice
  double piece_value(int k, double x) const;
  double piece_derivative(int k, double x) const;
  double piece_inverse(int k, double y) const;  // solve T|piece = y
};

/// T(x) = x mod 1 truncated to the given number of integer breakpoints.
BaseMapSpec mod_one_base(int num_pieces);

/// Affine slope path c0 + c1*a used for skew tent families.
struct SlopePath {
  double c0 = 2.0;
  double c1 = 0.0;
  double operator()(double a) const { return c0 + c1 * a; }
  double deriv() const { return c1; }
};

enum class HomeoKind { Identity, Quadratic };

/// C^{1,1} homeomorphism of [0,1].  Quadratic: g(x) = (x + c x^2)/(1 + c)
/// with c > -1/2 so that g' > 0.
struct HomeoSpec {
  HomeoKind kind = HomeoKind::Identity;
  double c = 0.0;

  double value(double x) const;
  double derivative(double x) const;
  double inverse(double y) const;
};

/// One branch of a parameter-independent piecewise affine map.
struct AffinePiece {
  double value_at_left = 0.0;
  double slope = 2.0;
};

struct BetaLikeData {
  BaseMapSpec base;
};

struct SkewTentData {
  SlopePath alpha;
  SlopePath beta;
};

struct MarkovData {
  HomeoSpec g;
};

struct PiecewiseAffineData {
  std::vector<double> breakpoints;
  std::vector<AffinePiece> pieces;
};

// ---------------------------------------------------------------------------
// Descriptor and snapshot
// ---------------------------------------------------------------------------

struct FamilyDescriptor {
  FamilyKind kind = FamilyKind::BetaLike;
  Interval param_interval;
  double lambda_min = 0.0;  // lower bound for |d/dx T_a|, > 1
  double lambda_max = 0.0;  // upper bound for |d/dx T_a|
  double lip_const = 1.0;   // Lipschitz constant for the C^{1,1} data
  std::variant<BetaLikeData, SkewTentData, MarkovData, PiecewiseAffineData> data;

  const BetaLikeData& beta_data() const { return std::get<BetaLikeData>(data); }
  const SkewTentData& tent_data() const { return std::get<SkewTentData>(data); }
  const MarkovData& markov_data() const { return std::get<MarkovData>(data); }
  const PiecewiseAffineData& affine_data() const {
    return std::get<PiecewiseAffineData>(data);
  }
};

/// Construction request; exactly the fields for `kind` are read.
struct FamilySpec {
  FamilyKind kind = FamilyKind::BetaLike;
  Interval param_interval;
  double lip_const = 1.0;

  BaseMapSpec base;                    // BetaLike
  SlopePath alpha, beta;               // SkewTent
  HomeoSpec g;                         // MarkovExample
  std::vector<double> breakpoints;     // PiecewiseAffine
  std::vector<AffinePiece> pieces;     // PiecewiseAffine
};

/// The map frozen at one parameter.  Immutable; safe to share.
struct MapSnapshot {
  FamilyDescriptor family;
  double param = 0.0;
  std::vector<double> breakpoints;  // sorted, first/last are the domain ends
  Interval domain;

  int branch_count() const { return static_cast<int>(breakpoints.size()) - 1; }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Validates the request, computes/verifies lambda_min, lambda_max, lip_const
/// by sampling the parameter axis densely (branch derivative extremes are
/// taken at branch endpoints, where they are attained for all four kinds).
FamilyDescriptor build_family(const FamilySpec& spec, int param_grid = 10000);

MapSnapshot snapshot(const FamilyDescriptor& family, double a);

double evaluate(const MapSnapshot& snap, double x);
double space_derivative(const MapSnapshot& snap, double x);
double param_partial(const FamilyDescriptor& family, double a, double x);

/// SkewTent: [T_a(1), 1].  MarkovExample/PiecewiseAffine: the full domain.
/// BetaLike: numerical orbit closure of [0, 1e-4] (hull stable to 1e-9,
/// depth 60).
Interval invariant_interval(const MapSnapshot& snap);

// Branch-resolved access (1-based branch index; branch k covers
// [breakpoints[k-1], breakpoints[k]) and the last branch its closure).
int branch_index(const MapSnapshot& snap, double x);
bool is_interior_breakpoint(const MapSnapshot& snap, double x);
double branch_value(const MapSnapshot& snap, int branch, double x);
double branch_derivative(const MapSnapshot& snap, int branch, double x);
double branch_inverse(const MapSnapshot& snap, int branch, double y);
double branch_param_partial(const MapSnapshot& snap, int branch, double x);
bool branch_increasing(const MapSnapshot& snap, int branch);

}  // namespace expmap
