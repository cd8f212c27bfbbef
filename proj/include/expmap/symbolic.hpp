#pragma once

#include <map>
#include <string>
#include <vector>

#include "expmap/families.hpp"

namespace expmap {

/// Element of the depth-j monotonicity partition: the map iterated j times is
/// smooth and monotone on `domain`, with exact forward image `image`.
struct Cylinder {
  std::vector<int> word;  // branch symbols, 1-based
  Interval domain;
  Interval image;
  int depth = 0;
};

struct CylinderSet {
  std::vector<Cylinder> cylinders;
  double min_length = 0.0;  // delta(a)
  int depth = 0;
};

struct KneadingWord {
  std::string symbols;  // over {L, C, R}
  int truncated_at = 0;
};

enum class KneadingOrder { Less, EqualToDepth, Greater };

struct ConditionThreeReport {
  int depth = 0;
  int total_a1 = 0;
  int total_a2 = 0;
  int matched = 0;
  int max_match_multiplicity = 0;  // >1 would mean the word matching is not injective
  bool symbolic_ok = false;        // every cylinder of P_j(a1) found a same-word partner
  bool distance_ok = false;        // all image distances finite (0 when a1 == a2)
  bool size_ok = false;            // all partner images have positive length
  bool images_nested = false;      // T_a1^j(w) contained in T_a2^j(w') throughout
  double C2_distance = 0.0;        // max dist(images) / (a2 - a1)
  double C2_size = 0.0;            // max |image_1| / |image_2|
  double C2_estimate = 0.0;        // max of the two
};

/// Branch symbols of x, T_a(x), ..., T_a^{depth-1}(x).
/// Throws HitsBreakpoint(step) if the orbit lands exactly on an interior
/// breakpoint.
std::vector<int> itinerary(const MapSnapshot& snap, double x, int depth);

/// All maximal open monotonicity intervals of T_a^depth on the snapshot
/// domain, via exact pullback of breakpoints through branch inverses.
CylinderSet cylinders(const MapSnapshot& snap, int depth,
                      std::size_t max_cylinders = 1000000);

/// Itinerary of the critical value T_a(0) = 1 relative to the turning point:
/// L for x < 0, R for x > 0, C when |x| <= c_tol (stops the word).
KneadingWord kneading_sequence(const MapSnapshot& snap, int depth,
                               double c_tol = 1e-12);

/// Signed-lexicographic kneading order with L < C < R; the comparison at the
/// first differing index is flipped iff the common prefix has an odd number
/// of R's.
KneadingOrder compare_kneading(const KneadingWord& k1, const KneadingWord& k2);

ConditionThreeReport check_condition_three(const FamilyDescriptor& family,
                                           double a1, double a2, int depth);

}  // namespace expmap
