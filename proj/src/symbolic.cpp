#include "expmap/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace expmap {

std::vector<int> itinerary(const MapSnapshot& snap, double x, int depth) {
  if (depth < 1) throw ConfigError("itinerary depth must be >= 1");
  std::vector<int> word;
  word.reserve(depth);
  for (int i = 0; i < depth; ++i) {
    if (is_interior_breakpoint(snap, x)) throw HitsBreakpoint(i);
    int k = branch_index(snap, x);
    word.push_back(k);
    x = branch_value(snap, k, x);
  }
  return word;
}

namespace {

Interval oriented_image(const MapSnapshot& snap, int branch, double lo, double hi) {
  double y1 = branch_value(snap, branch, lo);
  double y2 = branch_value(snap, branch, hi);
  return {std::min(y1, y2), std::max(y1, y2)};
}

// x in the cylinder domain with T^depth(x) = y, by unwinding the word.
double pullback(const MapSnapshot& snap, const std::vector<int>& word, double y) {
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    y = branch_inverse(snap, *it, y);
  return y;
}

}  // namespace

CylinderSet cylinders(const MapSnapshot& snap, int depth, std::size_t max_cylinders) {
  if (depth < 1) throw ConfigError("cylinder depth must be >= 1");

  std::vector<Cylinder> current;
  for (int k = 1; k <= snap.branch_count(); ++k) {
    double lo = snap.breakpoints[k - 1];
    double hi = snap.breakpoints[k];
    if (!(hi > lo)) continue;
    current.push_back({{k}, {lo, hi}, oriented_image(snap, k, lo, hi), 1});
  }

  for (int j = 2; j <= depth; ++j) {
    std::vector<Cylinder> next;
    next.reserve(current.size() * 2);
    for (const Cylinder& cyl : current) {
      // Split the image at interior breakpoints and pull the cuts back.
      std::vector<double> cuts{cyl.image.lo};
      for (size_t i = 1; i + 1 < snap.breakpoints.size(); ++i) {
        double b = snap.breakpoints[i];
        if (b > cyl.image.lo && b < cyl.image.hi) cuts.push_back(b);
      }
      cuts.push_back(cyl.image.hi);

      for (size_t s = 0; s + 1 < cuts.size(); ++s) {
        double u = cuts[s], v = cuts[s + 1];
        // rounding slivers appear when an image endpoint lands on a breakpoint
        double sliver = 32.0 * std::numeric_limits<double>::epsilon() *
                        std::max({1.0, std::abs(u), std::abs(v)});
        if (!(v - u > sliver)) continue;
        int k = branch_index(snap, 0.5 * (u + v));
        double x1 = pullback(snap, cyl.word, u);
        double x2 = pullback(snap, cyl.word, v);
        Cylinder sub;
        sub.word = cyl.word;
        sub.word.push_back(k);
        sub.domain = {std::min(x1, x2), std::max(x1, x2)};
        sub.image = oriented_image(snap, k, u, v);
        sub.depth = j;
        next.push_back(std::move(sub));
      }
      if (next.size() > max_cylinders)
        throw DepthTooLarge("cylinder count exceeds cap at depth " +
                            std::to_string(j));
    }
    current = std::move(next);
  }

  CylinderSet out;
  out.depth = depth;
  out.min_length = std::numeric_limits<double>::infinity();
  for (const Cylinder& c : current)
    out.min_length = std::min(out.min_length, c.domain.length());
  out.cylinders = std::move(current);
  if (out.cylinders.empty()) out.min_length = 0.0;
  return out;
}

KneadingWord kneading_sequence(const MapSnapshot& snap, int depth, double c_tol) {
  if (snap.family.kind != FamilyKind::SkewTent)
    throw NotUnimodal("kneading sequences are defined for the skew tent kind");
  KneadingWord word;
  word.truncated_at = depth;
  double x = 1.0;  // critical value T_a(0)
  for (int i = 0; i < depth; ++i) {
    if (std::abs(x) <= c_tol) {
      word.symbols.push_back('C');
      break;
    }
    word.symbols.push_back(x < 0.0 ? 'L' : 'R');
    x = evaluate(snap, x);
  }
  return word;
}

KneadingOrder compare_kneading(const KneadingWord& k1, const KneadingWord& k2) {
  if (k1.symbols.empty() || k2.symbols.empty())
    throw ConfigError("cannot compare empty kneading words");
  auto rank = [](char s) { return s == 'L' ? 0 : (s == 'C' ? 1 : 2); };
  bool flip = false;
  size_t n = std::min(k1.symbols.size(), k2.symbols.size());
  for (size_t i = 0; i < n; ++i) {
    int d = rank(k1.symbols[i]) - rank(k2.symbols[i]);
    if (d != 0) {
      if (flip) d = -d;
      return d < 0 ? KneadingOrder::Less : KneadingOrder::Greater;
    }
    if (k1.symbols[i] == 'R') flip = !flip;
  }
  return KneadingOrder::EqualToDepth;
}

ConditionThreeReport check_condition_three(const FamilyDescriptor& family,
                                           double a1, double a2, int depth) {
  if (a1 > a2) throw ConfigError("check_condition_three needs a1 <= a2");
  MapSnapshot s1 = snapshot(family, a1);
  MapSnapshot s2 = snapshot(family, a2);
  CylinderSet p1 = cylinders(s1, depth);
  CylinderSet p2 = cylinders(s2, depth);

  std::map<std::vector<int>, int> by_word;
  for (size_t i = 0; i < p2.cylinders.size(); ++i)
    by_word.emplace(p2.cylinders[i].word, static_cast<int>(i));

  ConditionThreeReport rep;
  rep.depth = depth;
  rep.total_a1 = static_cast<int>(p1.cylinders.size());
  rep.total_a2 = static_cast<int>(p2.cylinders.size());
  rep.images_nested = true;

  double da = a2 - a1;
  std::map<int, int> hits;
  for (const Cylinder& c1 : p1.cylinders) {
    auto it = by_word.find(c1.word);
    if (it == by_word.end()) {
      rep.images_nested = false;
      continue;
    }
    const Cylinder& c2 = p2.cylinders[it->second];
    ++rep.matched;
    ++hits[it->second];

    double gap = dist(c1.image, c2.image);
    rep.C2_distance = std::max(rep.C2_distance, da > 0.0 ? gap / da : gap);
    double len2 = c2.image.length();
    rep.C2_size =
        std::max(rep.C2_size, len2 > 0.0 ? c1.image.length() / len2
                                         : std::numeric_limits<double>::infinity());
    if (!c2.image.contains(c1.image, 1e-12)) rep.images_nested = false;
  }
  for (auto& [idx, count] : hits)
    rep.max_match_multiplicity = std::max(rep.max_match_multiplicity, count);

  rep.symbolic_ok = rep.matched == rep.total_a1;
  rep.distance_ok = rep.symbolic_ok && std::isfinite(rep.C2_distance);
  rep.size_ok = rep.symbolic_ok && std::isfinite(rep.C2_size);
  rep.C2_estimate = std::max(rep.C2_distance, rep.C2_size);
  return rep;
}

}  // namespace expmap
