#include "expmap/io.hpp"

#include <cstdio>
#include <fstream>

namespace expmap {

using nlohmann::json;

std::string format_sig(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok)
      throw ConfigError(std::string("unknown key \"") + it.key() + "\" in " +
                        where);
  }
}

Interval interval_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2)
    throw ConfigError(std::string(where) + " must be a [lo, hi] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json family_spec_to_json(const FamilySpec& spec) {
  json j;
  j["param_interval"] = {spec.param_interval.lo, spec.param_interval.hi};
  j["lip_const"] = spec.lip_const;
  switch (spec.kind) {
    case FamilyKind::BetaLike: {
      j["kind"] = "beta_like";
      json base;
      base["breakpoints"] = spec.base.breakpoints;
      json pieces = json::array();
      for (const BasePiece& p : spec.base.pieces)
        pieces.push_back({{"slope", p.slope}, {"quad", p.quad}});
      base["pieces"] = std::move(pieces);
      j["base"] = std::move(base);
      break;
    }
    case FamilyKind::SkewTent:
      j["kind"] = "skew_tent";
      j["alpha"] = {spec.alpha.c0, spec.alpha.c1};
      j["beta"] = {spec.beta.c0, spec.beta.c1};
      break;
    case FamilyKind::MarkovExample:
      j["kind"] = "markov";
      j["g"] = {{"kind", spec.g.kind == HomeoKind::Identity ? "identity"
                                                            : "quadratic"},
                {"c", spec.g.c}};
      break;
    case FamilyKind::PiecewiseAffine: {
      j["kind"] = "piecewise_affine";
      j["breakpoints"] = spec.breakpoints;
      json pieces = json::array();
      for (const AffinePiece& p : spec.pieces)
        pieces.push_back({{"value_at_left", p.value_at_left}, {"slope", p.slope}});
      j["pieces"] = std::move(pieces);
      break;
    }
  }
  return j;
}

FamilySpec family_spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("family spec must be a JSON object");
  if (!j.contains("kind")) throw ConfigError("family spec needs a \"kind\" tag");
  std::string kind = j.at("kind").get<std::string>();

  FamilySpec spec;
  if (j.contains("param_interval"))
    spec.param_interval = interval_from_json(j["param_interval"], "param_interval");
  if (j.contains("lip_const")) spec.lip_const = j["lip_const"].get<double>();

  if (kind == "beta_like") {
    spec.kind = FamilyKind::BetaLike;
    reject_unknown(j, {"kind", "param_interval", "lip_const", "base"},
                   "beta_like spec");
    if (!j.contains("base")) throw ConfigError("beta_like spec needs \"base\"");
    const json& base = j["base"];
    reject_unknown(base, {"breakpoints", "pieces"}, "base map");
    spec.base.breakpoints = base.at("breakpoints").get<std::vector<double>>();
    for (const json& p : base.at("pieces")) {
      reject_unknown(p, {"slope", "quad"}, "base piece");
      spec.base.pieces.push_back(
          {p.at("slope").get<double>(), p.value("quad", 0.0)});
    }
  } else if (kind == "skew_tent") {
    spec.kind = FamilyKind::SkewTent;
    reject_unknown(j, {"kind", "param_interval", "lip_const", "alpha", "beta"},
                   "skew_tent spec");
    Interval a = interval_from_json(j.at("alpha"), "alpha");
    Interval b = interval_from_json(j.at("beta"), "beta");
    spec.alpha = {a.lo, a.hi};
    spec.beta = {b.lo, b.hi};
  } else if (kind == "markov") {
    spec.kind = FamilyKind::MarkovExample;
    reject_unknown(j, {"kind", "param_interval", "lip_const", "g"},
                   "markov spec");
    if (j.contains("g")) {
      const json& g = j["g"];
      reject_unknown(g, {"kind", "c"}, "homeomorphism");
      std::string gk = g.value("kind", "identity");
      if (gk == "identity")
        spec.g.kind = HomeoKind::Identity;
      else if (gk == "quadratic")
        spec.g.kind = HomeoKind::Quadratic;
      else
        throw ConfigError("unknown homeomorphism kind \"" + gk + "\"");
      spec.g.c = g.value("c", 0.0);
    }
  } else if (kind == "piecewise_affine") {
    spec.kind = FamilyKind::PiecewiseAffine;
    reject_unknown(j, {"kind", "param_interval", "lip_const", "breakpoints",
                       "pieces"},
                   "piecewise_affine spec");
    spec.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    for (const json& p : j.at("pieces")) {
      reject_unknown(p, {"value_at_left", "slope"}, "affine piece");
      spec.pieces.push_back(
          {p.value("value_at_left", 0.0), p.at("slope").get<double>()});
    }
  } else {
    throw ConfigError("unknown family kind \"" + kind + "\"");
  }
  return spec;
}

FamilySpec load_family_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open family spec file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return family_spec_from_json(j);
}

json report_header(const json& config, std::uint64_t seed) {
  json h;
  h["version"] = kToolVersion;
  h["seed"] = seed;
  h["config"] = config;
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(config.dump())));
  h["config_hash"] = buf;
  return h;
}

void write_csv(std::ostream& os, const json& header,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  os << "# version=" << header.value("version", kToolVersion) << "\n";
  os << "# config_hash=" << header.value("config_hash", "") << "\n";
  os << "# seed=" << header.value("seed", 0) << "\n";
  for (size_t i = 0; i < columns.size(); ++i)
    os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const std::vector<double>& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << format_sig(row[i]);
    os << "\n";
  }
}

json to_json(const Interval& v) { return {v.lo, v.hi}; }

json to_json(const OrbitRecord& v) {
  return {{"param", v.param},
          {"points", v.points},
          {"param_derivs", v.param_derivs},
          {"space_derivs", v.space_derivs},
          {"breakpoint_hits", v.breakpoint_hits}};
}

json to_json(const ConditionOneReport& v) {
  return {{"j0", v.j0},
          {"threshold", v.threshold},
          {"min_abs_deriv", v.min_abs_deriv},
          {"C0_estimate", v.C0_estimate},
          {"pass", v.pass}};
}

json to_json(const TransversalityReport& v) {
  json j = {{"Lambda0", v.Lambda0},
            {"deriv_at_j0", v.deriv_at_j0},
            {"nondegeneracy_sum", v.nondegeneracy_sum},
            {"tail_bound", v.tail_bound},
            {"good_map", v.good_map}};
  j["j0"] = v.j0_found ? json(*v.j0_found) : json();
  j["turning_periodic"] =
      v.turning_periodic ? json(*v.turning_periodic) : json();
  return j;
}

json to_json(const ConditionThreeReport& v) {
  return {{"depth", v.depth},
          {"total_a1", v.total_a1},
          {"total_a2", v.total_a2},
          {"matched", v.matched},
          {"max_match_multiplicity", v.max_match_multiplicity},
          {"symbolic_ok", v.symbolic_ok},
          {"distance_ok", v.distance_ok},
          {"size_ok", v.size_ok},
          {"images_nested", v.images_nested},
          {"C2_distance", v.C2_distance},
          {"C2_size", v.C2_size},
          {"C2_estimate", v.C2_estimate}};
}

json to_json(const VariationReport& v) {
  return {{"tau", v.tau},
          {"delta", v.delta},
          {"Cv", v.Cv},
          {"empirical_variation", v.empirical_variation},
          {"lower_interval", to_json(v.lower_interval)},
          {"window_min", v.window_min},
          {"lower_bound_ok", v.lower_bound_ok},
          {"inf_support", v.inf_support},
          {"sup_density", v.sup_density},
          {"C1_estimate", v.C1_estimate}};
}

json to_json(const SweepRow& v) {
  return {{"param", v.param},       {"x0", v.x0},
          {"ks", v.ks},             {"pass", v.pass},
          {"error", v.error},       {"interval_freqs", v.interval_freqs}};
}

json to_json(const SweepResult& v) {
  json rows = json::array();
  for (const SweepRow& r : v.rows) rows.push_back(to_json(r));
  return {{"rows", std::move(rows)},
          {"pass_count", v.pass_count},
          {"fail_count", v.fail_count},
          {"error_count", v.error_count}};
}

}  // namespace expmap
