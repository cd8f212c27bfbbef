#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "expmap/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace expmap;

namespace {

struct Options {
  std::string family = "beta";
  std::string config;
  std::string out;
  std::string path = "default";
  std::string xmap = "affine";
  double xc0 = 0.5, xc1 = 0.0;
  double a = std::numeric_limits<double>::quiet_NaN();
  double a0 = 0.0, a1 = 2.2, a2 = 2.4;
  double x0 = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;
  int n = 1000000;
  int bins = 4096;
  int depth = 10;
  int jmax = 40;
  int grid = 100;
  int burn_in = 1000;
  int threads = 0;
  double threshold = 0.01;
  bool serial = false;
  bool dither = false;
};

FamilySpec builtin_family(const Options& opt) {
  FamilySpec spec;
  if (opt.family == "beta") {
    spec.kind = FamilyKind::BetaLike;
    spec.param_interval = {1.1, 2.9};
    spec.base = mod_one_base(4);
  } else if (opt.family == "skewtent") {
    spec.kind = FamilyKind::SkewTent;
    if (opt.path == "symmetric") {
      // valid side of 1/alpha + 1/beta >= 1; a0 = 0 is the right endpoint
      spec.param_interval = {-0.9, 0.0};
      spec.alpha = {2.0, 1.0};
      spec.beta = {2.0, 1.0};
    } else if (opt.path == "default") {
      spec.param_interval = {0.0, 1.0};
      spec.alpha = {1.3, 0.7};
      spec.beta = {1.5, 0.5};
    } else {
      throw ConfigError("unknown slope path \"" + opt.path + "\"");
    }
  } else if (opt.family == "markov") {
    spec.kind = FamilyKind::MarkovExample;
    spec.param_interval = {0.1, 0.9};
  } else if (opt.family == "doubling") {
    spec.kind = FamilyKind::PiecewiseAffine;
    spec.param_interval = {0.0, 1.0};
    spec.breakpoints = {0.0, 0.5, 1.0};
    spec.pieces = {{0.0, 2.0}, {0.0, 2.0}};
  } else {
    return load_family_spec(opt.family);
  }
  return spec;
}

FamilyDescriptor resolve_family(const Options& opt) {
  if (!opt.config.empty()) {
    std::ifstream in(opt.config);
    if (!in) throw ConfigError("cannot open config file " + opt.config);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError(std::string("invalid JSON config: ") + e.what());
    }
    if (j.contains("family")) return build_family(family_spec_from_json(j["family"]));
  }
  return build_family(builtin_family(opt));
}

XMapSpec resolve_xmap(const Options& opt) {
  XMapSpec x;
  x.c0 = opt.xc0;
  x.c1 = opt.xc1;
  if (opt.xmap == "affine")
    x.type = XMapSpec::Type::Affine;
  else if (opt.xmap == "reciprocal")
    x.type = XMapSpec::Type::Reciprocal;
  else if (opt.xmap == "markov-period2")
    x.type = XMapSpec::Type::MarkovPeriod2;
  else
    throw ConfigError("unknown x map \"" + opt.xmap + "\"");
  return x;
}

json echo_config(const Options& opt, const char* subcommand) {
  json c;
  c["subcommand"] = subcommand;
  c["family"] = opt.family;
  c["path"] = opt.path;
  c["xmap"] = opt.xmap;
  c["xc0"] = opt.xc0;
  c["xc1"] = opt.xc1;
  c["n"] = opt.n;
  c["bins"] = opt.bins;
  c["depth"] = opt.depth;
  c["jmax"] = opt.jmax;
  c["grid"] = opt.grid;
  c["burn_in"] = opt.burn_in;
  c["threshold"] = opt.threshold;
  c["seed"] = opt.seed;
  c["serial"] = opt.serial;
  c["dither"] = opt.dither;
  return c;
}

std::ofstream open_out(const Options& opt, const std::string& name) {
  fs::create_directories(opt.out);
  fs::path p = fs::path(opt.out) / name;
  std::ofstream out(p);
  if (!out) throw ConfigError("cannot write " + p.string());
  return out;
}

void emit_json(const Options& opt, const std::string& name, const json& doc) {
  if (opt.out.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    open_out(opt, name) << doc.dump(2) << "\n";
  }
}

void emit_csv(const Options& opt, const std::string& name, const json& header,
              const std::vector<std::string>& columns,
              const std::vector<std::vector<double>>& rows) {
  if (opt.out.empty()) {
    write_csv(std::cout, header, columns, rows);
  } else {
    auto out = open_out(opt, name);
    write_csv(out, header, columns, rows);
  }
}

double default_param(const FamilyDescriptor& fam, double a) {
  if (std::isnan(a)) return fam.param_interval.mid();
  if (!fam.param_interval.contains(a))
    throw ParamOutOfRange("parameter outside the family interval");
  return a;
}

int run_sweep(const Options& opt) {
  FamilyDescriptor fam = resolve_family(opt);
  SampledMap X = sample_map(resolve_xmap(opt), uniform_param_grid(fam, opt.grid));
  SweepConfig cfg;
  cfg.n = opt.n;
  cfg.bins = opt.bins;
  cfg.burn_in = opt.burn_in;
  cfg.threshold = opt.threshold;
  cfg.seed = opt.seed;
  cfg.dither = opt.dither;
  cfg.threads = opt.serial ? 1 : opt.threads;
  SweepResult result = parameter_sweep(fam, X, cfg);

  json header = report_header(echo_config(opt, "sweep"), opt.seed);
  std::vector<std::vector<double>> rows;
  for (const SweepRow& r : result.rows)
    rows.push_back({r.param, r.x0, r.ks, r.pass ? 1.0 : 0.0,
                    r.error.empty() ? 0.0 : 1.0});
  emit_csv(opt, "sweep.csv", header, {"param", "x0", "ks", "pass", "error"},
           rows);
  json summary = to_json(result);
  summary["header"] = header;
  emit_json(opt, "sweep.json", summary);
  return 0;
}

int run_density(const Options& opt) {
  FamilyDescriptor fam = resolve_family(opt);
  double a = default_param(fam, opt.a);
  MapSnapshot snap = snapshot(fam, a);
  DensityEstimate d = invariant_density(snap, opt.bins);
  json header = report_header(echo_config(opt, "density"), opt.seed);
  std::vector<std::vector<double>> rows;
  double w = d.bin_width();
  for (int i = 0; i < d.bins; ++i)
    rows.push_back({d.domain.lo + i * w, d.domain.lo + (i + 1) * w, d.values[i]});
  emit_csv(opt, "density.csv", header, {"bin_left", "bin_right", "value"}, rows);
  return 0;
}

int run_orbit(const Options& opt) {
  FamilyDescriptor fam = resolve_family(opt);
  double a = default_param(fam, opt.a);
  XMapSpec x = resolve_xmap(opt);
  double x0 = std::isnan(opt.x0) ? x_value(x, a) : opt.x0;
  double xd = std::isnan(opt.x0) ? x_deriv(x, a) : 0.0;
  OrbitRecord rec = orbit_with_derivative(fam, a, x0, xd, opt.n);
  json header = report_header(echo_config(opt, "orbit"), opt.seed);
  std::vector<std::vector<double>> rows;
  for (int j = 0; j <= rec.steps(); ++j)
    rows.push_back({double(j), rec.points[j], rec.param_derivs[j],
                    rec.space_derivs[j]});
  emit_csv(opt, "orbit.csv", header,
           {"step", "x", "param_deriv", "space_deriv"}, rows);
  return 0;
}

int run_kneading(const Options& opt) {
  FamilyDescriptor fam = resolve_family(opt);
  json header = report_header(echo_config(opt, "kneading"), opt.seed);
  std::ostringstream body;
  body << "# version=" << kToolVersion << "\n";
  body << "# config_hash=" << header["config_hash"].get<std::string>() << "\n";
  body << "# seed=" << opt.seed << "\n";
  body << "param,word\n";
  bool monotone = true;
  KneadingWord prev;
  for (double a : uniform_param_grid(fam, opt.grid)) {
    KneadingWord w = kneading_sequence(snapshot(fam, a), opt.depth);
    if (!prev.symbols.empty() &&
        compare_kneading(prev, w) == KneadingOrder::Greater)
      monotone = false;
    body << format_sig(a) << ",";
    for (size_t i = 0; i < w.symbols.size(); ++i)
      body << (i ? "-" : "") << w.symbols[i];
    body << "\n";
    prev = std::move(w);
  }
  if (opt.out.empty()) {
    std::cout << body.str();
  } else {
    open_out(opt, "kneading.csv") << body.str();
  }
  if (!monotone) {
    std::cerr << "kneading order decreased along the path\n";
    return 2;
  }
  return 0;
}

int run_check_i(const Options& opt) {
  FamilyDescriptor fam = resolve_family(opt);
  SampledMap X = sample_map(resolve_xmap(opt), uniform_param_grid(fam, opt.grid));
  ConditionOneReport rep = check_condition_one(fam, X, opt.jmax);
  json doc = to_json(rep);
  doc["header"] = report_header(echo_config(opt, "check-i"), opt.seed);
  emit_json(opt, "check_i.json", doc);
  return rep.pass ? 0 : 2;
}

int run_check_iii(const Options& opt) {
  FamilyDescriptor fam = resolve_family(opt);
  ConditionThreeReport rep = check_condition_three(fam, opt.a1, opt.a2, opt.depth);
  json doc = to_json(rep);
  doc["header"] = report_header(echo_config(opt, "check-iii"), opt.seed);
  emit_json(opt, "check_iii.json", doc);
  return rep.symbolic_ok && rep.distance_ok && rep.size_ok ? 0 : 2;
}

int run_transversality(const Options& opt) {
  FamilyDescriptor fam = resolve_family(opt);
  TransversalityReport rep = transversality_report(fam, opt.a0, opt.jmax);
  json doc = to_json(rep);
  doc["header"] = report_header(echo_config(opt, "transversality"), opt.seed);
  emit_json(opt, "transversality.json", doc);
  return rep.j0_found ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for one-parameter families of piecewise "
               "expanding interval maps"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--family", opt.family,
                    "builtin family (beta, skewtent, markov, doubling) or a "
                    "JSON spec file")
        ->envname("EXPMAP_FAMILY");
    sub->add_option("--config", opt.config, "JSON config file")
        ->envname("EXPMAP_CONFIG");
    sub->add_option("--out", opt.out, "output directory (default: stdout)")
        ->envname("EXPMAP_OUT");
    sub->add_option("--seed", opt.seed, "RNG seed")->envname("EXPMAP_SEED");
    sub->add_option("--n", opt.n, "orbit length")->envname("EXPMAP_N");
    sub->add_option("--bins", opt.bins, "density bins")->envname("EXPMAP_BINS");
    sub->add_option("--depth", opt.depth, "symbolic depth")
        ->envname("EXPMAP_DEPTH");
    sub->add_option("--jmax", opt.jmax, "max derivative step")
        ->envname("EXPMAP_JMAX");
    sub->add_option("--threads", opt.threads, "worker threads (0 = all cores)")
        ->envname("EXPMAP_THREADS");
    sub->add_flag("--serial", opt.serial, "force single-threaded execution")
        ->envname("EXPMAP_SERIAL");
    sub->add_option("--grid", opt.grid, "parameter grid size")
        ->envname("EXPMAP_GRID");
    sub->add_option("--path", opt.path, "skew tent slope path (default, symmetric)");
    sub->add_option("--xmap", opt.xmap,
                    "orbit seed curve (affine, reciprocal, markov-period2)");
    sub->add_option("--xc0", opt.xc0, "seed curve constant term");
    sub->add_option("--xc1", opt.xc1, "seed curve linear term");
    sub->add_option("--a", opt.a, "parameter value");
    sub->add_option("--x0", opt.x0, "orbit start point");
  };

  CLI::App* sweep = app.add_subcommand("sweep", "typicality parameter sweep");
  add_common(sweep);
  sweep->add_option("--burn-in", opt.burn_in, "discarded orbit prefix");
  sweep->add_option("--threshold", opt.threshold, "Kolmogorov distance bound");
  sweep->add_flag("--dither", opt.dither, "perturb orbits at machine scale");

  CLI::App* density = app.add_subcommand("density", "stationary density CSV");
  add_common(density);

  CLI::App* orbit = app.add_subcommand("orbit", "orbit with derivative CSV");
  add_common(orbit);

  CLI::App* kneading =
      app.add_subcommand("kneading", "kneading words along a slope path");
  add_common(kneading);

  CLI::App* check_i = app.add_subcommand("check-i", "parameter derivative growth");
  add_common(check_i);

  CLI::App* check_iii =
      app.add_subcommand("check-iii", "cylinder comparability across parameters");
  add_common(check_iii);
  check_iii->add_option("--a1", opt.a1, "left parameter");
  check_iii->add_option("--a2", opt.a2, "right parameter");

  CLI::App* transversality =
      app.add_subcommand("transversality", "turning point transversality report");
  add_common(transversality);
  transversality->add_option("--a0", opt.a0, "expansion point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sweep->parsed()) return run_sweep(opt);
    if (density->parsed()) return run_density(opt);
    if (orbit->parsed()) return run_orbit(opt);
    if (kneading->parsed()) return run_kneading(opt);
    if (check_i->parsed()) return run_check_i(opt);
    if (check_iii->parsed()) return run_check_iii(opt);
    if (transversality->parsed()) return run_transversality(opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "analysis failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
