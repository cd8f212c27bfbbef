#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "expmap/io.hpp"
#include "helpers.hpp"

using namespace expmap;
using nlohmann::json;

TEST_CASE("lossless decimal formatting") {
  for (double x : {0.1, 1.0 / 3.0, 2.2250738585072014e-308, 12345.6789,
                   -0.4999999999999999}) {
    CHECK(std::stod(format_sig(x)) == x);
  }
}

TEST_CASE("family specs round trip through json") {
  FamilySpec tent;
  tent.kind = FamilyKind::SkewTent;
  tent.param_interval = {0.0, 1.0};
  tent.alpha = {1.3, 0.7};
  tent.beta = {1.5, 0.5};

  FamilySpec beta = testutil::beta_spec(1.5, 2.5, 3);
  beta.base.pieces[1].quad = 0.0;

  FamilySpec markov;
  markov.kind = FamilyKind::MarkovExample;
  markov.param_interval = {0.1, 0.9};
  markov.g = {HomeoKind::Quadratic, 0.25};

  FamilySpec affine;
  affine.kind = FamilyKind::PiecewiseAffine;
  affine.param_interval = {0.0, 1.0};
  affine.breakpoints = {0.0, 0.5, 1.0};
  affine.pieces = {{0.0, 2.0}, {0.0, 2.0}};

  for (const FamilySpec& spec : {tent, beta, markov, affine}) {
    json j = family_spec_to_json(spec);
    FamilySpec back = family_spec_from_json(j);
    CHECK(family_spec_to_json(back) == j);
    CHECK(back.kind == spec.kind);
  }
}

TEST_CASE("unknown keys are rejected") {
  json j = family_spec_to_json(testutil::beta_spec());
  j["extra"] = 1;
  CHECK_THROWS_AS(family_spec_from_json(j), ConfigError);

  json missing = {{"kind", "nonsense"}};
  CHECK_THROWS_AS(family_spec_from_json(missing), ConfigError);
}

TEST_CASE("report header embeds version, seed and config hash") {
  json config = {{"n", 1000}, {"bins", 64}};
  json h = report_header(config, 77);
  CHECK(h["version"] == kToolVersion);
  CHECK(h["seed"] == 77);
  CHECK(h["config"] == config);
  CHECK(h["config_hash"].get<std::string>().size() == 16);

  // same config, same hash; different config, different hash
  CHECK(report_header(config, 0)["config_hash"] == h["config_hash"]);
  json other = config;
  other["n"] = 1001;
  CHECK(report_header(other, 77)["config_hash"] != h["config_hash"]);
}

TEST_CASE("csv output is stable") {
  json h = report_header({{"k", 1}}, 5);
  std::ostringstream a, b;
  std::vector<std::string> cols{"x", "y"};
  std::vector<std::vector<double>> rows{{0.1, 0.2}, {1.0 / 3.0, 2.0 / 3.0}};
  write_csv(a, h, cols, rows);
  write_csv(b, h, cols, rows);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("# version=") == 0);
  CHECK(a.str().find("x,y\n") != std::string::npos);
  CHECK(a.str().find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("report serializers emit the documented fields") {
  ConditionOneReport c1;
  c1.j0 = 3;
  c1.pass = true;
  json j1 = to_json(c1);
  CHECK(j1["j0"] == 3);
  CHECK(j1["pass"] == true);

  TransversalityReport tr;
  tr.Lambda0 = 1.0;
  json j2 = to_json(tr);
  CHECK(j2["j0"].is_null());
  tr.j0_found = 3;
  CHECK(to_json(tr)["j0"] == 3);

  SweepResult res;
  res.rows.push_back({2.0, 0.5, 0.003, true, "", {}});
  res.pass_count = 1;
  json j3 = to_json(res);
  CHECK(j3["rows"].size() == 1);
  CHECK(j3["rows"][0]["pass"] == true);
}
