#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "expmap/density.hpp"
#include "helpers.hpp"

using namespace expmap;
using namespace testutil;

TEST_CASE("ulam matrix is row stochastic") {
  MapSnapshot snap = snapshot(beta_family(), 2.0);
  Eigen::SparseMatrix<double> M = ulam_matrix(snap, 2);
  CHECK(M.coeff(0, 0) == doctest::Approx(0.5));
  CHECK(M.coeff(0, 1) == doctest::Approx(0.5));
  CHECK(M.coeff(1, 0) == doctest::Approx(0.5));
  CHECK(M.coeff(1, 1) == doctest::Approx(0.5));

  CHECK_THROWS_AS(ulam_matrix(snap, 1), BinsTooSmall);

  MapSnapshot markov = snapshot(markov_family(), 0.5);
  Eigen::SparseMatrix<double> P = ulam_matrix(markov, 4);
  CHECK(P.coeff(0, 0) == doctest::Approx(0.5));
  CHECK(P.coeff(0, 1) == doctest::Approx(0.5));
  CHECK(P.coeff(0, 2) == doctest::Approx(0.0));

  for (const FamilyDescriptor& fam :
       {beta_family(), curved_beta_family(), markov_family(),
        fixed_tent(2.0, 1.5)}) {
    MapSnapshot s = snapshot(fam, fam.param_interval.mid());
    Eigen::SparseMatrix<double> U = ulam_matrix(s, 64);
    Eigen::VectorXd sums = U * Eigen::VectorXd::Ones(64);
    for (int i = 0; i < 64; ++i) CHECK(sums[i] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("invariant density of known maps") {
  DensityEstimate d = invariant_density(snapshot(beta_family(), 2.0), 256);
  for (double v : d.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(d.normalization_residual <= 1e-10);

  for (double a : {0.3, 0.5, 0.7}) {
    DensityEstimate m = invariant_density(snapshot(markov_family(), a), 256);
    for (double v : m.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("parry density closed forms") {
  DensityEstimate flat = parry_density(2.0, 64);
  for (double v : flat.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  double phi = 0.5 * (1.0 + std::sqrt(5.0));
  DensityEstimate golden = parry_density(phi, 1024);
  double c = 1.0 / (1.0 + 1.0 / (phi * phi));
  double lo_level = c * (1.0 + 1.0 / phi);
  CHECK(golden.values[0] == doctest::Approx(lo_level).epsilon(1e-6));
  CHECK(golden.values[1023] == doctest::Approx(c).epsilon(1e-6));

  for (double beta : {1.3, 1.8, 2.6}) {
    DensityEstimate d = parry_density(beta, 512);
    double total = 0.0;
    for (double v : d.values) total += v * d.bin_width();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("ulam agrees with the parry oracle") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ub(1.15, 2.85);
  FamilyDescriptor fam = beta_family(1.1, 2.9);
  for (int trial = 0; trial < 10; ++trial) {
    double beta = ub(rng);
    DensityEstimate u = invariant_density(snapshot(fam, beta), 4096);
    DensityEstimate p = parry_density(beta, 4096);
    CHECK(l1_distance(u, p) <= 0.01);
  }
}

TEST_CASE("stationarity residual after convergence") {
  MapSnapshot snap = snapshot(beta_family(), 2.6);
  DensityEstimate d = invariant_density(snap, 512, 1e-12);
  CHECK(d.stationarity_residual <= 10.0 * 1e-12);
}

TEST_CASE("density bounds at sampled parameters") {
  std::mt19937_64 rng(29);
  for (const FamilyDescriptor& fam :
       {beta_family(1.2, 2.8), markov_family(), fixed_tent(1.6, 2.1),
        doubling_family()}) {
    std::uniform_real_distribution<double> pa(fam.param_interval.lo,
                                              fam.param_interval.hi);
    for (int trial = 0; trial < 20; ++trial) {
      MapSnapshot snap = snapshot(fam, pa(rng));
      DensityEstimate d = invariant_density(snap, 512);
      VariationReport rep = variation_report(fam, snap.param, d);
      CHECK(rep.inf_support > 0.0);
      CHECK(std::isfinite(rep.C1_estimate));
    }
  }
}

TEST_CASE("variation bound formula") {
  FamilyDescriptor fam = doubling_family();
  DensityEstimate d = invariant_density(snapshot(fam, 0.5), 256);
  VariationReport rep = variation_report(fam, 0.5, d);
  CHECK(rep.tau == 2);
  CHECK(rep.delta == doctest::Approx(0.25));
  CHECK(rep.Cv == doctest::Approx(12.0));
  CHECK(rep.empirical_variation <= rep.Cv);
  CHECK(rep.lower_bound_ok);
  CHECK(rep.lower_interval.length() ==
        doctest::Approx(1.0 / (2.0 * rep.Cv)).epsilon(0.1));
}

TEST_CASE("lower bound window exists whenever variation is controlled") {
  FamilyDescriptor fam = beta_family(1.3, 2.8);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> pa(1.35, 2.75);
  for (int trial = 0; trial < 5; ++trial) {
    double a = pa(rng);
    DensityEstimate d = invariant_density(snapshot(fam, a), 1024);
    VariationReport rep = variation_report(fam, a, d);
    if (rep.empirical_variation <= rep.Cv) CHECK(rep.lower_bound_ok);
  }
}

TEST_CASE("support estimate cross check") {
  MapSnapshot snap = snapshot(beta_family(), 2.5);
  DensityEstimate d = invariant_density(snap, 512);
  Interval s = support_estimate(snap, d);
  CHECK(s.lo == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(s.hi == doctest::Approx(1.0).epsilon(1e-9));

  MapSnapshot tent = snapshot(fixed_tent(2.0, 2.0), 0.5);
  DensityEstimate dt = invariant_density(tent, 512);
  Interval st = support_estimate(tent, dt);
  CHECK(st.lo == doctest::Approx(-1.0).epsilon(1e-2));
  CHECK(st.hi == doctest::Approx(1.0).epsilon(1e-2));
}
