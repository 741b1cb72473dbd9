#include "ietlab/cohom.hpp"
#include "ietlab/essval.hpp"
#include "support.hpp"

using namespace ietlab;
using namespace ietlab::testing;

namespace {
ContinuedFraction flagship(long a6) { return cf_realize({1, 1, 1, 1, 1, a6}, TailPolicy::golden(), 256); }
Scalar delta() { return sqrt(R("0.5")); }

// beta sits at delta b on the base of the large tower at scale k
XiSets xi_at(const ContinuedFraction& cf, int k, long m = 0) {
  return build_xi_sets(cf, k, construct_balanced_beta(cf, delta(), k, m));
}
}  // namespace

TEST_SUITE("essval") {

TEST_CASE("xi sets at k = 4: recovered m, fiber ratio and total measure") {
  ContinuedFraction cf = flagship(1000);
  XiSets xi = xi_at(cf, 4);
  CHECK(xi.q == 8);
  CHECK(xi.m == 0);
  CHECK(near(xi.u, delta() * xi.b, R("1e-60")));
  // |J^2| / |J^1| -> (1 - delta) / delta = sqrt 2 - 1 as w / b -> 0
  CHECK(near(xi.width2 / xi.width1, sqrt(Scalar::from_int(2)) - 1, R("2e-3")));
  CHECK(near(xi.measure1() + xi.measure2(), xi.l * xi.q, R("1e-60")));

  for (long m : {1L, 3L, 6L}) {
    XiSets s = xi_at(cf, 4, m);
    CHECK(s.m == m);
    CHECK(s.width1 > 0);
    CHECK(s.width2 > 0);
    CHECK(near(s.measure1() + s.measure2(), s.l * s.q, R("1e-60")));
  }
}

TEST_CASE("xi sets: each fiber J^1_j, J^2_j is the level j of the large tower split at the cut") {
  ContinuedFraction cf = flagship(100);
  XiSets xi = xi_at(cf, 4, 2);
  Rotation r(Scalar::from_int(1), xi.alpha);
  for (long j = 0; j < xi.q; ++j) {
    Arc a = xi.j1(j), b = xi.j2(j);
    CHECK(near(frac(a.start + a.width - b.start + 1), "0", "1e-60"));
    CHECK(near(a.width + b.width, xi.l, R("1e-60")));
    CHECK(near(a.start, r.power(xi.w, j), R("1e-60")));
  }
}

TEST_CASE("literal scale k = 5 puts the late cut outside the base") {
  ContinuedFraction cf = flagship(1000);
  Scalar beta = construct_balanced_beta(cf, delta(), 5, 0);
  CHECK(error_of([&] { build_xi_sets(cf, 5, beta); }) == "DegenerateXiSets");
}

TEST_CASE("beta on the small tower is rejected") {
  ContinuedFraction cf = flagship(1000);
  XiSets xi = xi_at(cf, 4);
  // a point of the small base [0, w) never visits [w, b) in q backwards steps
  CHECK(error_of([&] { build_xi_sets(cf, 4, xi.w / 2); }) == "BetaInSmallTower");
  CHECK(error_of([&] { build_xi_sets(cf, 4, R("1.5")); }) == "OutOfDomain");
  CHECK(error_of([&] { build_xi_sets(cf, 80, R("0.1")); }) == "IndexOutOfRange");
}

TEST_CASE("criterion check passes for the step cocycle at k = 4") {
  ContinuedFraction cf = flagship(100);
  XiSets xi = xi_at(cf, 4);
  auto f = step_cocycle(xi.beta);
  EssentialValueReport ev = criterion_check(xi, f, 1 - delta(), -delta(), R("0.01"));
  CHECK(ev.pass1);
  CHECK(ev.pass2);
  CHECK(ev.full_sweep);
  CHECK(ev.fibers_sampled == xi.q);
  CHECK(ev.continuity_violations == 0);
  CHECK(ev.omega_gap_error < R("1e-6"));
  CHECK(near(ev.rigidity, xi.w, R("1e-60")));
  CHECK(near(ev.rigidity_sampled, xi.w, ldexp_one(16 - 256)));
  CHECK(!(ev.sym_diff1 > ev.sym_diff_bound));
  CHECK(!(ev.sym_diff2 > ev.sym_diff_bound));
  CHECK(near(ev.measure_xi1 + ev.measure_xi2, ev.tower_measure, R("1e-60")));
  for (auto& fs : ev.fibers) CHECK(near(fs.omega_plus - fs.omega_minus, "-1", "1e-6"));
}

TEST_CASE("property: deviations shrink as the big quotient grows") {
  Scalar prev = Scalar::from_int(10);
  for (long a6 : {10L, 100L, 1000L}) {
    ContinuedFraction cf = flagship(a6);
    XiSets xi = xi_at(cf, 4);
    EssentialValueReport ev = criterion_check(xi, step_cocycle(xi.beta), 1 - delta(), -delta(), R("1"));
    Scalar dev = max(ev.sup_dev1, ev.sup_dev2);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < R("0.001"));
}

TEST_CASE("sampled fibers agree with the full sweep") {
  ContinuedFraction cf = flagship(100);
  XiSets xi = xi_at(cf, 4, 3);
  auto f = step_cocycle(xi.beta);
  EssentialValueReport full = criterion_check(xi, f, 1 - delta(), -delta(), R("0.01"));
  EssentialValueReport some = criterion_check(xi, f, 1 - delta(), -delta(), R("0.01"), 3, 7);
  CHECK_FALSE(some.full_sweep);
  CHECK(some.fibers_sampled == 3);
  CHECK(!(max(some.sup_dev1, some.sup_dev2) > max(full.sup_dev1, full.sup_dev2) + R("1e-6")));
}

TEST_CASE("jump at beta must be -1") {
  ContinuedFraction cf = flagship(100);
  XiSets xi = xi_at(cf, 4);
  CHECK(error_of([&] {
          criterion_check(xi, Scalar::from_int(2) * step_cocycle(xi.beta), 1 - delta(), -delta(), R("0.01"));
        }) == "JumpNotNormalized");
}

TEST_CASE("mean value bounds") {
  ContinuedFraction cf = flagship(100);
  XiSets xi = xi_at(cf, 4);
  // no slope: Var(f') = 0 and the oscillation bound collapses to the slack
  auto f = step_cocycle(xi.beta);
  EssentialValueReport ev = criterion_check(xi, f, 1 - delta(), -delta(), R("1"));
  MvtReport m = mvt_bound_check(xi, f, ev);
  CHECK(m.var_df.is_zero());
  CHECK(m.pass_osc);
  CHECK(m.pass_integral);

  // a smooth bump on top keeps the jump and obeys both bounds
  auto g = f + PiecewiseSmoothFn::cos_mode(Scalar::from_int(1), 1, R("0.01"));
  EssentialValueReport eg = criterion_check(xi, g, 1 - delta(), -delta(), R("1"));
  MvtReport mg = mvt_bound_check(xi, g, eg);
  CHECK(mg.var_df > 0);
  CHECK(mg.pass_osc);
  CHECK(mg.pass_integral);
  auto g2 = f + PiecewiseSmoothFn::cos_mode(Scalar::from_int(1), 1, R("0.02"));
  MvtReport m2 = mvt_bound_check(xi, g2, criterion_check(xi, g2, 1 - delta(), -delta(), R("1")));
  CHECK(near(m2.osc_bound, 2 * mg.osc_bound, R("1e-50")));
}

TEST_CASE("Fraczek condition") {
  // golden: q^2 ||q alpha|| grows like q / sqrt 5
  ContinuedFraction g = cf_realize({}, TailPolicy::golden(), 256, 20);
  FraczekReport rg = fraczek_condition(g, {Scalar::zero(), R("0.3")}, {4, 8, 12, 16}, R("0.01"));
  CHECK_FALSE(rg.scores_decreasing);
  CHECK_FALSE(rg.plausible);

  // a single discontinuity at 0 gives gamma = 0
  FraczekReport z = fraczek_condition(g, {Scalar::zero()}, {4, 8}, R("0.01"));
  REQUIRE(z.gamma.size() == 1);
  CHECK(z.gamma[0].is_zero());

  // a_{n+1} >= q_n^2 along 1, 3, 5: the scores fall
  std::vector<long> a{1, 2, 1, 20, 1, 10000, 1};
  ContinuedFraction cf = cf_realize(a, TailPolicy::golden(), 256);
  FraczekReport rd = fraczek_condition(cf, {Scalar::zero(), delta() / 2}, {1, 3, 5}, R("0.01"));
  CHECK(rd.scores_decreasing);
  for (std::size_t i = 0; i < rd.indices.size(); ++i) {
    Scalar q = Scalar::from_mpz(cf.q(rd.indices[i]));
    CHECK(rd.q2_scores[i] < q / Scalar::from_int(cf.a(rd.indices[i] + 1)));
  }
  CHECK(rd.min_separation > 0);
}

}  // TEST_SUITE
