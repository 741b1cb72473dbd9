#include <algorithm>
#include <random>

#include "ietlab/towers.hpp"
#include "support.hpp"

using namespace ietlab;
using namespace ietlab::testing;

namespace {
ContinuedFraction golden_cf() { return cf_realize({}, TailPolicy::golden(), 256, 24); }
ContinuedFraction flagship(long a6 = 1000) { return cf_realize({1, 1, 1, 1, 1, a6}, TailPolicy::golden(), 256); }
Scalar delta() { return sqrt(R("0.5")); }

// all levels of both towers as arcs
std::vector<Arc> levels(const RokhlinTower& t) {
  std::vector<Arc> out;
  for (long j = 0; j < t.h_large; ++j) out.push_back(t.level(TowerKind::Large, j));
  for (long j = 0; j < t.h_small; ++j) out.push_back(t.level(TowerKind::Small, j));
  return out;
}

bool arcs_disjoint(const Arc& a, const Arc& b) {
  // b starts after a ends and a starts after b ends, on the circle, up to rounding
  const Scalar tol = ldexp_one(16 - 256);
  Scalar d = frac(b.start - a.start + 2), e = frac(a.start - b.start + 2);
  return !(d < a.width - tol) && !(e < b.width - tol);
}
}  // namespace

TEST_SUITE("towers") {

TEST_CASE("golden n = 2 tower") {
  ContinuedFraction cf = golden_cf();
  RokhlinTower t = build_tower(cf, 2, Scalar::zero());
  CHECK(t.h_small == 2);
  CHECK(t.h_large == 3);
  CHECK(near(t.base_large.width, "0.2360679774997896964", "1e-18"));
  CHECK(near(t.base_small.width, "0.1458980337503154553", "1e-18"));
  CHECK(near(t.measure(), R("1"), ldexp_one(16 - 256)));
  RokhlinTower s = build_tower(cf, 2, R("0.25"));
  CHECK(s.base_large.width == t.base_large.width);
  CHECK(near(frac(s.base_large.start - t.base_large.start + 1), "0.25", "1e-70"));
  CHECK(near(frac(s.base_small.start - t.base_small.start + 1), "0.25", "1e-70"));

  auto lv = levels(t);
  REQUIRE(lv.size() == 5);
  for (std::size_t i = 0; i < lv.size(); ++i)
    for (std::size_t j = i + 1; j < lv.size(); ++j) CHECK(arcs_disjoint(lv[i], lv[j]));
  CHECK(error_of([&] { build_tower(cf, 60, Scalar::zero()); }) == "IndexOutOfRange");
}

TEST_CASE("both parities: partition identity, disjoint levels and tops return to the bases") {
  ContinuedFraction cf = cf_realize({2, 1, 3, 1, 4}, TailPolicy::golden(), 256, 6);
  for (int n = 1; n <= 6; ++n) {
    RokhlinTower t = build_tower(cf, n, R("0.3"));
    CHECK(t.sign == cf.sigma(n));
    CHECK(near(t.measure(), R("1"), ldexp_one(16 - 256)));
    auto lv = levels(t);
    for (std::size_t i = 0; i < lv.size(); ++i)
      for (std::size_t j = i + 1; j < lv.size(); ++j) CHECK(arcs_disjoint(lv[i], lv[j]));
    // R of each top lands inside the union of the two bases
    Rotation r = t.rotation();
    for (auto which : {TowerKind::Large, TowerKind::Small}) {
      long top = (which == TowerKind::Large ? t.h_large : t.h_small).get_si() - 1;
      Arc a = t.level(which, top);
      Scalar mid = r.apply(frac(a.start + a.width / 2));
      CHECK((arc_contains(t.base_large, mid) || arc_contains(t.base_small, mid)));
    }
  }
}

TEST_CASE("locate examples") {
  ContinuedFraction cf = golden_cf();
  RokhlinTower t = build_tower(cf, 2, Scalar::zero());
  Scalar x = frac(t.base_large.start + R("0.01"));
  auto l0 = locate(t, x);
  REQUIRE(l0);
  CHECK(l0->which == TowerKind::Large);
  CHECK(l0->level == 0);
  CHECK(near(l0->offset, "0.01", "1e-70"));
  auto l1 = locate(t, t.rotation().apply(x));
  REQUIRE(l1);
  CHECK(l1->which == TowerKind::Large);
  CHECK(l1->level == 1);
  CHECK(near(l1->offset, "0.01", "1e-60"));
}

TEST_CASE("property: locate o R increments the level except at tops; sampled bijection") {
  ContinuedFraction cf = golden_cf();
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 6; ++n) {
    RokhlinTower t = build_tower(cf, n, Scalar::random_unit(rng));
    Rotation r = t.rotation();
    const int N = n == 6 ? 100000 : 2000;
    std::vector<long> count(t.h_large.get_si() + t.h_small.get_si(), 0);
    for (int i = 0; i < N; ++i) {
      Scalar x = Scalar::random_unit(rng);
      auto a = locate(t, x);
      REQUIRE(a);
      long slot = a->which == TowerKind::Large ? a->level : t.h_large.get_si() + a->level;
      ++count[slot];
      if (i % 20 != 0) continue;
      auto b = locate(t, r.apply(x));
      REQUIRE(b);
      long top = (a->which == TowerKind::Large ? t.h_large : t.h_small).get_si() - 1;
      if (a->level < top) {
        CHECK(b->which == a->which);
        CHECK(b->level == a->level + 1);
      } else {
        CHECK(b->level == 0);
      }
    }
    // every level is hit in proportion to its width
    for (std::size_t s = 0; s < count.size(); ++s) {
      double w = (static_cast<long>(s) < t.h_large ? t.base_large.width : t.base_small.width).to_double();
      CHECK(std::abs(count[s] / static_cast<double>(N) - w) < 5 * std::sqrt(w / N) + 1e-3);
    }
  }
}

TEST_CASE("property: first return to the bases is an exchange of two intervals") {
  ContinuedFraction cf = golden_cf();
  for (int n = 1; n <= 6; ++n) {
    RokhlinTower t = build_tower(cf, n, Scalar::zero());
    Rotation r = t.rotation();
    // points of the large base return after h_large steps, small after h_small; each
    // base moves rigidly
    for (auto which : {TowerKind::Large, TowerKind::Small}) {
      const Arc& base = which == TowerKind::Large ? t.base_large : t.base_small;
      long h = (which == TowerKind::Large ? t.h_large : t.h_small).get_si();
      Scalar shift;
      for (int k = 1; k <= 9; ++k) {
        Scalar x = frac(base.start + base.width * k / 10);
        Scalar y = x;
        long steps = 0;
        do {
          r.step(y);
          ++steps;
        } while (!arc_contains(t.base_large, y) && !arc_contains(t.base_small, y));
        CHECK(steps == h);
        Scalar d = r.circle_delta(x, y);
        if (k == 1) shift = d;
        else CHECK(near(d, shift, R("1e-60")));
      }
    }
  }
}

TEST_CASE("balanced report and construction") {
  ContinuedFraction cf = flagship();
  Scalar b = cf.qnorm(5) + cf.qnorm(6);
  Scalar beta0 = construct_balanced_beta(cf, delta(), 5, 0);
  CHECK(near(beta0, delta() * b, R("1e-70")));

  Scalar z = construct_balanced_beta(cf, delta(), 5, 5);
  BalancedReport rep = balanced_report(cf, z, delta(), {5});
  REQUIRE(rep.scales.size() == 1);
  CHECK(rep.scales[0].m == 5);
  CHECK(near(rep.scales[0].epsilon, "0", "1e-60"));
  CHECK(near(rep.delta, "0.7071067812", "1e-10"));

  Scalar z7 = construct_balanced_beta(cf, delta(), 5, 7);
  BalancedReport r7 = balanced_report(cf, z7, delta(), {5});
  CHECK(r7.scales[0].m == 7);
  CHECK(near(r7.scales[0].epsilon, "0", "1e-60"));
  CHECK(!(r7.scales[0].offset < r7.scales[0].w));
  CHECK(r7.scales[0].offset < r7.scales[0].b);

  CHECK(error_of([&] { construct_balanced_beta(golden_cf(), R("0.3"), 3, 0); }) == "TargetOutsideLargeBase");
  CHECK(error_of([&] { construct_balanced_beta(cf, delta(), 5, 8005); }) == "IndexOutOfRange");
}

TEST_CASE("balanced report on golden alpha with random z is well formed") {
  ContinuedFraction cf = golden_cf();
  std::mt19937_64 rng(19);
  for (int i = 0; i < 10; ++i) {
    BalancedReport rep = balanced_report(cf, Scalar::random_unit(rng), delta(), {2, 4, 6, 8});
    for (auto& s : rep.scales) {
      if (s.in_small) {
        CHECK(s.m == -1);
        CHECK(s.epsilon < 0);
      } else {
        CHECK(s.epsilon >= 0);
        CHECK(!(s.offset < s.w));
        CHECK(s.offset < s.b);
      }
    }
  }
}

}  // TEST_SUITE
