#include <algorithm>
#include <random>
#include <set>

#include "ietlab/continued_fraction.hpp"
#include "ietlab/dynsys.hpp"
#include "support.hpp"

using namespace ietlab;
using namespace ietlab::testing;

namespace {
const char* kTol = "1e-60";
Iet3 t523() { return Iet3(R("0.5"), R("0.2"), R("0.3")); }
Iet3 t235() { return Iet3(R("0.2"), R("0.3"), R("0.5")); }
Scalar golden(int bits = 256) { return (sqrt(Scalar::from_int(5, bits)) - 1) / 2; }
}  // namespace

TEST_SUITE("dynsys") {

TEST_CASE("iet_apply hand values") {
  Iet3 t = t523();
  CHECK(near(t.apply(R("0.1")), "0.6", kTol));
  CHECK(near(t.apply(R("0.3")), "0.8", kTol));
  CHECK(near(t.apply(R("0.8")), "0.1", kTol));
  Iet3 u = t235();
  CHECK(near(u.apply(R("0.1")), "0.9", kTol));
  CHECK(near(u.apply(R("0.9")), "0.4", kTol));
  CHECK(error_of([&] { t.apply(R("1")); }) == "OutOfDomain");
  CHECK(error_of([&] { t.apply(R("-0.1")); }) == "OutOfDomain");
}

TEST_CASE("translations match the displacement formula") {
  Iet3 t = t523();
  CHECK(near(t.translation(0), "0.5", kTol));   // lb + lc
  CHECK(near(t.translation(1), "-0.2", kTol));  // lc - la
  CHECK(near(t.translation(2), "-0.7", kTol));  // -(la + lb)
}

TEST_CASE("iet_apply is a bijection on a grid") {
  Iet3 t = t523();
  const int N = 1000;
  std::vector<Scalar> img;
  for (int i = 0; i < N; ++i) img.push_back(t.apply(Scalar::from_int(i) / N));
  std::sort(img.begin(), img.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
  for (int i = 0; i < N; ++i) CHECK(near(img[i], Scalar::from_int(i) / N, R("1e-60")));
}

TEST_CASE("iet_inverse") {
  Iet3 t = t523();
  CHECK(near(t.inverse(R("0.6")), "0.1", kTol));
  CHECK(near(t.inverse(R("0.1")), "0.8", kTol));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Scalar x = Scalar::random_unit(rng);
    CHECK(near(t.inverse(t.apply(x)), x, R(kTol)));
    CHECK(near(t.apply(t.inverse(x)), x, R(kTol)));
  }
}

TEST_CASE("discontinuities") {
  auto d = discontinuities(t523());
  CHECK(near(d[0], "0", "0"));
  CHECK(near(d[1], "0.5", kTol));
  CHECK(near(d[2], "0.7", kTol));
  Scalar third = Scalar::from_int(1) / 3;
  auto e = discontinuities(Iet3(third, third, third));
  CHECK(near(e[1], third, R(kTol)));
  CHECK(near(e[2], 2 * third, R("1e-70")));

  // grid scan: T(x + h) - T(x) differs from h only across a discontinuity
  Iet3 t = t523();
  const int N = 1000;
  std::vector<int> found;
  for (int i = 0; i + 1 < N; ++i) {
    Scalar x = Scalar::from_int(i) / N, y = Scalar::from_int(i + 1) / N;
    if (abs((t.apply(y) - t.apply(x)) - (y - x)) > R("1e-30")) found.push_back(i + 1);
  }
  CHECK(found == std::vector<int>{500, 700});
}

TEST_CASE("keane check") {
  Iet3 t(R("0.31415926535897932384626"), R("0.27182818284590452353602"), R("0.41401255179511615262"));
  KeaneReport k = keane_check(t, 10000, ldexp_one(-128));
  CHECK(k.holds);
  CHECK(k.minimum > 0);
  Iet3 bad(R("0.25"), R("0.5"), R("0.25"));
  KeaneReport kb = keane_check(bad, 20, ldexp_one(-128));
  CHECK_FALSE(kb.holds);
  CHECK(kb.minimum < ldexp_one(-128));
  KeaneReport z = keane_check(t, 100, Scalar::zero());
  CHECK(z.holds == (z.minimum > 0));
}

TEST_CASE("reflect") {
  Iet3 r = reflect(t523());
  CHECK(near(r.lambda_a(), "0.3", kTol));
  CHECK(near(r.lambda_b(), "0.2", kTol));
  CHECK(near(r.lambda_c(), "0.5", kTol));
  Iet3 rr = reflect(r);
  CHECK(rr.lambda_a() == t523().lambda_a());
  CHECK(rr.lambda_c() == t523().lambda_c());

  // I o T = reflect(T) o I on the interior, I(x) = total - x, with the left-limit
  // convention on the right side since I swaps half-open ends
  std::mt19937_64 rng(11);
  Iet3 t(R("0.37"), R("0.21"), R("0.42"));
  Iet3 tr = reflect(t);
  for (int i = 0; i < 1000; ++i) {
    Scalar x = Scalar::random_unit(rng) * t.total();
    if (x.is_zero()) continue;
    Scalar lhs = t.total() - t.apply(x);
    Scalar y = t.total() - x;
    tr.step_left(y);
    CHECK(near(lhs, y, R("1e-30")));
  }
}

TEST_CASE("orbit") {
  Rotation r(Scalar::from_int(1), golden());
  OrbitSample s = orbit(Map(r), Scalar::zero(), 3);
  REQUIRE(s.points.size() == 4);
  CHECK(near(s.points[1], "0.6180339887", "1e-10"));
  CHECK(near(s.points[2], "0.2360679775", "1e-10"));
  CHECK(near(s.points[3], "0.8541019662", "1e-10"));
  OrbitSample one = orbit(Map(t523()), R("0.3"), 1);
  CHECK(one.points.size() == 2);
  CHECK(near(one.points[1], "0.8", kTol));
  CHECK(error_of([&] { orbit(Map(r), R("1.5"), 3); }) == "OutOfDomain");

  OrbitSample big = orbit(Map(r), Scalar::zero(), 9999);
  CHECK(star_discrepancy(big.points, Scalar::from_int(1)) < R("0.01"));
}

TEST_CASE("property: measure preservation of random intervals") {
  Iet3 t(R("0.37"), R("0.21"), R("0.42"));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    Scalar a = Scalar::random_unit(rng), b = Scalar::random_unit(rng);
    if (b < a) std::swap(a, b);
    // preimage of [a, b) is the union over the three image pieces, cut at their ends
    Scalar measure = Scalar::zero();
    const Scalar ends[4] = {Scalar::zero(), t.lambda_c(), t.lambda_c() + t.lambda_b(), t.total()};
    for (int p = 0; p < 3; ++p) {
      const Scalar& lo = max(a, ends[p]);
      const Scalar& hi = min(b, ends[p + 1]);
      if (lo < hi) {
        Scalar pl = t.inverse(lo);
        Scalar ph = pl + (hi - lo);  // one branch: preimage is a translate
        measure += ph - pl;
        CHECK(t.piece(pl) == t.piece(t.inverse(lo + (hi - lo) / 2)));
      }
    }
    CHECK(near(measure, b - a, ldexp_one(16 - 256)));
  }
}

TEST_CASE("property: piece images tile the interval") {
  Iet3 t(R("0.37"), R("0.21"), R("0.42"));
  // C lands on [0, lc), B on [lc, lc + lb), A on [lc + lb, total)
  CHECK(t.apply(t.lambda_a() + t.lambda_b()) == Scalar::zero());
  CHECK(near(t.apply(t.lambda_a()), t.lambda_c(), R("1e-70")));
  CHECK(near(t.apply(Scalar::zero()), t.lambda_c() + t.lambda_b(), R("1e-70")));
}

TEST_CASE("property: orbit gaps at denominators take at most two values") {
  ContinuedFraction cf = cf_realize({}, TailPolicy::golden(), 256, 12);
  Rotation r(Scalar::from_int(1), cf.value());
  for (int n = 1; n <= 8; ++n) {
    long q = cf.q(n).get_si();
    OrbitSample s = orbit(Map(r), R("0.123"), q - 1 > 0 ? q - 1 : 1);
    std::vector<Scalar> pts(s.points.begin(), s.points.begin() + q);
    std::sort(pts.begin(), pts.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
    std::vector<Scalar> gaps;
    for (long i = 0; i < q; ++i) {
      Scalar g = i + 1 < q ? pts[i + 1] - pts[i] : pts[0] + 1 - pts[i];
      bool seen = false;
      for (auto& h : gaps) seen = seen || near(g, h, R("1e-50"));
      if (!seen) gaps.push_back(g);
    }
    CHECK(gaps.size() <= 2);
  }
}

TEST_CASE("rotation basics") {
  Rotation r(R("0.7"), R("0.5"));
  CHECK(near(r.apply(R("0.3")), "0.1", kTol));
  CHECK(near(r.apply(R("0.1")), "0.6", kTol));
  CHECK(near(r.inverse(R("0.1")), "0.3", kTol));
  CHECK(near(r.power(R("0.15"), -3), r.inverse(r.inverse(r.inverse(R("0.15")))), R(kTol)));
}

}  // TEST_SUITE
