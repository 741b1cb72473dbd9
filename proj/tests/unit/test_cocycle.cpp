#include <random>

#include "ietlab/cocycle.hpp"
#include "ietlab/continued_fraction.hpp"
#include "ietlab/quadrature.hpp"
#include "support.hpp"

using namespace ietlab;
using namespace ietlab::testing;

namespace {
Scalar one() { return Scalar::from_int(1); }
Scalar golden() { return (sqrt(Scalar::from_int(5)) - 1) / 2; }
Scalar two_pi() { return 2 * Scalar::pi(); }
}  // namespace

TEST_SUITE("cocycle") {

TEST_CASE("fn_eval examples") {
  CHECK(near(PiecewiseSmoothFn::sin_mode(one(), 1, one()).eval(R("0.25")), "1", "1e-70"));
  CHECK(near(PiecewiseSmoothFn::sawtooth(one(), R("0.3")).eval(R("0.3")), "-0.5", "1e-70"));
  CHECK(near(PiecewiseSmoothFn::cos_mode(one(), 1, one()).eval(one() / 3), "-0.5", "1e-70"));
  CHECK(near(PiecewiseSmoothFn::sawtooth(one(), R("0.3")).eval_left(R("0.3")), "0.5", "1e-70"));
  CHECK(error_of([] { PiecewiseSmoothFn::zero(one()).eval(R("1")); }) == "OutOfDomain");
}

TEST_CASE("derivative, integral, variation and jump sum of sin") {
  auto f = PiecewiseSmoothFn::sin_mode(one(), 1, one());
  auto df = fn_derivative(f);
  for (const char* x : {"0", "0.1", "0.37", "0.9"}) {
    Scalar xs = R(x);
    CHECK(near(df.eval(xs), two_pi() * cos(two_pi() * xs), R("1e-70")));
  }
  CHECK(near(fn_integral(f), "0", "1e-70"));
  CHECK(near(fn_variation(f), "4", "1e-60"));
  CHECK(near(fn_jump_sum(f), "0", "1e-70"));
  // Var(f') = int |f''| = 4 pi^2 * 4/(2 pi) = 8 pi
  CHECK(near(fn_variation(df), 8 * Scalar::pi(), R("1e-55")));
}

TEST_CASE("sawtooth variation, jump sum and integral") {
  auto f = PiecewiseSmoothFn::sawtooth(one(), R("0.3"));
  CHECK(near(fn_variation(f), "2", "1e-60"));
  CHECK(near(fn_jump_sum(f), "-1", "1e-70"));
  CHECK(near(fn_integral(f), "0", "1e-70"));
  auto jumps = f.jump_values();
  REQUIRE(jumps.size() == 2);
  CHECK(near(jumps[0], "0", "1e-70"));   // continuous across 0 on the circle
  CHECK(near(jumps[1], "-1", "1e-70"));
}

TEST_CASE("property: S(f) = -int f' for random trig+affine cocycles") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    auto f = random_cocycle(rng, R("1.7"), 1 + i % 4, i % 3);
    CHECK(near(fn_jump_sum(f), -fn_integral(fn_derivative(f)), R("1e-60")));
    CHECK(fn_variation(f) >= abs(fn_integral(fn_derivative(f))) - R("1e-60"));
    Scalar sj = Scalar::zero();
    for (auto& j : f.jump_values()) sj += abs(j);
    CHECK(fn_variation(f) >= sj - R("1e-60"));
  }
}

TEST_CASE("property: derivative against central differences away from breakpoints") {
  std::mt19937_64 rng(4);
  auto f = random_cocycle(rng, one(), 3, 3);
  auto df = fn_derivative(f);
  Scalar h = R("1e-8");
  for (int i = 0; i < 200; ++i) {
    Scalar x = Scalar::random_unit(rng);
    bool close = x < h * 2 || x > one() - h * 2;
    for (auto& b : f.breakpoints()) close = close || abs(x - b) < h * 2;
    if (close) continue;
    Scalar fd = (f.eval(x + h) - f.eval(x - h)) / (2 * h);
    CHECK(near(fd, df.eval(x), R("1e-6")));
  }
}

TEST_CASE("birkhoff examples and identities") {
  Rotation r(one(), golden());
  auto f = PiecewiseSmoothFn::sin_mode(one(), 1, one());
  BirkhoffEngine e(Map(r), f);
  CHECK(e.sum(R("0.1"), 0).is_zero());
  Scalar direct = Scalar::zero();
  for (int k = 0; k < 5; ++k) direct += sin(two_pi() * frac(R("0.1") + k * golden()));
  CHECK(near(e.sum(R("0.1"), 5), direct, R("1e-60")));

  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    Scalar x = Scalar::random_unit(rng);
    long n = 1 + static_cast<long>(rng() % 100);
    Scalar back = r.power(x, -n);
    CHECK(near(e.sum(x, -n), -e.sum(back, n), R("1e-55")));
  }
}

TEST_CASE("property: cocycle identity S_{m+n} = S_m + S_n o T^m") {
  std::mt19937_64 rng(13);
  Iet3 t(R("0.37"), R("0.21"), R("0.42"));
  auto f = random_cocycle(rng, t.total(), 3, 2);
  BirkhoffEngine e(Map(t), f);
  for (int i = 0; i < 40; ++i) {
    Scalar x = Scalar::random_unit(rng);
    long m = static_cast<long>(rng() % 60) - 20, n = static_cast<long>(rng() % 60) - 20;
    Scalar y = x;
    for (long k = 0; k < std::abs(m); ++k) y = m > 0 ? t.apply(y) : t.inverse(y);
    CHECK(near(e.sum(x, m + n), e.sum(x, m) + e.sum(y, n), R("1e-50")));
  }
}

TEST_CASE("window and left sums agree with direct sums") {
  Rotation r(one(), golden());
  auto f = PiecewiseSmoothFn::sawtooth(one(), R("0.3"));
  BirkhoffEngine e(Map(r), f);
  auto w = e.window(R("0.2"), 13, 7);
  Scalar x = R("0.2");
  for (int j = 0; j < 7; ++j) {
    CHECK(near(w[0][j], e.sum(x, 13), R("1e-55")));
    x = r.apply(x);
  }
  // left limit at the jump differs from the right value by the jump
  CHECK(near(e.sum_left(R("0.3"), 1) - e.sum(R("0.3"), 1), "1", "1e-60"));
  CHECK(error_of([&] { BirkhoffEngine(Map(r), f, 100).sum(R("0.1"), 101); }) == "OrbitBudgetExceeded");
}

TEST_CASE("Denjoy-Koksma examples") {
  ContinuedFraction cf = cf_realize({}, TailPolicy::golden(), 256, 20);
  Rotation r(one(), cf.value());
  auto f = PiecewiseSmoothFn::sin_mode(one(), 1, one());
  REQUIRE(cf.q(10) == 89);
  DkReport rep = dk_verify(f, r, cf, 10, 10000);
  CHECK(rep.max_f <= Scalar::from_int(4));
  CHECK(rep.pass_f);
  CHECK(rep.pass_df);

  DkReport z = dk_verify(PiecewiseSmoothFn::zero(one()), r, cf, 6, 100);
  CHECK(z.max_f.is_zero());
  CHECK(z.max_df.is_zero());

  // f' = 1 has nonzero mean, so only the bound for f applies to the sawtooth
  ContinuedFraction cf2 = cf_realize({2, 5, 1, 3}, TailPolicy::golden(), 256, 12);
  Rotation r2(one(), cf2.value());
  for (int n = 1; n <= 9; ++n) {
    DkReport s = dk_verify(PiecewiseSmoothFn::sawtooth(one(), R("0.3")), r2, cf2, n, 200);
    CHECK(s.max_f <= Scalar::from_int(2));
    CHECK(s.pass_f);
  }
}

TEST_CASE("property: Denjoy-Koksma never violated on random trig cocycles") {
  std::mt19937_64 rng(17);
  ContinuedFraction cf = cf_realize({1, 3, 2, 7}, TailPolicy::golden(), 256, 8);
  Rotation r(one(), cf.value());
  for (int i = 0; i < 4; ++i) {
    auto f = random_cocycle(rng, one(), 1, 2, true);
    f = f - PiecewiseSmoothFn::constant(one(), fn_integral(f));
    for (int n = 2; n <= 7; ++n) {
      DkReport rep = dk_verify(f, r, cf, n, 64);
      CHECK(rep.pass_f);
      CHECK(rep.pass_df);
    }
  }
}

TEST_CASE("small integral lemma examples") {
  ContinuedFraction cf = cf_realize({1, 1, 1, 1, 1, 50}, TailPolicy::golden(), 256);
  Rotation r(one(), cf.value());
  auto f = PiecewiseSmoothFn::sin_mode(one(), 1, one());
  SmallIntegralReport rep = small_integral_check(f, r, cf, 5, 8);
  CHECK(rep.pass);
  CHECK(rep.max_abs <= rep.bound + rep.quad_tol);

  SmallIntegralReport z = small_integral_check(PiecewiseSmoothFn::zero(one()), r, cf, 5, 4);
  CHECK(z.max_abs.is_zero());

  SmallIntegralReport two = small_integral_check(Scalar::from_int(2) * f, r, cf, 5, 8);
  CHECK(near(two.bound, 2 * rep.bound, R("1e-50")));
  CHECK(near(two.max_abs, 2 * rep.max_abs, R("1e-9")));
}

TEST_CASE("property: integral is rotation invariant (quadrature)") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 5; ++i) {
    auto g = random_cocycle(rng, one(), 1, 3, true);
    Rotation r(one(), Scalar::random_unit(rng));
    auto gr = compose_rotation(g, r);
    Scalar q = Scalar::zero();
    // honour the breakpoint that composition introduces
    const auto& bp = gr.breakpoints();
    for (std::size_t j = 0; j < bp.size(); ++j) {
      const Scalar& hi = j + 1 < bp.size() ? bp[j + 1] : gr.domain();
      q += integrate_adaptive([&](const Scalar& x) { return gr.piece_eval(static_cast<int>(j), x); }, bp[j], hi,
                              R("1e-30"), 1000000)
               .value;
    }
    CHECK(near(q, fn_integral(g), R("1e-10")));
  }
}

TEST_CASE("operator+, compose_translation and simplify keep values") {
  std::mt19937_64 rng(31);
  auto f = random_cocycle(rng, one(), 3, 1), g = random_cocycle(rng, one(), 2, 2);
  auto s = f + g;
  for (int i = 0; i < 50; ++i) {
    Scalar x = Scalar::random_unit(rng);
    CHECK(near(s.eval(x), f.eval(x) + g.eval(x), R("1e-60")));
  }
  auto shifted = compose_translation(f, {{R("0.1"), R("0.4"), R("0.5")}}, one());
  CHECK(near(shifted.eval(R("0.2")), f.eval(R("0.7")), R("1e-60")));
  CHECK(shifted.eval(R("0.05")).is_zero());
  auto t = simplify(s - g, ldexp_one(-200));
  CHECK(t.breakpoints().size() <= s.breakpoints().size());
  auto m = mirror(f);
  CHECK(near(m.eval(R("0.25")), f.eval(R("0.75")), R("1e-60")));
}

}  // TEST_SUITE
