#include <random>

#include "ietlab/continued_fraction.hpp"
#include "support.hpp"

using namespace ietlab;
using namespace ietlab::testing;

namespace {
Scalar golden(int bits = 256) { return (sqrt(Scalar::from_int(5, bits)) - 1) / 2; }
}  // namespace

TEST_SUITE("arith") {

TEST_CASE("scalar precision is the minimum of the operands and mixing is counted") {
  reset_precision_mix_count();
  Scalar a = Scalar::from_int(1, 128), b = Scalar::from_int(3, 256);
  Scalar c = a / b;
  CHECK(c.bits() == 128);
  CHECK(precision_mix_count() >= 1);
  reset_precision_mix_count();
  Scalar d = b / b;
  CHECK(precision_mix_count() == 0);
  CHECK(d.bits() == 256);
}

TEST_CASE("scalar relative rounding error per operation is at most 2^(1-P)") {
  for (int bits : {64, 128, 256, 512}) {
    Scalar third = Scalar::from_int(1, bits) / 3;
    Scalar back = third * 3;
    CHECK(abs(back - 1) <= ldexp_one(1 - bits, bits));
  }
  CHECK(error_of([] { Scalar::parse("0.3x"); }) == "InvalidArgument");
}

TEST_CASE("cf_expand of the golden conjugate gives ones and Fibonacci denominators") {
  ContinuedFraction cf = cf_expand(golden(), 10);
  const long fib[] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55};
  for (int n = 1; n <= 10; ++n) CHECK(cf.a(n) == 1);
  for (int n = 0; n < 10; ++n) CHECK(cf.q(n) == fib[n]);
}

TEST_CASE("cf_expand flags rational input") {
  std::string k = error_of([] { cf_expand(R("0.5"), 5); });
  CHECK((k == "RationalInput" || k == "PrecisionExhausted"));
  k = error_of([] { cf_expand(Scalar::from_int(3, 256) / 8, 10); });
  CHECK((k == "RationalInput" || k == "PrecisionExhausted"));
}

TEST_CASE("cf_realize then cf_expand recovers the prefix with a big quotient") {
  ContinuedFraction cf = cf_realize({1, 1, 1, 1, 1, 1000}, TailPolicy::golden(), 256);
  ContinuedFraction back = cf_expand(cf.value(), 8);
  const long want[] = {1, 1, 1, 1, 1, 1000, 1, 1};
  for (int i = 1; i <= 8; ++i) CHECK(back.a(i) == want[i - 1]);
}

TEST_CASE("cf_realize golden value and exact recurrences") {
  ContinuedFraction g = cf_realize({1, 1, 1}, TailPolicy::golden(), 256);
  CHECK(near(g.value(), "0.6180339887498948482", "1e-19"));
  ContinuedFraction cf = cf_realize({1, 1, 1, 1, 1, 1000}, TailPolicy::golden(), 256);
  CHECK(cf.q(4) == 5);
  CHECK(cf.q(5) == 8);
  CHECK(cf.q(6) == 8005);
  CHECK(validate(cf).empty());
  CHECK(error_of([] { cf_realize({1000, 1000, 1000, 1000, 1000, 1000, 1000}, TailPolicy::golden(), 64); }) ==
        "PrecisionTooLow");
}

TEST_CASE("qnorm examples") {
  CHECK(near(qnorm(3, golden()), "0.1458980337503154553", "1e-18"));
  CHECK(near(qnorm(1, R("0.5")), "0.5", "0"));
  Scalar id = 5 * qnorm(3, golden()) + 3 * qnorm(5, golden());
  CHECK(near(id, R("1"), ldexp_one(8 - 256)));
  CHECK(error_of([] { qnorm(4, R("0.25")); }) == "PrecisionExhausted");
}

TEST_CASE("diophantine profile examples") {
  ContinuedFraction g = cf_realize({}, TailPolicy::golden(), 256, 21);
  DiophantineProfile p = diophantine_profile(g, R("0.1"), 2, 100);
  REQUIRE(p.last_index >= 20);
  for (int n = 0; n <= 20; ++n) CHECK(p.roth_scores[n] > R("0.3"));
  CHECK(p.roth_min > R("0.3"));
  CHECK(p.big_quotient_indices.empty());

  ContinuedFraction cf = cf_realize({1, 1, 1, 1, 1, 1000}, TailPolicy::golden(), 256);
  DiophantineProfile q = diophantine_profile(cf, R("0.1"), 0, 100);
  CHECK(q.big_quotient_indices == std::vector<int>{5});
  for (int n = 1; n + 1 <= cf.depth(); ++n) {
    Scalar qn = Scalar::from_mpz(cf.q(n)), qn1 = Scalar::from_mpz(cf.q(n + 1));
    CHECK(q.sk0_scores[n] > qn / (qn + qn1));
    CHECK(q.sk0_scores[n] < qn / qn1);
  }
}

TEST_CASE("property: partition identity, decreasing qnorm and round trips on random quotients") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> quot(1, 10000), len(1, 30);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long> a(len(rng));
    for (auto& v : a) v = quot(rng);
    // round trip at a precision that covers the prefix
    mpz_class q = 1, qp = 0;
    for (long v : a) {
      mpz_class t = v * q + qp;
      qp = q;
      q = t;
    }
    const int bits = bits_for_qmax(q) + 64;
    ContinuedFraction cf = cf_realize(a, TailPolicy::golden(), bits);
    ContinuedFraction back = cf_expand(cf.value(), static_cast<int>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(back.a(static_cast<int>(i) + 1) == a[i]);
    CHECK(validate(cf).empty());
    for (int n = 1; n + 1 <= cf.depth(); ++n) {
      Scalar s = cf.qnorm(n) * cf.q(n + 1) + cf.qnorm(n + 1) * cf.q(n);
      CHECK(near(s, Scalar::from_int(1, bits), ldexp_one(8 - bits, bits)));
      CHECK(cf.qnorm(n + 1) < cf.qnorm(n));
      CHECK(cf.qnorm(n) < Scalar::from_int(1, bits) / Scalar::from_mpz(cf.q(n + 1), bits));
    }
  }
}

TEST_CASE("property: convergent quality |alpha - p/q| < 1/q^2 and gcd = 1") {
  for (auto tail : {std::vector<long>{1}, std::vector<long>{2}, std::vector<long>{1, 3}}) {
    ContinuedFraction cf = cf_realize({3, 7, 15, 1, 292}, TailPolicy::periodic(tail), 256);
    CHECK(validate(cf).empty());
    for (int n = 0; n <= cf.depth(); ++n) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), cf.p(n).get_mpz_t(), cf.q(n).get_mpz_t());
      CHECK(g == 1);
    }
  }
}

}  // TEST_SUITE
