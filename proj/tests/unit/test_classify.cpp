#include "ietlab/classify.hpp"
#include "support.hpp"

using namespace ietlab;
using namespace ietlab::testing;

namespace {
Scalar one() { return Scalar::from_int(1); }
Iet3 t() { return Iet3(R("0.37"), R("0.21"), R("0.42")); }
}  // namespace

TEST_SUITE("classify") {

TEST_CASE("verdict table") {
  ErgodicityVerdict s = predict_ergodicity(t(), PiecewiseSmoothFn::sin_mode(one(), 1, one()));
  CHECK(s.verdict == Verdict::CoboundaryTypical);
  CHECK(s.basis == Basis::TypicalCoboundary);
  CHECK(s.interior_smooth);

  ErgodicityVerdict c = predict_ergodicity(t(), PiecewiseSmoothFn::cos_mode(one(), 1, one()));
  CHECK(c.verdict == Verdict::ErgodicSkewProduct);
  CHECK(c.basis == Basis::TypicalErgodicity);
  CHECK(near(c.endpoint_value, "1", "1e-70"));

  ErgodicityVerdict w = predict_ergodicity(t(), PiecewiseSmoothFn::sawtooth(one(), R("0.3")));
  CHECK(w.verdict == Verdict::ErgodicSkewProduct);
  CHECK(w.basis == Basis::NonzeroJumpSum);
  CHECK(near(w.jump_sum, "-1", "1e-70"));

  ErgodicityVerdict z = predict_ergodicity(t(), PiecewiseSmoothFn::zero(one()));
  CHECK(z.verdict == Verdict::CoboundaryTypical);
  for (auto* v : {&s, &c, &w, &z}) CHECK_FALSE(v->citation.empty());
}

TEST_CASE("zero jump sum with interior jumps needs a witness") {
  auto f = step_cocycle(R("0.3819660112501051518"));
  ErgodicityVerdict none = predict_ergodicity(t(), f);
  CHECK(none.verdict == Verdict::Inconclusive);
  CHECK(none.basis == Basis::None);
  CHECK_FALSE(none.interior_smooth);

  ContinuedFraction cf = cf_realize({}, TailPolicy::golden(), 256, 24);
  NonergodicExample ex = nonergodic_example(cf, 1);
  REQUIRE(ex.certificate.pass);
  ErgodicityVerdict yes = predict_ergodicity(t(), ex.f, ex.certificate);
  CHECK(yes.verdict == Verdict::NonergodicConstructed);
  CHECK(yes.basis == Basis::ConstructedWitness);

  // a failing witness is ignored
  NonergodicCertificate bad = ex.certificate;
  bad.pass = false;
  CHECK(predict_ergodicity(t(), ex.f, bad).verdict == Verdict::Inconclusive);
}

TEST_CASE("a kink in the interior is not smooth") {
  // |x - 1/2| - 1/4: continuous, f(0) = 1/4, but f' jumps at 1/2
  TrigAffine lo{R("0.25"), R("-1"), {}, {}}, hi{R("-0.75"), R("1"), {}, {}};
  PiecewiseSmoothFn f(one(), one(), {Scalar::zero(), R("0.5")}, {lo, hi});
  ErgodicityVerdict v = predict_ergodicity(t(), f);
  CHECK_FALSE(v.interior_smooth);
  CHECK(v.verdict == Verdict::Inconclusive);
}

}  // TEST_SUITE
