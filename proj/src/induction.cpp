#include "ietlab/induction.hpp"

#include <random>

#include "ietlab/error.hpp"

namespace ietlab {

const char* to_string(InductionCase c) { return c == InductionCase::Case1 ? "case1" : "case2"; }

int InducedSystem::return_time(const Scalar& x) const {
  for (auto& p : return_times)
    if (!(x < p.start) && x < p.end) return p.r;
  throw Error(ErrorKind::OutOfDomain, "point outside the induction interval");
}

InducedSystem induce(const Iet3& t, const PiecewiseSmoothFn& f) {
  if (!(f.domain() == t.total())) throw Error(ErrorKind::InvalidArgument, "cocycle domain differs from the IET length");
  const Scalar& la = t.lambda_a();
  const Scalar& lb = t.lambda_b();
  const Scalar& lc = t.lambda_c();
  if (la == lc) throw Error(ErrorKind::DegenerateCase, "lambda_A = lambda_C");
  const int bits = t.bits();
  Scalar zero = Scalar::zero(bits);
  Scalar shift = lb + lc;
  if (la > lc) {
    Scalar J = la + lb;
    Scalar u = la - lc;
    PiecewiseSmoothFn extra = compose_translation(f, {{u, la, shift}}, J);
    return InducedSystem{InductionCase::Case1,
                         J,
                         Rotation(J, shift),
                         restrict_to(f, J) + extra,
                         {{zero, u, 1}, {u, la, 2}, {la, J, 1}},
                         t,
                         f};
  }
  Scalar J = lb + lc;
  PiecewiseSmoothFn extra = compose_translation(f, {{zero, la, shift}}, J);
  return InducedSystem{InductionCase::Case2,
                       J,
                       Rotation(J, lc - la),
                       restrict_to(f, J) + extra,
                       {{zero, la, 2}, {la, J, 1}},
                       t,
                       f};
}

int return_time(const Iet3& t, const Scalar& j_length, const Scalar& x, int horizon) {
  if (x.sign() < 0 || !(x < j_length)) throw Error(ErrorKind::OutOfDomain, "point outside [0, |J|)");
  Scalar y = x;
  for (int r = 1; r <= horizon; ++r) {
    t.step(y);
    if (y < j_length) return r;
  }
  throw Error(ErrorKind::HorizonExceeded, "no return within " + std::to_string(horizon) + " steps");
}

InductionReport verify_induction(const InducedSystem& sys, long samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
  const int bits = sys.parent.bits();
  BirkhoffEngine eng(Map(sys.parent), sys.parent_fn);
  std::mt19937_64 rng(seed);
  InductionReport rep;
  rep.samples = samples;
  rep.max_map_discrepancy = Scalar::zero(bits);
  rep.max_fn_discrepancy = Scalar::zero(bits);
  rep.worst_x = Scalar::zero(bits);
  for (long i = 0; i < samples; ++i) {
    Scalar x = Scalar::random_unit(rng, bits) * sys.j_length;
    // the induced side never looks at the parent orbit, the direct side never at f~
    int r = return_time(sys.parent, sys.j_length, x);
    Scalar y = x;
    for (int k = 0; k < r; ++k) sys.parent.step(y);
    Scalar dm = abs(sys.rotation.apply(x) - y);
    Scalar df = abs(sys.induced_fn.eval(x) - eng.sum(x, r));
    if (dm > rep.max_map_discrepancy) rep.max_map_discrepancy = dm;
    if (df > rep.max_fn_discrepancy) {
      rep.max_fn_discrepancy = df;
      rep.worst_x = x;
    }
  }
  rep.max_discrepancy = max(rep.max_map_discrepancy, rep.max_fn_discrepancy);
  return rep;
}

LiftReport lift_transfer(const InducedSystem& sys, const std::function<Scalar(const Scalar&)>& h_induced, long grid,
                         const Scalar& tau) {
  if (grid < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least one point per tower level (>= 2)");
  const Iet3& t = sys.parent;
  const PiecewiseSmoothFn& f = sys.parent_fn;
  const Scalar& J = sys.j_length;
  const Scalar& L = t.total();
  const int bits = t.bits();
  LiftReport rep;
  rep.tau = tau;

  rep.premise_residual = Scalar::zero(bits);
  for (long i = 0; i < grid; ++i) {
    Scalar x = J * i / grid;
    Scalar d = abs(sys.induced_fn.eval(x) - (h_induced(sys.rotation.apply(x)) - h_induced(x)));
    rep.premise_residual = max(rep.premise_residual, d);
  }
  if (rep.premise_residual > tau)
    throw Error(ErrorKind::NotACoboundary,
                "induced residual " + rep.premise_residual.to_string(6) + " exceeds tau " + tau.to_string(6));

  auto h = [&](const Scalar& y) {
    if (y < J) return h_induced(y);
    Scalar x = t.inverse(y);
    return h_induced(x) + f.eval(x);
  };

  rep.h.domain = L;
  rep.max_residual = Scalar::zero(bits);
  Scalar lim = tau * 10;
  long good = 0;
  for (long i = 0; i < grid; ++i) {
    Scalar y = L * i / grid;
    Scalar hy = h(y);
    Scalar d = abs(f.eval(y) - (h(t.apply(y)) - hy));
    rep.max_residual = max(rep.max_residual, d);
    if (!(d > lim)) ++good;
    rep.h.x.push_back(std::move(y));
    rep.h.values.push_back(std::move(hy));
  }
  rep.certified_fraction = static_cast<double>(good) / static_cast<double>(grid);
  rep.certified = rep.certified_fraction >= 0.99;
  return rep;
}

}  // namespace ietlab
