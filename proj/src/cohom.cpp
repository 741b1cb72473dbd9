#include "ietlab/cohom.hpp"

#include <algorithm>

#include "ietlab/error.hpp"
#include "ietlab/parallel.hpp"

namespace ietlab {

const char* to_string(TransferMethod m) {
  switch (m) {
    case TransferMethod::Fourier: return "fourier";
    case TransferMethod::ClosedForm: return "closed_form";
    case TransferMethod::ChiTrick: return "chi_trick";
    case TransferMethod::Lifted: return "lifted";
  }
  return "?";
}

const char* to_string(GrowthTrend t) {
  switch (t) {
    case GrowthTrend::Bounded: return "bounded";
    case GrowthTrend::Clustered: return "clustered";
    case GrowthTrend::Growing: return "growing";
  }
  return "?";
}

Scalar TransferSolution::eval(const Scalar& x) const {
  if (symbolic()) return fn().eval(x);
  const GridFunction& h = std::get<GridFunction>(g);
  if (h.x.empty()) throw Error(ErrorKind::InvalidArgument, "empty grid function");
  if (x.sign() < 0 || !(x < h.domain)) throw Error(ErrorKind::OutOfDomain, "grid function outside its domain");
  // linear interpolation on the uniform grid, wrapping at the right end
  const long n = static_cast<long>(h.x.size());
  Scalar pos = x * n / h.domain;
  long i = std::min(pos.to_long_floor(), n - 1);
  Scalar t = pos - i;
  const Scalar& v0 = h.values[i];
  const Scalar& v1 = h.values[(i + 1) % n];
  return v0 + (v1 - v0) * t;
}

Scalar transfer_residual(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g, const Rotation& r, long grid) {
  if (grid < 1) throw Error(ErrorKind::InvalidArgument, "residual grid must be >= 1");
  // symbolic difference first, so exact cancellation stays exact
  PiecewiseSmoothFn diff = f - (compose_rotation(g, r) - g);
  const Scalar& L = r.modulus();
  Scalar worst = Scalar::zero(r.bits());
  for (long i = 0; i < grid; ++i) worst = max(worst, abs(diff.eval(L * i / grid)));
  return worst;
}

TransferSolution solve_fourier(const PiecewiseSmoothFn& f, const Scalar& angle, int modes, long residual_grid) {
  if (!is_pure_trig(f)) throw Error(ErrorKind::InvalidArgument, "solve_fourier needs a single trig piece without slope");
  if (modes < f.max_mode()) throw Error(ErrorKind::InvalidArgument, "modes below the highest mode of f");
  const int bits = f.bits();
  const Scalar& L = f.domain();
  const TrigAffine& d = f.pieces()[0];
  Scalar scale = abs(d.c0);
  for (int m = 0; m < d.modes(); ++m) scale = max(scale, max(abs(d.a[m]), abs(d.b[m])));
  if (abs(d.c0) > ldexp_one(16 - bits, bits) * (1 + scale))
    throw Error(ErrorKind::NotACoboundary, "nonzero mean " + d.c0.to_string(10));
  Rotation r(L, angle);
  Scalar floor_div = ldexp_one(-bits / 2, bits);
  Scalar tp = Scalar::pi(bits);
  mpfr_mul_2ui(tp.raw(), tp.raw(), 1, MPFR_RNDN);

  std::vector<Scalar> A, B;
  for (int m = 1; m <= d.modes(); ++m) {
    const Scalar& a = d.a[m - 1];
    const Scalar& b = d.b[m - 1];
    if (a.is_zero() && b.is_zero()) {
      A.push_back(Scalar::zero(bits));
      B.push_back(Scalar::zero(bits));
      continue;
    }
    Scalar th = tp * static_cast<long>(m) * angle / L;
    Scalar s = Scalar::zero(bits), c = Scalar::zero(bits);
    mpfr_sin_cos(s.raw(), c.raw(), th.raw(), MPFR_RNDN);
    // D = e^{i th} - 1
    Scalar dr = c - 1, di = s;
    Scalar dd = dr * dr + di * di;
    if (sqrt(dd) < floor_div)
      throw Error(ErrorKind::SmallDivisorBreakdown, "|exp(2 pi i m alpha) - 1| below 2^{-P/2} at m = " + std::to_string(m));
    // f^ = (a - i b) / 2, g^ = f^ / D
    Scalar fr = a / 2, fi = -b / 2;
    Scalar gr = (fr * dr + fi * di) / dd;
    Scalar gi = (fi * dr - fr * di) / dd;
    A.push_back(2 * gr);
    B.push_back(-(2 * gi));
  }
  TransferSolution sol{PiecewiseSmoothFn::trig(L, Scalar::zero(bits), A, B), f, angle, Scalar::zero(bits),
                       Scalar::zero(bits), TransferMethod::Fourier, false};
  Scalar gsize = Scalar::from_int(1, bits);
  for (int m = 0; m < static_cast<int>(A.size()); ++m) gsize += abs(A[m]) + abs(B[m]);
  sol.tolerance = ldexp_one(32 - bits, bits) * gsize;
  sol.residual = transfer_residual(f, sol.fn(), r, residual_grid);
  sol.failed = sol.residual > sol.tolerance;
  return sol;
}

namespace {

void sin_cos_2pi(const Scalar& x, Scalar& s, Scalar& c) {
  Scalar th = Scalar::pi(x.bits());
  mpfr_mul_2ui(th.raw(), th.raw(), 1, MPFR_RNDN);
  th *= x;
  s = Scalar::zero(x.bits());
  c = Scalar::zero(x.bits());
  mpfr_sin_cos(s.raw(), c.raw(), th.raw(), MPFR_RNDN);
}

}  // namespace

Scalar sin_transfer_value(const Scalar& alpha, const Scalar& x) {
  Scalar s, c, sx, cx, sd, cd;
  sin_cos_2pi(alpha, s, c);
  sin_cos_2pi(x, sx, cx);
  sin_cos_2pi(x - alpha, sd, cd);
  return (cx + cd) / (-2 * s);
}

Scalar sin_transfer_sup(const Scalar& alpha) {
  Scalar s, c;
  sin_cos_2pi(alpha, s, c);
  Scalar A = (1 + c) / (-2 * s);
  return sqrt(A * A + Scalar::parse("0.25", alpha.bits()));
}

TransferSolution sin_transfer(const Scalar& alpha, long residual_grid) {
  const int bits = alpha.bits();
  if (!(alpha > 0) || !(alpha < 1)) throw Error(ErrorKind::OutOfDomain, "alpha must lie in (0, 1)");
  Scalar s, c;
  sin_cos_2pi(alpha, s, c);
  if (abs(s) < ldexp_one(-bits / 2, bits))
    throw Error(ErrorKind::SmallDivisorBreakdown, "sin(2 pi alpha) vanishes at working precision");
  Scalar one = Scalar::from_int(1, bits);
  // cos 2 pi (x - alpha) = cos 2 pi alpha cos 2 pi x + sin 2 pi alpha sin 2 pi x
  Scalar den = -2 * s;
  PiecewiseSmoothFn g = PiecewiseSmoothFn::trig(one, Scalar::zero(bits), {(1 + c) / den}, {s / den});
  PiecewiseSmoothFn f = PiecewiseSmoothFn::sin_mode(one, 1, one);
  TransferSolution sol{g, f, alpha, Scalar::zero(bits), ldexp_one(32 - bits, bits) * (1 + sin_transfer_sup(alpha)),
                       TransferMethod::ClosedForm, false};
  sol.residual = transfer_residual(f, g, Rotation(one, alpha), residual_grid);
  sol.failed = sol.residual > sol.tolerance;
  return sol;
}

PiecewiseSmoothFn chi_function(const Scalar& alpha) {
  const int bits = alpha.bits();
  Scalar one = Scalar::from_int(1, bits);
  TrigAffine lo{alpha, Scalar::zero(bits), {}, {}};
  TrigAffine hi{alpha - one, Scalar::zero(bits), {}, {}};
  return PiecewiseSmoothFn(one, one, {Scalar::zero(bits), one - alpha}, {lo, hi});
}

TransferSolution chi_transfer(const Scalar& alpha, long residual_grid) {
  const int bits = alpha.bits();
  if (!(alpha > 0) || !(alpha < 1)) throw Error(ErrorKind::OutOfDomain, "alpha must lie in (0, 1)");
  Scalar one = Scalar::from_int(1, bits);
  PiecewiseSmoothFn h(one, one, {Scalar::zero(bits)}, {TrigAffine{Scalar::zero(bits), one, {}, {}}});
  PiecewiseSmoothFn chi = chi_function(alpha);
  TransferSolution sol{h, chi, alpha, Scalar::zero(bits), Scalar::zero(bits), TransferMethod::ChiTrick, false};
  sol.residual = transfer_residual(chi, h, Rotation(one, alpha), residual_grid);
  sol.failed = !sol.residual.is_zero();
  return sol;
}

TransferSolution lift_solution(const InducedSystem& sys, const TransferSolution& h_induced, long grid) {
  Scalar tau = max(h_induced.residual, h_induced.tolerance);
  LiftReport rep = lift_transfer(sys, [&](const Scalar& x) { return h_induced.eval(x); }, grid, tau);
  TransferSolution sol{rep.h, sys.parent_fn, Scalar::zero(sys.parent.bits()), rep.max_residual, tau * 10,
                       TransferMethod::Lifted, !rep.certified};
  return sol;
}

GrowthReport growth_diagnostic(const PiecewiseSmoothFn& f, const Rotation& r, const ContinuedFraction& cf, int depth,
                               long grid) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be >= 1");
  if (grid < 1) throw Error(ErrorKind::InvalidArgument, "grid must be >= 1");
  if (depth > cf.depth()) throw Error(ErrorKind::InsufficientDepth, "depth beyond stored convergents");
  BirkhoffEngine eng(Map(r), f);
  const int bits = r.bits();
  const Scalar& L = r.modulus();
  GrowthReport rep;
  rep.fitted_c = Scalar::zero(bits);
  for (int n = 1; n <= depth; ++n) {
    const mpz_class& q = cf.q(n);
    if (q > eng.budget()) throw Error(ErrorKind::OrbitBudgetExceeded, "q_" + std::to_string(n) + " beyond the orbit budget");
    const long qn = q.get_si();
    std::vector<Scalar> vals(grid, Scalar::zero(bits));
    parallel_for(static_cast<std::size_t>(grid), [&](std::size_t i) {
      vals[i] = abs(eng.sum(L * static_cast<long>(i) / grid, qn));
    });
    Scalar mx = Scalar::zero(bits);
    for (auto& v : vals) mx = max(mx, v);
    rep.n.push_back(n);
    rep.q.push_back(q);
    rep.m.push_back(mx);
    rep.fitted_c = max(rep.fitted_c, mx);
  }
  const std::size_t N = rep.m.size();
  Scalar tail = Scalar::zero(bits), head = Scalar::zero(bits);
  for (std::size_t i = (N > 3 ? N - 3 : 0); i < N; ++i) tail = max(tail, rep.m[i]);
  for (std::size_t i = 0; i < (N + 1) / 2; ++i) head = max(head, rep.m[i]);
  if (!(tail > rep.fitted_c / 2)) rep.trend = GrowthTrend::Bounded;
  else if (!(tail > 2 * head)) rep.trend = GrowthTrend::Clustered;
  else rep.trend = GrowthTrend::Growing;
  return rep;
}

PiecewiseSmoothFn step_cocycle(const Scalar& beta) {
  const int bits = beta.bits();
  if (!(beta > 0) || !(beta < 1)) throw Error(ErrorKind::OutOfDomain, "beta must lie in (0, 1)");
  Scalar one = Scalar::from_int(1, bits);
  TrigAffine lo{one - beta, Scalar::zero(bits), {}, {}};
  TrigAffine hi{-beta, Scalar::zero(bits), {}, {}};
  return PiecewiseSmoothFn(one, one, {Scalar::zero(bits), beta}, {lo, hi});
}

NonergodicExample nonergodic_example(const ContinuedFraction& cf, long m,
                                     const std::function<PiecewiseSmoothFn(const Scalar&)>& make_f) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "m must be >= 1");
  int n = -1;
  for (int i = 0; i + 1 <= cf.depth(); ++i)
    if (cf.q(i) >= m) {
      n = i;
      break;
    }
  if (n < 0) throw Error(ErrorKind::InsufficientDepth, "no stored q_n >= " + std::to_string(m) + " with a successor");
  const int bits = cf.bits();
  Rotation r(Scalar::from_int(1, bits), cf.value());
  Scalar beta = Scalar::zero(bits);
  for (long i = 0; i < m; ++i) r.step_inverse(beta);

  NonergodicCertificate cert;
  cert.m = m;
  cert.n = n;
  cert.beta = beta;
  cert.j_length = cf.qnorm(n) + cf.qnorm(n + 1);
  const mpz_class horizon_z = cf.q(n) + cf.q(n + 1) + 1;
  const long horizon = horizon_z.fits_slong_p() ? horizon_z.get_si() : -1;
  if (horizon < 0) throw Error(ErrorKind::OrbitBudgetExceeded, "return horizon too large");

  Scalar y = Scalar::zero(bits);
  for (long i = 1; i <= horizon; ++i) {
    r.step_inverse(y);
    if (y < cert.j_length) {
      cert.cut = y;
      cert.cut_steps = i;
      break;
    }
  }
  if (cert.cut_steps == 0) throw Error(ErrorKind::HorizonExceeded, "0 never returns to J");

  PiecewiseSmoothFn f = make_f(beta);
  Scalar tol = ldexp_one(32 - bits, bits);
  auto jumps = f.jump_values();
  cert.pass = true;
  for (std::size_t g = 0; g < f.breakpoints().size(); ++g) {
    if (!(abs(jumps[g]) > tol)) continue;
    BreakpointVisit v;
    v.breakpoint = f.breakpoints()[g];
    v.jump = jumps[g];
    Scalar p = v.breakpoint;
    long t = 0;
    while (!(p < cert.j_length)) {
      if (++t > horizon) throw Error(ErrorKind::HorizonExceeded, "breakpoint never reaches J");
      r.step_inverse(p);
    }
    v.steps = t;
    v.point = p;
    v.on_discontinuity = !(p > tol) || !(abs(p - cert.cut) > tol);
    cert.pass = cert.pass && v.on_discontinuity;
    cert.visits.push_back(std::move(v));
  }
  return NonergodicExample{r, beta, f, cert};
}

}  // namespace ietlab
