#include <algorithm>
#include <mutex>
#include <type_traits>

#include "ietlab/cocycle.hpp"
#include "ietlab/error.hpp"
#include "ietlab/parallel.hpp"

namespace ietlab {

namespace {

// Everything a walk needs: current point, phase (cos, sin of 2 pi x / P) and
// scratch for the mode powers.
struct Walker {
  Scalar x, c, s, t0, t1, v;
  std::vector<Scalar> cm, sm;

  Walker(const Scalar& start, int bits, int modes, const Scalar& period, bool phase)
      : x(start.with_bits(bits)), c(Scalar::zero(bits)), s(Scalar::zero(bits)), t0(Scalar::zero(bits)),
        t1(Scalar::zero(bits)), v(Scalar::zero(bits)) {
    cm.assign(modes, Scalar::zero(bits));
    sm.assign(modes, Scalar::zero(bits));
    if (phase) reset_phase(period);
  }

  void reset_phase(const Scalar& period) {
    Scalar th = Scalar::pi(x.bits());
    mpfr_mul_2ui(th.raw(), th.raw(), 1, MPFR_RNDN);
    th *= x;
    th /= period;
    mpfr_sin_cos(s.raw(), c.raw(), th.raw(), MPFR_RNDN);
  }

  // (c + i s) *= (wc + i ws)
  void rotate(const Scalar& wc, const Scalar& ws) {
    mpfr_mul(t0.raw(), c.raw(), wc.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), s.raw(), ws.raw(), MPFR_RNDN);
    mpfr_mul(s.raw(), s.raw(), wc.raw(), MPFR_RNDN);
    mpfr_fma(s.raw(), c.raw(), ws.raw(), s.raw(), MPFR_RNDN);
    mpfr_sub(c.raw(), t0.raw(), t1.raw(), MPFR_RNDN);
  }
  void rotate_conj(const Scalar& wc, const Scalar& ws) {
    mpfr_mul(t0.raw(), c.raw(), wc.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), s.raw(), ws.raw(), MPFR_RNDN);
    mpfr_mul(s.raw(), s.raw(), wc.raw(), MPFR_RNDN);
    mpfr_fms(s.raw(), c.raw(), ws.raw(), s.raw(), MPFR_RNDN);
    mpfr_neg(s.raw(), s.raw(), MPFR_RNDN);
    mpfr_add(c.raw(), t0.raw(), t1.raw(), MPFR_RNDN);
  }

  // fill cm/sm with cos/sin of m*theta, m = 1..modes
  void powers(int modes) {
    if (modes == 0) return;
    mpfr_set(cm[0].raw(), c.raw(), MPFR_RNDN);
    mpfr_set(sm[0].raw(), s.raw(), MPFR_RNDN);
    for (int m = 1; m < modes; ++m) {
      mpfr_mul(t0.raw(), cm[m - 1].raw(), c.raw(), MPFR_RNDN);
      mpfr_mul(t1.raw(), sm[m - 1].raw(), s.raw(), MPFR_RNDN);
      mpfr_sub(cm[m].raw(), t0.raw(), t1.raw(), MPFR_RNDN);
      mpfr_mul(t0.raw(), sm[m - 1].raw(), c.raw(), MPFR_RNDN);
      mpfr_fma(sm[m].raw(), cm[m - 1].raw(), s.raw(), t0.raw(), MPFR_RNDN);
    }
  }

  // descriptor value at x into v
  void eval(const TrigAffine& d) {
    mpfr_mul(v.raw(), d.c1.raw(), x.raw(), MPFR_RNDN);
    mpfr_add(v.raw(), v.raw(), d.c0.raw(), MPFR_RNDN);
    for (int m = 0; m < d.modes(); ++m) {
      mpfr_fma(v.raw(), d.a[m].raw(), cm[m].raw(), v.raw(), MPFR_RNDN);
      mpfr_fma(v.raw(), d.b[m].raw(), sm[m].raw(), v.raw(), MPFR_RNDN);
    }
  }
};

}  // namespace

BirkhoffEngine::BirkhoffEngine(Map map, PiecewiseSmoothFn fn, long orbit_budget)
    : BirkhoffEngine(std::move(map), std::vector<PiecewiseSmoothFn>{std::move(fn)}, orbit_budget) {}

BirkhoffEngine::BirkhoffEngine(Map map, std::vector<PiecewiseSmoothFn> fns, long orbit_budget)
    : map_(std::move(map)), fns_(std::move(fns)), budget_(orbit_budget) {
  if (fns_.empty()) throw Error(ErrorKind::InvalidArgument, "engine needs at least one cocycle");
  const Scalar& L = domain_length(map_);
  for (auto& f : fns_) {
    if (!(f.domain() == L)) throw Error(ErrorKind::InvalidArgument, "cocycle domain differs from the map's domain");
    if (!(f.period() == fns_[0].period())) throw Error(ErrorKind::InvalidArgument, "cocycles on one orbit need one period");
  }
  if (budget_ < 1) throw Error(ErrorKind::InvalidArgument, "orbit budget must be positive");
}

void BirkhoffEngine::check_budget(long n) const {
  if (n > budget_ || n < -budget_)
    throw Error(ErrorKind::OrbitBudgetExceeded,
                "|n| = " + std::to_string(n < 0 ? -n : n) + " exceeds budget " + std::to_string(budget_));
}

namespace {

// Walks orbits of one concrete map type and accumulates every cocycle.
template <class M>
class Runner {
 public:
  Runner(const M& map, const std::vector<PiecewiseSmoothFn>& fns)
      : map_(map), fns_(fns), bits_(map.bits()), period_(fns[0].period()) {
    for (auto& f : fns_) modes_ = std::max(modes_, f.max_mode());
    phase_ = modes_ > 0;
    if (phase_) {
      Scalar tp = Scalar::pi(bits_ + 32);
      mpfr_mul_2ui(tp.raw(), tp.raw(), 1, MPFR_RNDN);
      for (const Scalar& t : map.translations()) {
        Scalar ph = tp * t.with_bits(bits_ + 32) / period_.with_bits(bits_ + 32);
        Scalar sn = Scalar::zero(bits_), cs = Scalar::zero(bits_);
        mpfr_sin_cos(sn.raw(), cs.raw(), ph.raw(), MPFR_RNDN);
        wc_.push_back(cs);
        ws_.push_back(sn);
      }
    }
  }

  Walker walker(const Scalar& x) const { return Walker(x, bits_, modes_, period_, phase_); }

  int forward(Walker& w, bool left) const {
    int b = left ? map_.step_left(w.x) : map_.step(w.x);
    if (phase_) w.rotate(wc_[b], ws_[b]);
    return b;
  }
  int backward(Walker& w) const {
    int b = map_.step_inverse(w.x);
    if (phase_) w.rotate_conj(wc_[b], ws_[b]);
    return b;
  }

  // acc[k] += sign * f_k(w.x)  (left limit when left)
  void add(Walker& w, bool left, std::vector<Scalar>& acc, int sign) const {
    w.powers(modes_);
    for (std::size_t k = 0; k < fns_.size(); ++k) {
      const auto& f = fns_[k];
      int j = left ? f.piece_index_left(w.x) : f.piece_index(w.x);
      w.eval(f.pieces()[j]);
      if (sign > 0) mpfr_add(acc[k].raw(), acc[k].raw(), w.v.raw(), MPFR_RNDN);
      else mpfr_sub(acc[k].raw(), acc[k].raw(), w.v.raw(), MPFR_RNDN);
    }
  }

  std::vector<Scalar> zeros() const { return std::vector<Scalar>(fns_.size(), Scalar::zero(bits_)); }

  std::vector<Scalar> sums(const Scalar& x, long n, bool left) const {
    auto acc = zeros();
    Walker w = walker(x);
    if (n >= 0) {
      for (long k = 0; k < n; ++k) {
        add(w, left, acc, +1);
        forward(w, left);
      }
    } else {
      for (long k = 0; k < -n; ++k) {
        backward(w);
        add(w, false, acc, -1);
      }
    }
    return acc;
  }

  std::vector<std::vector<Scalar>> window(const Scalar& x, long n, long count, bool left) const {
    std::vector<std::vector<Scalar>> out(fns_.size());
    for (auto& o : out) o.reserve(count);
    auto acc = zeros();
    Walker tail = walker(x), lead = walker(x);
    for (long k = 0; k < n; ++k) {
      add(lead, left, acc, +1);
      forward(lead, left);
    }
    for (long j = 0; j < count; ++j) {
      for (std::size_t k = 0; k < fns_.size(); ++k) out[k].push_back(acc[k]);
      if (j + 1 == count) break;
      add(tail, left, acc, -1);
      add(lead, left, acc, +1);
      forward(tail, left);
      forward(lead, left);
    }
    return out;
  }

 private:
  const M& map_;
  const std::vector<PiecewiseSmoothFn>& fns_;
  int bits_;
  Scalar period_;
  int modes_ = 0;
  bool phase_ = false;
  std::vector<Scalar> wc_, ws_;
};

void check_start(const Map& m, const Scalar& x, bool left) {
  const Scalar& L = domain_length(m);
  if (left) {
    if (!(x > 0) || x > L) throw Error(ErrorKind::OutOfDomain, "left-limit start outside (0, L]");
  } else if (x.sign() < 0 || !(x < L)) {
    throw Error(ErrorKind::OutOfDomain, "orbit start outside [0, L)");
  }
}

}  // namespace

std::vector<Scalar> BirkhoffEngine::sums(const Scalar& x, long n) const {
  check_budget(n);
  check_start(map_, x, false);
  return std::visit([&](const auto& m) { return Runner(m, fns_).sums(x, n, false); }, map_);
}

Scalar BirkhoffEngine::sum(const Scalar& x, long n) const { return sums(x, n)[0]; }

std::vector<Scalar> BirkhoffEngine::sums_left(const Scalar& y, long n) const {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "left-limit sums need n >= 0");
  check_budget(n);
  check_start(map_, y, true);
  return std::visit([&](const auto& m) { return Runner(m, fns_).sums(y, n, true); }, map_);
}

Scalar BirkhoffEngine::sum_left(const Scalar& y, long n) const { return sums_left(y, n)[0]; }

std::vector<std::vector<Scalar>> BirkhoffEngine::window(const Scalar& x, long n, long count) const {
  if (n < 0 || count < 1) throw Error(ErrorKind::InvalidArgument, "window needs n >= 0 and count >= 1");
  check_budget(n + count);
  check_start(map_, x, false);
  return std::visit([&](const auto& m) { return Runner(m, fns_).window(x, n, count, false); }, map_);
}

std::vector<std::vector<Scalar>> BirkhoffEngine::window_left(const Scalar& y, long n, long count) const {
  if (n < 0 || count < 1) throw Error(ErrorKind::InvalidArgument, "window needs n >= 0 and count >= 1");
  check_budget(n + count);
  check_start(map_, y, true);
  return std::visit([&](const auto& m) { return Runner(m, fns_).window(y, n, count, true); }, map_);
}

Scalar birkhoff(const BirkhoffEngine& e, const Scalar& x, long n) { return e.sum(x, n); }

DkReport dk_verify(const PiecewiseSmoothFn& f, const Rotation& r, const ContinuedFraction& cf, int n,
                   long grid_size) {
  if (grid_size < 1) throw Error(ErrorKind::InvalidArgument, "grid_size must be >= 1");
  DkReport rep;
  rep.n = n;
  rep.q = cf.q(n);
  if (!rep.q.fits_slong_p()) throw Error(ErrorKind::OrbitBudgetExceeded, "q_n does not fit the orbit budget");
  const long q = rep.q.get_si();
  const int bits = r.bits();
  PiecewiseSmoothFn df = fn_derivative(f);
  rep.var_f = fn_variation(f);
  rep.var_df = fn_variation(df);
  BirkhoffEngine eng(Map(r), std::vector<PiecewiseSmoothFn>{f, df});
  const Scalar& L = r.modulus();

  rep.max_f = Scalar::zero(bits);
  rep.max_df = Scalar::zero(bits);
  rep.argmax_f = Scalar::zero(bits);
  std::mutex mu;
  auto fold = [&](const Scalar& at, const Scalar& sf, const Scalar& sdf) {
    std::lock_guard<std::mutex> lock(mu);
    Scalar a = abs(sf), b = abs(sdf);
    if (a > rep.max_f) {
      rep.max_f = a;
      rep.argmax_f = at;
    }
    if (b > rep.max_df) rep.max_df = b;
  };

  parallel_for(static_cast<std::size_t>(grid_size), [&](std::size_t i) {
    Scalar x = L * static_cast<long>(i) / grid_size;
    auto s = eng.sums(x, q);
    fold(x, s[0], s[1]);
  });
  rep.points = grid_size;

  // S_q f jumps exactly at the points R^{-i} b, i < q; take both one-sided values there.
  // Walking forward from R^{-(q-1)} b visits them all, one window per breakpoint.
  const auto& bps = f.breakpoints();
  parallel_for(bps.size(), [&](std::size_t k) {
    Scalar x0 = r.power(bps[k], -(q - 1));
    auto right = eng.window(x0, q, q);
    Scalar pt = x0;
    for (long j = 0; j < q; ++j) {
      fold(pt, right[0][j], right[1][j]);
      r.step(pt);
    }
    Scalar y0 = x0.is_zero() ? L : x0;
    auto left = eng.window_left(y0, q, q);
    pt = y0;
    for (long j = 0; j < q; ++j) {
      fold(pt, left[0][j], left[1][j]);
      r.step_left(pt);
    }
  });
  rep.points += static_cast<long>(2 * q * bps.size());

  // a theorem: only rounding may push the estimate past the bound
  auto slack = [&](const Scalar& v) { return ldexp_one(32 - bits, bits) * (1 + v) * q; };
  rep.pass_f = !(rep.max_f > rep.var_f + slack(rep.var_f));
  rep.pass_df = !(rep.max_df > rep.var_df + slack(rep.var_df));
  return rep;
}

}  // namespace ietlab
