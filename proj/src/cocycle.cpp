#include "ietlab/cocycle.hpp"

#include <algorithm>
#include <cmath>

#include "ietlab/error.hpp"

namespace ietlab {

namespace {

Scalar two_pi(int bits) {
  Scalar p = Scalar::pi(bits);
  mpfr_mul_2ui(p.raw(), p.raw(), 1, MPFR_RNDN);
  return p;
}

// tolerance used to snap breakpoints that differ only by rounding
Scalar snap_eps(const Scalar& scale) {
  Scalar e = ldexp_one(-(scale.bits() - 16), scale.bits());
  return e * max(abs(scale), Scalar::from_int(1, scale.bits()));
}

TrigAffine zero_desc(int bits) {
  TrigAffine d;
  d.c0 = Scalar::zero(bits);
  d.c1 = Scalar::zero(bits);
  return d;
}

// value of descriptor d at x; cos/sin of the base angle supplied by the caller
Scalar desc_value(const TrigAffine& d, const Scalar& x, const Scalar& period) {
  Scalar v = d.c0 + d.c1 * x;
  const int M = d.modes();
  if (M == 0) return v;
  Scalar th = two_pi(x.bits()) * x / period;
  Scalar c = Scalar::zero(x.bits()), s = Scalar::zero(x.bits());
  mpfr_sin_cos(s.raw(), c.raw(), th.raw(), MPFR_RNDN);
  Scalar cm = c, sm = s, t = Scalar::zero(x.bits());
  for (int m = 0; m < M; ++m) {
    if (m > 0) {
      // (cm + i sm) *= (c + i s)
      t = cm * c - sm * s;
      sm = sm * c + cm * s;
      cm = t;
    }
    v += d.a[m] * cm;
    v += d.b[m] * sm;
  }
  return v;
}

TrigAffine desc_derivative(const TrigAffine& d, const Scalar& period) {
  TrigAffine r = zero_desc(d.c0.bits());
  r.c0 = d.c1;
  const int M = d.modes();
  Scalar k = two_pi(d.c0.bits()) / period;
  for (int m = 1; m <= M; ++m) {
    Scalar km = k * static_cast<long>(m);
    r.a.push_back(km * d.b[m - 1]);
    r.b.push_back(-(km * d.a[m - 1]));
  }
  return r;
}

// integral of d over [u, v)
Scalar desc_integral(const TrigAffine& d, const Scalar& u, const Scalar& v, const Scalar& period) {
  Scalar r = d.c0 * (v - u);
  r += d.c1 * (v * v - u * u) / 2;
  const int M = d.modes();
  if (M == 0) return r;
  const int bits = u.bits();
  Scalar tp = two_pi(bits);
  for (int m = 1; m <= M; ++m) {
    if (d.a[m - 1].is_zero() && d.b[m - 1].is_zero()) continue;
    Scalar k = tp * static_cast<long>(m) / period;
    Scalar tu = k * u, tv = k * v;
    Scalar su = Scalar::zero(bits), cu = Scalar::zero(bits), sv = Scalar::zero(bits), cv = Scalar::zero(bits);
    mpfr_sin_cos(su.raw(), cu.raw(), tu.raw(), MPFR_RNDN);
    mpfr_sin_cos(sv.raw(), cv.raw(), tv.raw(), MPFR_RNDN);
    r += (d.a[m - 1] * (sv - su) - d.b[m - 1] * (cv - cu)) / k;
  }
  return r;
}

// D(x + t) re-expressed in x
TrigAffine desc_shift(const TrigAffine& d, const Scalar& t, const Scalar& period) {
  TrigAffine r;
  r.c0 = d.c0 + d.c1 * t;
  r.c1 = d.c1;
  const int M = d.modes();
  if (M == 0) return r;
  const int bits = t.bits();
  Scalar tp = two_pi(bits);
  for (int m = 1; m <= M; ++m) {
    Scalar ph = tp * static_cast<long>(m) * t / period;
    Scalar s = Scalar::zero(bits), c = Scalar::zero(bits);
    mpfr_sin_cos(s.raw(), c.raw(), ph.raw(), MPFR_RNDN);
    const Scalar& a = d.a[m - 1];
    const Scalar& b = d.b[m - 1];
    r.a.push_back(a * c + b * s);
    r.b.push_back(b * c - a * s);
  }
  return r;
}

// D(L - x) re-expressed in x
TrigAffine desc_mirror(const TrigAffine& d, const Scalar& L, const Scalar& period) {
  TrigAffine r;
  r.c0 = d.c0 + d.c1 * L;
  r.c1 = -d.c1;
  const int M = d.modes();
  const int bits = L.bits();
  Scalar tp = two_pi(bits);
  for (int m = 1; m <= M; ++m) {
    Scalar ph = tp * static_cast<long>(m) * L / period;
    Scalar s = Scalar::zero(bits), c = Scalar::zero(bits);
    mpfr_sin_cos(s.raw(), c.raw(), ph.raw(), MPFR_RNDN);
    const Scalar& a = d.a[m - 1];
    const Scalar& b = d.b[m - 1];
    r.a.push_back(a * c + b * s);
    r.b.push_back(a * s - b * c);
  }
  return r;
}

TrigAffine desc_add(TrigAffine x, const TrigAffine& y) {
  const int M = std::max(x.modes(), y.modes());
  x.pad(M);
  x.c0 += y.c0;
  x.c1 += y.c1;
  for (int m = 0; m < y.modes(); ++m) {
    x.a[m] += y.a[m];
    x.b[m] += y.b[m];
  }
  return x;
}

TrigAffine desc_scale(const TrigAffine& x, const Scalar& c) {
  TrigAffine r;
  r.c0 = x.c0 * c;
  r.c1 = x.c1 * c;
  for (int m = 0; m < x.modes(); ++m) {
    r.a.push_back(x.a[m] * c);
    r.b.push_back(x.b[m] * c);
  }
  return r;
}

Scalar desc_variation(const TrigAffine& d, const Scalar& u, const Scalar& v, const Scalar& period) {
  if (!(u < v)) return Scalar::zero(u.bits());
  const int M = d.modes();
  if (M == 0) return abs(d.c1) * (v - u);
  TrigAffine dd = desc_derivative(d, period);
  // sample densely enough that every oscillation of f' is seen
  const double cycles = std::ceil(((v - u) / period).to_double() * M);
  const long N = 48 * (1 + static_cast<long>(cycles));
  std::vector<Scalar> ts;
  std::vector<int> sg;
  ts.reserve(N + 1);
  Scalar width = v - u;
  for (long i = 0; i <= N; ++i) {
    Scalar t = (i == N) ? v : u + width * i / N;
    sg.push_back(desc_value(dd, t, period).sign());
    ts.push_back(std::move(t));
  }
  std::vector<Scalar> cuts{u};
  const int bits = u.bits();
  for (long i = 0; i < N; ++i) {
    if (sg[i] == 0 && i > 0) {
      cuts.push_back(ts[i]);
      continue;
    }
    if (sg[i] * sg[i + 1] < 0) {
      Scalar lo = ts[i], hi = ts[i + 1];
      const int slo = sg[i];
      for (int it = 0; it < bits + 4; ++it) {
        Scalar mid = (lo + hi) / 2;
        if (mid == lo || mid == hi) break;
        int sm = desc_value(dd, mid, period).sign();
        if (sm == 0) { lo = hi = mid; break; }
        if (sm == slo) lo = mid; else hi = mid;
      }
      cuts.push_back((lo + hi) / 2);
    }
  }
  cuts.push_back(v);
  Scalar var = Scalar::zero(bits);
  Scalar prev = desc_value(d, cuts[0], period);
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    Scalar cur = desc_value(d, cuts[i], period);
    var += abs(cur - prev);
    prev = std::move(cur);
  }
  return var;
}

}  // namespace

bool TrigAffine::is_zero() const {
  if (!c0.is_zero() || !c1.is_zero()) return false;
  for (int m = 0; m < modes(); ++m)
    if (!a[m].is_zero() || !b[m].is_zero()) return false;
  return true;
}

void TrigAffine::pad(int m) {
  while (modes() < m) {
    a.push_back(Scalar::zero(c0.bits()));
    b.push_back(Scalar::zero(c0.bits()));
  }
}

PiecewiseSmoothFn::PiecewiseSmoothFn(Scalar domain, Scalar period, std::vector<Scalar> breakpoints,
                                     std::vector<TrigAffine> pieces)
    : domain_(std::move(domain)), period_(std::move(period)), bp_(std::move(breakpoints)),
      pieces_(std::move(pieces)) {
  if (!(domain_ > 0)) throw Error(ErrorKind::InvalidArgument, "domain length must be positive");
  if (!(period_ > 0)) throw Error(ErrorKind::InvalidArgument, "period must be positive");
  if (bp_.empty() || !bp_[0].is_zero()) throw Error(ErrorKind::InvalidArgument, "first breakpoint must be 0");
  if (bp_.size() != pieces_.size()) throw Error(ErrorKind::InvalidArgument, "one descriptor per breakpoint");
  for (std::size_t j = 1; j < bp_.size(); ++j) {
    if (!(bp_[j - 1] < bp_[j])) throw Error(ErrorKind::InvalidArgument, "breakpoints must increase");
  }
  if (!(bp_.back() < domain_)) throw Error(ErrorKind::InvalidArgument, "breakpoint outside domain");
  for (auto& d : pieces_) {
    if (d.a.size() != d.b.size()) throw Error(ErrorKind::InvalidArgument, "cos/sin coefficient count mismatch");
  }
}

PiecewiseSmoothFn PiecewiseSmoothFn::zero(const Scalar& domain) {
  return PiecewiseSmoothFn(domain, domain, {Scalar::zero(domain.bits())}, {zero_desc(domain.bits())});
}

PiecewiseSmoothFn PiecewiseSmoothFn::constant(const Scalar& domain, const Scalar& c) {
  TrigAffine d = zero_desc(domain.bits());
  d.c0 = c;
  return PiecewiseSmoothFn(domain, domain, {Scalar::zero(domain.bits())}, {d});
}

PiecewiseSmoothFn PiecewiseSmoothFn::trig(const Scalar& domain, const Scalar& c0, std::vector<Scalar> a,
                                          std::vector<Scalar> b) {
  TrigAffine d = zero_desc(domain.bits());
  d.c0 = c0;
  d.a = std::move(a);
  d.b = std::move(b);
  return PiecewiseSmoothFn(domain, domain, {Scalar::zero(domain.bits())}, {d});
}

PiecewiseSmoothFn PiecewiseSmoothFn::sin_mode(const Scalar& domain, int m, const Scalar& amp) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "mode must be >= 1");
  TrigAffine d = zero_desc(domain.bits());
  d.pad(m);
  d.b[m - 1] = amp;
  return PiecewiseSmoothFn(domain, domain, {Scalar::zero(domain.bits())}, {d});
}

PiecewiseSmoothFn PiecewiseSmoothFn::cos_mode(const Scalar& domain, int m, const Scalar& amp) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "mode must be >= 1");
  TrigAffine d = zero_desc(domain.bits());
  d.pad(m);
  d.a[m - 1] = amp;
  return PiecewiseSmoothFn(domain, domain, {Scalar::zero(domain.bits())}, {d});
}

PiecewiseSmoothFn PiecewiseSmoothFn::sawtooth(const Scalar& domain, const Scalar& beta) {
  if (beta.sign() < 0 || !(beta < domain)) throw Error(ErrorKind::OutOfDomain, "sawtooth jump outside domain");
  const int bits = domain.bits();
  TrigAffine left = zero_desc(bits), right = zero_desc(bits);
  left.c1 = 1 / domain;
  right.c1 = left.c1;
  // (x - beta + L)/L - 1/2 on [0, beta), (x - beta)/L - 1/2 on [beta, L)
  right.c0 = -(beta / domain) - Scalar::parse("0.5", bits);
  left.c0 = right.c0 + 1;
  if (beta.is_zero()) return PiecewiseSmoothFn(domain, domain, {beta}, {right});
  return PiecewiseSmoothFn(domain, domain, {Scalar::zero(bits), beta}, {left, right});
}

PiecewiseSmoothFn PiecewiseSmoothFn::indicator(const Scalar& domain, const Scalar& u, const Scalar& v,
                                               const Scalar& height) {
  if (u.sign() < 0 || !(u < v) || v > domain) throw Error(ErrorKind::InvalidArgument, "indicator needs 0 <= u < v <= L");
  const int bits = domain.bits();
  TrigAffine z = zero_desc(bits), h = zero_desc(bits);
  h.c0 = height;
  std::vector<Scalar> bp;
  std::vector<TrigAffine> pc;
  if (u.is_zero()) {
    bp.push_back(Scalar::zero(bits));
    pc.push_back(h);
  } else {
    bp.push_back(Scalar::zero(bits));
    pc.push_back(z);
    bp.push_back(u);
    pc.push_back(h);
  }
  if (v < domain) {
    bp.push_back(v);
    pc.push_back(z);
  }
  return PiecewiseSmoothFn(domain, domain, std::move(bp), std::move(pc));
}

int PiecewiseSmoothFn::max_mode() const {
  int m = 0;
  for (auto& d : pieces_) m = std::max(m, d.modes());
  return m;
}

int PiecewiseSmoothFn::piece_index(const Scalar& x) const {
  // last j with bp_[j] <= x
  auto it = std::upper_bound(bp_.begin(), bp_.end(), x,
                             [](const Scalar& v, const Scalar& b) { return mpfr_less_p(v.raw(), b.raw()); });
  return std::max(0, static_cast<int>(it - bp_.begin()) - 1);
}

int PiecewiseSmoothFn::piece_index_left(const Scalar& y) const {
  // last j with bp_[j] < y
  auto it = std::lower_bound(bp_.begin(), bp_.end(), y,
                             [](const Scalar& b, const Scalar& v) { return mpfr_less_p(b.raw(), v.raw()); });
  return std::max(0, static_cast<int>(it - bp_.begin()) - 1);
}

const Scalar& PiecewiseSmoothFn::piece_end(int j) const {
  return (j + 1 < static_cast<int>(bp_.size())) ? bp_[j + 1] : domain_;
}

Scalar PiecewiseSmoothFn::piece_eval(int j, const Scalar& x) const { return desc_value(pieces_[j], x, period_); }

Scalar PiecewiseSmoothFn::eval(const Scalar& x) const {
  if (x.sign() < 0 || !(x < domain_)) throw Error(ErrorKind::OutOfDomain, "fn_eval outside [0, L)");
  return piece_eval(piece_index(x), x);
}

Scalar PiecewiseSmoothFn::eval_left(const Scalar& y) const {
  if (!(y > 0) || y > domain_) throw Error(ErrorKind::OutOfDomain, "left limit outside (0, L]");
  return piece_eval(piece_index_left(y), y);
}

std::vector<Scalar> PiecewiseSmoothFn::jump_values() const {
  std::vector<Scalar> out;
  const int k = static_cast<int>(bp_.size());
  for (int j = 0; j < k; ++j) {
    Scalar right = piece_eval(j, bp_[j]);
    Scalar left = (j == 0) ? piece_eval(k - 1, domain_) : piece_eval(j - 1, bp_[j]);
    out.push_back(right - left);
  }
  return out;
}

Scalar fn_eval(const PiecewiseSmoothFn& f, const Scalar& x) { return f.eval(x); }

PiecewiseSmoothFn fn_derivative(const PiecewiseSmoothFn& f) {
  std::vector<TrigAffine> pc;
  for (auto& d : f.pieces()) pc.push_back(desc_derivative(d, f.period()));
  return PiecewiseSmoothFn(f.domain(), f.period(), f.breakpoints(), std::move(pc));
}

Scalar fn_integral_over(const PiecewiseSmoothFn& f, const Scalar& u, const Scalar& v) {
  if (u.sign() < 0 || v > f.domain() || v < u) throw Error(ErrorKind::OutOfDomain, "integration range outside domain");
  Scalar total = Scalar::zero(f.bits());
  const int k = static_cast<int>(f.breakpoints().size());
  for (int j = f.piece_index(u); j < k; ++j) {
    const Scalar& s = f.breakpoints()[j];
    if (!(s < v)) break;
    const Scalar& lo = max(s, u);
    const Scalar& hi = min(f.piece_end(j), v);
    if (lo < hi) total += desc_integral(f.pieces()[j], lo, hi, f.period());
  }
  return total;
}

Scalar fn_integral(const PiecewiseSmoothFn& f) {
  return fn_integral_over(f, Scalar::zero(f.bits()), f.domain());
}

Scalar fn_integral_arc(const PiecewiseSmoothFn& f, const Scalar& s, const Scalar& len) {
  const Scalar& L = f.domain();
  Scalar a = mod(s, L);
  Scalar b = a + len;
  if (!(b > L)) return fn_integral_over(f, a, b);
  return fn_integral_over(f, a, L) + fn_integral_over(f, Scalar::zero(f.bits()), b - L);
}

Scalar fn_variation(const PiecewiseSmoothFn& f) {
  Scalar v = Scalar::zero(f.bits());
  const int k = static_cast<int>(f.breakpoints().size());
  for (int j = 0; j < k; ++j) v += desc_variation(f.pieces()[j], f.breakpoints()[j], f.piece_end(j), f.period());
  for (auto& a : f.jump_values()) v += abs(a);
  return v;
}

Scalar fn_jump_sum(const PiecewiseSmoothFn& f) {
  Scalar s = Scalar::zero(f.bits());
  for (auto& a : f.jump_values()) s += a;
  return s;
}

namespace {

void require_compatible(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g) {
  if (!(f.domain() == g.domain()) || !(f.period() == g.period()))
    throw Error(ErrorKind::InvalidArgument, "cocycles differ in domain or period");
}

// merged breakpoints, collapsing points closer than the rounding tolerance
std::vector<Scalar> merge_breakpoints(const std::vector<Scalar>& x, const std::vector<Scalar>& y, const Scalar& L) {
  std::vector<Scalar> all(x);
  all.insert(all.end(), y.begin(), y.end());
  std::sort(all.begin(), all.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
  Scalar eps = snap_eps(L);
  std::vector<Scalar> out;
  for (auto& b : all) {
    if (out.empty() || (b - out.back()) > eps) out.push_back(b);
  }
  return out;
}

}  // namespace

PiecewiseSmoothFn operator+(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g) {
  require_compatible(f, g);
  std::vector<Scalar> bp = merge_breakpoints(f.breakpoints(), g.breakpoints(), f.domain());
  std::vector<TrigAffine> pc;
  for (std::size_t j = 0; j < bp.size(); ++j) {
    const Scalar& end = (j + 1 < bp.size()) ? bp[j + 1] : f.domain();
    Scalar mid = (bp[j] + end) / 2;
    pc.push_back(desc_add(f.pieces()[f.piece_index(mid)], g.pieces()[g.piece_index(mid)]));
  }
  return PiecewiseSmoothFn(f.domain(), f.period(), std::move(bp), std::move(pc));
}

PiecewiseSmoothFn operator*(const Scalar& c, const PiecewiseSmoothFn& f) {
  std::vector<TrigAffine> pc;
  for (auto& d : f.pieces()) pc.push_back(desc_scale(d, c));
  return PiecewiseSmoothFn(f.domain(), f.period(), f.breakpoints(), std::move(pc));
}

PiecewiseSmoothFn operator-(const PiecewiseSmoothFn& f) { return Scalar::from_int(-1, f.bits()) * f; }

PiecewiseSmoothFn operator-(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g) { return f + (-g); }

PiecewiseSmoothFn compose_translation(const PiecewiseSmoothFn& f, const std::vector<Segment>& segs,
                                      const Scalar& new_domain) {
  const int bits = f.bits();
  Scalar eps = snap_eps(f.domain());
  std::vector<Scalar> bp;
  std::vector<TrigAffine> pc;
  auto push = [&](const Scalar& at, TrigAffine d) {
    // a later entry at (numerically) the same place wins
    while (!bp.empty() && !((at - bp.back()) > eps)) {
      bp.pop_back();
      pc.pop_back();
    }
    bp.push_back(at);
    pc.push_back(std::move(d));
  };
  std::vector<Segment> sorted(segs);
  std::sort(sorted.begin(), sorted.end(), [](const Segment& a, const Segment& b) { return a.start < b.start; });
  Scalar cursor = Scalar::zero(bits);
  for (const Segment& s : sorted) {
    if (s.start.sign() < 0 || !(s.start < s.end) || s.end > new_domain)
      throw Error(ErrorKind::InvalidArgument, "segment outside the new domain");
    if (s.start < cursor) throw Error(ErrorKind::InvalidArgument, "segments overlap");
    if (s.start > cursor) push(cursor, zero_desc(bits));
    Scalar lo = s.start + s.shift, hi = s.end + s.shift;
    if (lo < -eps || hi > f.domain() + eps) throw Error(ErrorKind::OutOfDomain, "segment image outside the domain of f");
    Scalar lo_c = lo.sign() < 0 ? Scalar::zero(bits) : lo;
    int j = f.piece_index(lo_c);
    // start of the next piece within rounding distance: begin there
    while (j + 1 < static_cast<int>(f.breakpoints().size()) && !((f.breakpoints()[j + 1] - lo_c) > eps)) ++j;
    push(s.start, desc_shift(f.pieces()[j], s.shift, f.period()));
    for (int i = j + 1; i < static_cast<int>(f.breakpoints().size()); ++i) {
      const Scalar& b = f.breakpoints()[i];
      if (!((hi - b) > eps)) break;
      push(b - s.shift, desc_shift(f.pieces()[i], s.shift, f.period()));
    }
    cursor = s.end;
  }
  if (cursor < new_domain && (new_domain - cursor) > eps) push(cursor, zero_desc(bits));
  if (bp.empty()) {
    bp.push_back(Scalar::zero(bits));
    pc.push_back(zero_desc(bits));
  }
  bp[0] = Scalar::zero(bits);
  return PiecewiseSmoothFn(new_domain, f.period(), std::move(bp), std::move(pc));
}

PiecewiseSmoothFn compose_rotation(const PiecewiseSmoothFn& g, const Rotation& r) {
  if (!(g.domain() == r.modulus())) throw Error(ErrorKind::InvalidArgument, "rotation and cocycle domains differ");
  const Scalar& L = r.modulus();
  Scalar cut = L - r.angle();
  return compose_translation(g, {{Scalar::zero(g.bits()), cut, r.angle()}, {cut, L, r.angle() - L}}, L);
}

PiecewiseSmoothFn compose_inverse(const PiecewiseSmoothFn& f, const Iet3& t) {
  if (!(f.domain() == t.total())) throw Error(ErrorKind::InvalidArgument, "IET and cocycle domains differ");
  Scalar c = t.lambda_c(), cb = t.lambda_c() + t.lambda_b();
  auto sh = t.translations();
  return compose_translation(f,
                             {{Scalar::zero(f.bits()), c, -sh[2]}, {c, cb, -sh[1]}, {cb, t.total(), -sh[0]}},
                             t.total());
}

PiecewiseSmoothFn mirror(const PiecewiseSmoothFn& f) {
  const Scalar& L = f.domain();
  const int k = static_cast<int>(f.breakpoints().size());
  std::vector<Scalar> bp{Scalar::zero(f.bits())};
  std::vector<TrigAffine> pc{desc_mirror(f.pieces()[k - 1], L, f.period())};
  for (int j = k - 1; j >= 1; --j) {
    bp.push_back(L - f.breakpoints()[j]);
    pc.push_back(desc_mirror(f.pieces()[j - 1], L, f.period()));
  }
  return PiecewiseSmoothFn(L, f.period(), std::move(bp), std::move(pc));
}

PiecewiseSmoothFn restrict_to(const PiecewiseSmoothFn& f, const Scalar& new_domain) {
  if (!(new_domain > 0) || new_domain > f.domain()) throw Error(ErrorKind::InvalidArgument, "restriction must shrink the domain");
  std::vector<Scalar> bp;
  std::vector<TrigAffine> pc;
  for (std::size_t j = 0; j < f.breakpoints().size(); ++j) {
    if (!(f.breakpoints()[j] < new_domain)) break;
    bp.push_back(f.breakpoints()[j]);
    pc.push_back(f.pieces()[j]);
  }
  return PiecewiseSmoothFn(new_domain, f.period(), std::move(bp), std::move(pc));
}

PiecewiseSmoothFn simplify(const PiecewiseSmoothFn& f, const Scalar& tol) {
  auto close = [&](const TrigAffine& x, const TrigAffine& y) {
    TrigAffine d = desc_add(x, desc_scale(y, Scalar::from_int(-1, x.c0.bits())));
    if (abs(d.c0) > tol || abs(d.c1) > tol) return false;
    for (int m = 0; m < d.modes(); ++m)
      if (abs(d.a[m]) > tol || abs(d.b[m]) > tol) return false;
    return true;
  };
  std::vector<Scalar> bp{f.breakpoints()[0]};
  std::vector<TrigAffine> pc{f.pieces()[0]};
  for (std::size_t j = 1; j < f.breakpoints().size(); ++j) {
    if (close(pc.back(), f.pieces()[j])) continue;
    bp.push_back(f.breakpoints()[j]);
    pc.push_back(f.pieces()[j]);
  }
  return PiecewiseSmoothFn(f.domain(), f.period(), std::move(bp), std::move(pc));
}

bool is_pure_trig(const PiecewiseSmoothFn& f) {
  return f.pieces().size() == 1 && f.pieces()[0].c1.is_zero() && f.period() == f.domain();
}

}  // namespace ietlab
