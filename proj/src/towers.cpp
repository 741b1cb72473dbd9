#include "ietlab/towers.hpp"

#include "ietlab/error.hpp"

namespace ietlab {

const char* to_string(TowerKind k) { return k == TowerKind::Small ? "small" : "large"; }

namespace {

long height_of(const mpz_class& h) {
  if (!h.fits_slong_p()) throw Error(ErrorKind::OrbitBudgetExceeded, "tower height does not fit a long");
  return h.get_si();
}

void check_scale(const ContinuedFraction& cf, int n) {
  if (n < 0 || n + 1 > cf.depth())
    throw Error(ErrorKind::IndexOutOfRange, "tower scale " + std::to_string(n) + " needs q_" + std::to_string(n + 1));
}

}  // namespace

bool arc_contains(const Arc& a, const Scalar& x) {
  Scalar off = x - a.start;
  if (off.sign() < 0) off += 1;
  if (!(off < 1)) off -= 1;
  return off < a.width;
}

Rotation RokhlinTower::rotation() const { return Rotation(Scalar::from_int(1, alpha.bits()), alpha); }

Scalar RokhlinTower::measure() const {
  return base_small.width * h_small + base_large.width * h_large;
}

Arc RokhlinTower::level(TowerKind which, long j) const {
  const Arc& b = which == TowerKind::Small ? base_small : base_large;
  const mpz_class& h = which == TowerKind::Small ? h_small : h_large;
  if (j < 0 || j >= h) throw Error(ErrorKind::IndexOutOfRange, "level " + std::to_string(j) + " above the tower");
  return Arc{rotation().power(b.start, j), b.width};
}

RokhlinTower build_tower(const ContinuedFraction& cf, int n, const Scalar& z) {
  check_scale(cf, n);
  if (z.sign() < 0 || !(z < 1)) throw Error(ErrorKind::OutOfDomain, "tower shift outside [0, 1)");
  RokhlinTower t;
  t.n = n;
  t.sign = cf.sigma(n);
  t.z = z;
  t.alpha = cf.value();
  Scalar l = cf.qnorm(n), w = cf.qnorm(n + 1);
  Scalar one = Scalar::from_int(1, z.bits());
  if (t.sign > 0) {
    t.base_large = {z, l};
    t.base_small = {mod(z - w, one), w};
  } else {
    t.base_large = {mod(z - l, one), l};
    t.base_small = {z, w};
  }
  t.h_small = cf.q(n);
  t.h_large = cf.q(n + 1);
  return t;
}

RokhlinTower balanced_tower(const ContinuedFraction& cf, int n) {
  check_scale(cf, n);
  RokhlinTower t;
  t.n = n;
  t.sign = cf.sigma(n);
  t.alpha = cf.value();
  Scalar l = cf.qnorm(n), w = cf.qnorm(n + 1);
  t.z = w;
  t.base_small = {Scalar::zero(cf.bits()), w};
  t.base_large = {w, l};
  t.h_small = cf.q(n);
  t.h_large = cf.q(n + 1);
  t.partition = t.sign > 0;
  return t;
}

std::optional<Location> locate(const RokhlinTower& t, const Scalar& x) {
  if (x.sign() < 0 || !(x < 1)) throw Error(ErrorKind::OutOfDomain, "locate needs 0 <= x < 1");
  const long hl = height_of(t.h_large), hs = height_of(t.h_small);
  const long top = hl > hs ? hl : hs;
  Rotation r = t.rotation();
  Scalar y = x;
  for (long j = 0; j < top; ++j) {
    if (j < hl && arc_contains(t.base_large, y)) return Location{TowerKind::Large, j, mod(y - t.base_large.start, Scalar::from_int(1, y.bits()))};
    if (j < hs && arc_contains(t.base_small, y)) return Location{TowerKind::Small, j, mod(y - t.base_small.start, Scalar::from_int(1, y.bits()))};
    r.step_inverse(y);
  }
  if (t.partition)
    throw Error(ErrorKind::PrecisionExhausted, "point fell between tower levels at scale " + std::to_string(t.n));
  return std::nullopt;
}

BalancedReport balanced_report(const ContinuedFraction& cf, const Scalar& z, const Scalar& delta,
                               const std::vector<int>& scales) {
  if (!(delta > 0) || !(delta < 1)) throw Error(ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
  BalancedReport rep;
  rep.delta = delta;
  for (int k : scales) {
    RokhlinTower t = balanced_tower(cf, k);
    BalancedScale s;
    s.k = k;
    s.w = t.base_small.width;
    s.b = t.base_small.width + t.base_large.width;
    const long hl = height_of(t.h_large);
    Rotation r = t.rotation();
    Scalar y = z;
    for (long j = 0; j < hl; ++j) {
      if (!(y < s.w) && y < s.b) {
        s.m = j;
        s.offset = y;
        break;
      }
      r.step_inverse(y);
    }
    if (s.m < 0) {
      s.in_small = true;
      s.offset = Scalar::zero(z.bits());
      s.epsilon = Scalar::from_int(-1, z.bits());  // flagged, not a distance
    } else {
      s.epsilon = abs(s.offset / s.b - delta);
    }
    rep.scales.push_back(std::move(s));
  }
  return rep;
}

Scalar construct_balanced_beta(const ContinuedFraction& cf, const Scalar& delta, int k, long m) {
  check_scale(cf, k);
  if (m < 0 || m >= cf.q(k + 1))
    throw Error(ErrorKind::IndexOutOfRange, "m must lie in [0, q_" + std::to_string(k + 1) + ")");
  Scalar l = cf.qnorm(k), w = cf.qnorm(k + 1);
  Scalar b = l + w;
  Scalar target = delta * b;
  if (!(target > w) || !(target < b))
    throw Error(ErrorKind::TargetOutsideLargeBase,
                "delta*b_k = " + target.to_string(10) + " not inside [" + w.to_string(10) + ", " + b.to_string(10) + ")");
  Rotation r(Scalar::from_int(1, cf.bits()), cf.value());
  return r.power(target, m);
}

}  // namespace ietlab
