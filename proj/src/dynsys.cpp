#include "ietlab/dynsys.hpp"

#include <algorithm>
#include <sstream>

#include "ietlab/error.hpp"

namespace ietlab {

Iet3::Iet3(Scalar la, Scalar lb, Scalar lc)
    : la_(std::move(la)), lb_(std::move(lb)), lc_(std::move(lc)) {
  if (!(la_ > 0) || !(lb_ > 0) || !(lc_ > 0))
    throw Error(ErrorKind::InvalidArgument, "3-IET lengths must be positive");
  total_ = la_ + lb_ + lc_;
  xi1_ = la_;
  xi2_ = la_ + lb_;
  img1_ = lc_;
  img2_ = lc_ + lb_;
  shift_[0] = lb_ + lc_;
  shift_[1] = lc_ - la_;
  shift_[2] = -(la_ + lb_);
}

Iet3 Iet3::normalized() const { return Iet3(la_ / total_, lb_ / total_, lc_ / total_); }

int Iet3::piece(const Scalar& x) const {
  if (x < xi1_) return 0;
  if (x < xi2_) return 1;
  return 2;
}

Scalar Iet3::apply(const Scalar& x) const {
  if (x.sign() < 0 || !(x < total_)) throw Error(ErrorKind::OutOfDomain, "iet_apply outside [0,total)");
  Scalar y(x);
  step(y);
  return y;
}

Scalar Iet3::inverse(const Scalar& y) const {
  if (y.sign() < 0 || !(y < total_)) throw Error(ErrorKind::OutOfDomain, "iet_inverse outside [0,total)");
  Scalar x(y);
  step_inverse(x);
  return x;
}

int Iet3::step(Scalar& x) const {
  int b = mpfr_less_p(x.raw(), xi1_.raw()) ? 0 : (mpfr_less_p(x.raw(), xi2_.raw()) ? 1 : 2);
  mpfr_add(x.raw(), x.raw(), shift_[b].raw(), MPFR_RNDN);
  return b;
}

int Iet3::step_inverse(Scalar& y) const {
  // image order is C, B, A
  int b = mpfr_less_p(y.raw(), img1_.raw()) ? 2 : (mpfr_less_p(y.raw(), img2_.raw()) ? 1 : 0);
  mpfr_sub(y.raw(), y.raw(), shift_[b].raw(), MPFR_RNDN);
  return b;
}

int Iet3::step_left(Scalar& y) const {
  int b = mpfr_lessequal_p(y.raw(), xi1_.raw()) ? 0 : (mpfr_lessequal_p(y.raw(), xi2_.raw()) ? 1 : 2);
  mpfr_add(y.raw(), y.raw(), shift_[b].raw(), MPFR_RNDN);
  return b;
}

std::string Iet3::describe() const {
  std::ostringstream os;
  os << "iet3(" << la_.to_string(12) << "," << lb_.to_string(12) << "," << lc_.to_string(12) << ")";
  return os.str();
}

Rotation::Rotation(Scalar modulus, Scalar angle) : modulus_(std::move(modulus)), angle_(std::move(angle)) {
  if (!(modulus_ > 0)) throw Error(ErrorKind::InvalidArgument, "rotation modulus must be positive");
  if (!(angle_ > 0) || !(angle_ < modulus_))
    throw Error(ErrorKind::InvalidArgument, "rotation angle must lie in (0, modulus)");
  wrap_ = angle_ - modulus_;
}

Scalar Rotation::apply(const Scalar& x) const {
  if (x.sign() < 0 || !(x < modulus_)) throw Error(ErrorKind::OutOfDomain, "rotation apply outside [0,modulus)");
  Scalar y(x);
  step(y);
  return y;
}

Scalar Rotation::inverse(const Scalar& y) const {
  if (y.sign() < 0 || !(y < modulus_)) throw Error(ErrorKind::OutOfDomain, "rotation inverse outside [0,modulus)");
  Scalar x(y);
  step_inverse(x);
  return x;
}

Scalar Rotation::power(const Scalar& x, long j) const {
  const int wide = bits() + 80;
  Scalar t = angle_.with_bits(wide);
  t *= j;
  t += x.with_bits(wide);
  Scalar r = mod(t, modulus_.with_bits(wide)).with_bits(x.bits());
  // rounding to the working precision can land on the modulus itself
  if (!(r < modulus_)) r -= modulus_;
  return r;
}

int Rotation::step(Scalar& x) const {
  mpfr_add(x.raw(), x.raw(), angle_.raw(), MPFR_RNDN);
  if (mpfr_greaterequal_p(x.raw(), modulus_.raw())) {
    mpfr_sub(x.raw(), x.raw(), modulus_.raw(), MPFR_RNDN);
    return 1;
  }
  return 0;
}

int Rotation::step_inverse(Scalar& y) const {
  mpfr_sub(y.raw(), y.raw(), angle_.raw(), MPFR_RNDN);
  if (mpfr_sgn(y.raw()) < 0) {
    mpfr_add(y.raw(), y.raw(), modulus_.raw(), MPFR_RNDN);
    return 1;
  }
  return 0;
}

int Rotation::step_left(Scalar& y) const {
  mpfr_add(y.raw(), y.raw(), angle_.raw(), MPFR_RNDN);
  if (mpfr_greater_p(y.raw(), modulus_.raw())) {
    mpfr_sub(y.raw(), y.raw(), modulus_.raw(), MPFR_RNDN);
    return 1;
  }
  return 0;
}

Scalar Rotation::circle_delta(const Scalar& a, const Scalar& b) const {
  Scalar d = mod(b - a, modulus_);
  Scalar half = modulus_ / 2;
  if (!(d < half)) d -= modulus_;
  return d;
}

std::string Rotation::describe() const {
  std::ostringstream os;
  os << "rotation(" << angle_.to_string(12) << " mod " << modulus_.to_string(12) << ")";
  return os.str();
}

const Scalar& domain_length(const Map& m) {
  return std::visit(
      [](const auto& t) -> const Scalar& {
        if constexpr (std::is_same_v<std::decay_t<decltype(t)>, Iet3>) return t.total();
        else return t.modulus();
      },
      m);
}

Scalar map_apply(const Map& m, const Scalar& x) {
  return std::visit([&](const auto& t) { return t.apply(x); }, m);
}

Scalar map_inverse(const Map& m, const Scalar& y) {
  return std::visit([&](const auto& t) { return t.inverse(y); }, m);
}

std::string describe(const Map& m) {
  return std::visit([](const auto& t) { return t.describe(); }, m);
}

OrbitSample orbit(const Map& m, const Scalar& x, long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "orbit length must be >= 1");
  const Scalar& L = domain_length(m);
  if (x.sign() < 0 || !(x < L)) throw Error(ErrorKind::OutOfDomain, "orbit start outside domain");
  OrbitSample s;
  s.start = x;
  s.map_id = describe(m);
  s.points.reserve(static_cast<std::size_t>(n) + 1);
  s.points.push_back(x);
  Scalar y(x);
  for (long i = 0; i < n; ++i) {
    std::visit([&](const auto& t) { t.step(y); }, m);
    s.points.push_back(y);
  }
  return s;
}

std::vector<Scalar> discontinuities(const Iet3& t) {
  return {Scalar::zero(t.bits()), t.lambda_a(), t.lambda_a() + t.lambda_b()};
}

KeaneReport keane_check(const Iet3& t, long horizon, const Scalar& tol) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be >= 1");
  KeaneReport rep;
  rep.horizon = horizon;
  rep.tol = tol;
  const std::array<Scalar, 2> xi{t.lambda_a(), t.lambda_a() + t.lambda_b()};
  bool first = true;
  Scalar d = Scalar::zero(t.bits());
  for (int b = 0; b < 2; ++b) {
    Scalar y = xi[b];
    for (long m = 1; m <= horizon; ++m) {
      t.step(y);
      for (int g = 0; g < 2; ++g) {
        mpfr_sub(d.raw(), y.raw(), xi[g].raw(), MPFR_RNDN);
        mpfr_abs(d.raw(), d.raw(), MPFR_RNDN);
        if (first || d < rep.minimum) {
          rep.minimum = d;
          rep.m = m;
          rep.beta = b;
          rep.gamma = g;
          first = false;
        }
      }
    }
  }
  rep.holds = rep.minimum > tol;
  return rep;
}

Iet3 reflect(const Iet3& t) { return Iet3(t.lambda_c(), t.lambda_b(), t.lambda_a()); }

Scalar star_discrepancy(std::vector<Scalar> pts, const Scalar& length) {
  std::sort(pts.begin(), pts.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
  const long n = static_cast<long>(pts.size());
  Scalar worst = Scalar::zero(length.bits());
  for (long i = 0; i < n; ++i) {
    Scalar u = pts[i] / length;
    Scalar hi = Scalar::from_int(i + 1, length.bits()) / n - u;
    Scalar lo = u - Scalar::from_int(i, length.bits()) / n;
    worst = max(worst, max(hi, lo));
  }
  return worst;
}

}  // namespace ietlab
