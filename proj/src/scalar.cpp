#include "ietlab/scalar.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>

#include "ietlab/error.hpp"

namespace ietlab {

namespace {

int initial_default_bits() {
  if (const char* env = std::getenv("IETLAB_BITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 64 && v <= (1L << 20)) return static_cast<int>(v);
  }
  return 256;
}

std::atomic<int> g_default_bits{initial_default_bits()};
std::atomic<std::uint64_t> g_mix_count{0};

inline mpfr_prec_t joint(mpfr_srcptr a, mpfr_srcptr b) {
  mpfr_prec_t pa = mpfr_get_prec(a), pb = mpfr_get_prec(b);
  if (pa != pb) {
    g_mix_count.fetch_add(1, std::memory_order_relaxed);
    return pa < pb ? pa : pb;
  }
  return pa;
}

}  // namespace

int default_bits() { return g_default_bits.load(std::memory_order_relaxed); }

void set_default_bits(int bits) {
  if (bits < 16) throw Error(ErrorKind::InvalidArgument, "precision below 16 bits");
  g_default_bits.store(bits, std::memory_order_relaxed);
}

std::uint64_t precision_mix_count() { return g_mix_count.load(); }
void reset_precision_mix_count() { g_mix_count.store(0); }

Scalar::Scalar(int bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Scalar::Scalar(const Scalar& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Scalar::Scalar(Scalar&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

Scalar& Scalar::operator=(const Scalar& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Scalar& Scalar::operator=(Scalar&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Scalar Scalar::from_int(long v, int bits) {
  Scalar r(bits);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

Scalar Scalar::from_double(double v, int bits) {
  Scalar r(bits);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  return r;
}

Scalar Scalar::from_mpz(const mpz_class& v, int bits) {
  Scalar r(bits);
  mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
  return r;
}

Scalar Scalar::from_ratio(const mpz_class& p, const mpz_class& q, int bits) {
  if (q == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  Scalar r(bits);
  mpq_class ratio(p, q);
  ratio.canonicalize();
  mpfr_set_q(r.v_, ratio.get_mpq_t(), MPFR_RNDN);
  return r;
}

Scalar Scalar::parse(std::string_view text, int bits) {
  std::string s(text);
  Scalar r(bits);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end == s.c_str() || *end != '\0')
    throw Error(ErrorKind::InvalidArgument, "not a decimal number: '" + s + "'");
  return r;
}

Scalar Scalar::pi(int bits) {
  Scalar r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Scalar Scalar::random_unit(std::mt19937_64& rng, int bits) {
  mpz_class acc = 0;
  int have = 0;
  while (have < bits) {
    acc <<= 64;
    acc += mpz_class(static_cast<unsigned long>(rng()));
    have += 64;
  }
  acc >>= (have - bits);
  Scalar r(bits);
  mpfr_set_z(r.v_, acc.get_mpz_t(), MPFR_RNDN);
  mpfr_div_2ui(r.v_, r.v_, static_cast<unsigned long>(bits), MPFR_RNDN);
  return r;
}

Scalar Scalar::with_bits(int bits) const {
  Scalar r(bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

long Scalar::to_long_floor() const { return mpfr_get_si(v_, MPFR_RNDD); }

mpz_class Scalar::floor_mpz() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

std::string Scalar::to_string() const {
  // digits enough for a round trip at this precision
  int digits = static_cast<int>(std::ceil(bits() * 0.30102999566398120)) + 2;
  return to_string(digits);
}

std::string Scalar::to_string(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  mpfr_prec_t p = joint(v_, o.v_);
  if (p != mpfr_get_prec(v_)) mpfr_prec_round(v_, p, MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Scalar& Scalar::operator-=(const Scalar& o) {
  mpfr_prec_t p = joint(v_, o.v_);
  if (p != mpfr_get_prec(v_)) mpfr_prec_round(v_, p, MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Scalar& Scalar::operator*=(const Scalar& o) {
  mpfr_prec_t p = joint(v_, o.v_);
  if (p != mpfr_get_prec(v_)) mpfr_prec_round(v_, p, MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Scalar& Scalar::operator/=(const Scalar& o) {
  mpfr_prec_t p = joint(v_, o.v_);
  if (p != mpfr_get_prec(v_)) mpfr_prec_round(v_, p, MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Scalar& Scalar::operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
Scalar& Scalar::operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
Scalar& Scalar::operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
Scalar& Scalar::operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

Scalar Scalar::operator-() const {
  Scalar r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

#define IETLAB_BINOP(OP, FN)                                    \
  Scalar operator OP(const Scalar& a, const Scalar& b) {        \
    Scalar r = Scalar::zero(static_cast<int>(joint(a.raw(), b.raw()))); \
    FN(r.raw(), a.raw(), b.raw(), MPFR_RNDN);                   \
    return r;                                                   \
  }
IETLAB_BINOP(+, mpfr_add)
IETLAB_BINOP(-, mpfr_sub)
IETLAB_BINOP(*, mpfr_mul)
IETLAB_BINOP(/, mpfr_div)
#undef IETLAB_BINOP

Scalar operator+(const Scalar& a, long b) { Scalar r(a); r += b; return r; }
Scalar operator-(const Scalar& a, long b) { Scalar r(a); r -= b; return r; }
Scalar operator*(const Scalar& a, long b) { Scalar r(a); r *= b; return r; }
Scalar operator/(const Scalar& a, long b) { Scalar r(a); r /= b; return r; }
Scalar operator+(long a, const Scalar& b) { Scalar r(b); r += a; return r; }
Scalar operator-(long a, const Scalar& b) {
  Scalar r = Scalar::zero(b.bits());
  mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}
Scalar operator*(long a, const Scalar& b) { Scalar r(b); r *= a; return r; }
Scalar operator/(long a, const Scalar& b) {
  Scalar r = Scalar::zero(b.bits());
  mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}
Scalar operator*(const Scalar& a, const mpz_class& b) {
  Scalar r = Scalar::zero(a.bits());
  mpfr_mul_z(r.raw(), a.raw(), b.get_mpz_t(), MPFR_RNDN);
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (mpfr_unordered_p(a.raw(), b.raw())) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.raw(), b.raw());
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const Scalar& a, long b) { return !mpfr_nan_p(a.raw()) && mpfr_cmp_si(a.raw(), b) == 0; }

std::partial_ordering operator<=>(const Scalar& a, long b) {
  if (mpfr_nan_p(a.raw())) return std::partial_ordering::unordered;
  int c = mpfr_cmp_si(a.raw(), b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define IETLAB_UNARY(NAME, FN)             \
  Scalar NAME(const Scalar& x) {           \
    Scalar r = Scalar::zero(x.bits());     \
    FN(r.raw(), x.raw(), MPFR_RNDN);       \
    return r;                              \
  }
IETLAB_UNARY(abs, mpfr_abs)
IETLAB_UNARY(sqrt, mpfr_sqrt)
IETLAB_UNARY(sin, mpfr_sin)
IETLAB_UNARY(cos, mpfr_cos)
IETLAB_UNARY(exp, mpfr_exp)
IETLAB_UNARY(log, mpfr_log)
#undef IETLAB_UNARY

Scalar pow(const Scalar& x, const Scalar& y) {
  Scalar r = Scalar::zero(static_cast<int>(joint(x.raw(), y.raw())));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Scalar floor(const Scalar& x) {
  Scalar r = Scalar::zero(x.bits());
  mpfr_floor(r.raw(), x.raw());
  return r;
}

Scalar frac(const Scalar& x) {
  Scalar r = Scalar::zero(x.bits());
  mpfr_floor(r.raw(), x.raw());
  mpfr_sub(r.raw(), x.raw(), r.raw(), MPFR_RNDN);
  return r;
}

Scalar mod(const Scalar& x, const Scalar& m) {
  Scalar r = Scalar::zero(static_cast<int>(joint(x.raw(), m.raw())));
  mpfr_fmod(r.raw(), x.raw(), m.raw(), MPFR_RNDN);
  if (r.sign() < 0) {
    mpfr_add(r.raw(), r.raw(), m.raw(), MPFR_RNDN);
    if (mpfr_cmp(r.raw(), m.raw()) >= 0) mpfr_set_zero(r.raw(), 1);
  }
  return r;
}

const Scalar& min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
const Scalar& max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

Scalar ldexp_one(long e, int bits) {
  Scalar r = Scalar::from_int(1, bits);
  mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(20); }

}  // namespace ietlab
