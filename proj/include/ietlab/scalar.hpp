#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>

namespace ietlab {

// Default working precision in bits. Initialised from IETLAB_BITS, else 256.
int default_bits();
void set_default_bits(int bits);

// Number of operations that combined operands of different precision.
std::uint64_t precision_mix_count();
void reset_precision_mix_count();

// Real number carried at an explicit binary precision (MPFR, round to nearest).
// Binary operations return the smaller of the two precisions.
class Scalar {
 public:
  Scalar() : Scalar(default_bits()) {}
  ~Scalar() { mpfr_clear(v_); }

  Scalar(const Scalar& o);
  Scalar(Scalar&& o) noexcept;
  Scalar& operator=(const Scalar& o);
  Scalar& operator=(Scalar&& o) noexcept;

  static Scalar zero(int bits = default_bits()) { return Scalar(bits); }
  static Scalar from_int(long v, int bits = default_bits());
  static Scalar from_double(double v, int bits = default_bits());
  static Scalar from_mpz(const mpz_class& v, int bits = default_bits());
  static Scalar from_ratio(const mpz_class& p, const mpz_class& q, int bits = default_bits());
  // decimal string, e.g. "0.3" or "-1.25e-4"; throws InvalidArgument on junk
  static Scalar parse(std::string_view text, int bits = default_bits());
  static Scalar pi(int bits = default_bits());
  // uniform in [0,1) with `bits` random bits
  static Scalar random_unit(std::mt19937_64& rng, int bits = default_bits());

  int bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
  // same value rounded to a new precision
  Scalar with_bits(int bits) const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long_floor() const;
  mpz_class floor_mpz() const;
  // shortest decimal string that rounds back to the same value at bits()
  std::string to_string() const;
  std::string to_string(int digits) const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar& operator+=(long o);
  Scalar& operator-=(long o);
  Scalar& operator*=(long o);
  Scalar& operator/=(long o);
  Scalar operator-() const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  explicit Scalar(int bits);
  mpfr_t v_;
};

Scalar operator+(const Scalar& a, const Scalar& b);
Scalar operator-(const Scalar& a, const Scalar& b);
Scalar operator*(const Scalar& a, const Scalar& b);
Scalar operator/(const Scalar& a, const Scalar& b);
Scalar operator+(const Scalar& a, long b);
Scalar operator-(const Scalar& a, long b);
Scalar operator*(const Scalar& a, long b);
Scalar operator/(const Scalar& a, long b);
Scalar operator+(long a, const Scalar& b);
Scalar operator-(long a, const Scalar& b);
Scalar operator*(long a, const Scalar& b);
Scalar operator/(long a, const Scalar& b);
Scalar operator*(const Scalar& a, const mpz_class& b);

bool operator==(const Scalar& a, const Scalar& b);
std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);
bool operator==(const Scalar& a, long b);
std::partial_ordering operator<=>(const Scalar& a, long b);

Scalar abs(const Scalar& x);
Scalar sqrt(const Scalar& x);
Scalar sin(const Scalar& x);
Scalar cos(const Scalar& x);
Scalar exp(const Scalar& x);
Scalar log(const Scalar& x);
Scalar pow(const Scalar& x, const Scalar& y);
Scalar floor(const Scalar& x);
// x - floor(x), in [0,1)
Scalar frac(const Scalar& x);
// x reduced into [0, m)
Scalar mod(const Scalar& x, const Scalar& m);
const Scalar& min(const Scalar& a, const Scalar& b);
const Scalar& max(const Scalar& a, const Scalar& b);
// 2^e at the given precision
Scalar ldexp_one(long e, int bits = default_bits());

std::ostream& operator<<(std::ostream& os, const Scalar& x);

namespace literals {
// "0.3"_r at the default precision
inline Scalar operator""_r(const char* s, std::size_t n) {
  return Scalar::parse(std::string_view(s, n));
}
}  // namespace literals

}  // namespace ietlab
