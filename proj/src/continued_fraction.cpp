#include "ietlab/continued_fraction.hpp"

#include <climits>
#include <numeric>
#include <sstream>

#include "ietlab/error.hpp"

namespace ietlab {

TailPolicy TailPolicy::periodic(std::vector<long> b) {
  if (b.empty()) throw Error(ErrorKind::InvalidArgument, "empty tail block");
  for (long v : b)
    if (v < 1) throw Error(ErrorKind::InvalidArgument, "tail quotients must be >= 1");
  return TailPolicy{std::move(b)};
}

std::string TailPolicy::describe() const {
  if (block == std::vector<long>{1}) return "golden";
  std::ostringstream os;
  os << "periodic(";
  for (std::size_t i = 0; i < block.size(); ++i) os << (i ? "," : "") << block[i];
  os << ")";
  return os.str();
}

ContinuedFraction::ContinuedFraction(std::vector<long> quotients, Scalar value,
                                     std::optional<TailPolicy> tail, int prefix_length)
    : a_(std::move(quotients)), value_(std::move(value)), tail_(std::move(tail)),
      prefix_length_(prefix_length) {
  if (a_.empty()) throw Error(ErrorKind::InvalidArgument, "no quotients");
  if (a_[0] < 0) throw Error(ErrorKind::InvalidArgument, "a_0 must be >= 0");
  for (std::size_t i = 1; i < a_.size(); ++i)
    if (a_[i] < 1) throw Error(ErrorKind::InvalidArgument, "a_i must be >= 1 for i >= 1");
  p_.resize(a_.size());
  q_.resize(a_.size());
  mpz_class pm1 = 1, qm1 = 0;  // p_{-1}, q_{-1}
  for (std::size_t n = 0; n < a_.size(); ++n) {
    mpz_class pm2 = n >= 2 ? p_[n - 2] : (n == 1 ? pm1 : mpz_class(0));
    mpz_class qm2 = n >= 2 ? q_[n - 2] : (n == 1 ? qm1 : mpz_class(1));
    if (n == 0) {
      p_[0] = a_[0];
      q_[0] = 1;
    } else {
      p_[n] = a_[n] * p_[n - 1] + pm2;
      q_[n] = a_[n] * q_[n - 1] + qm2;
    }
  }
}

long ContinuedFraction::a(int n) const {
  if (n < 0 || n > depth()) throw Error(ErrorKind::IndexOutOfRange, "quotient index " + std::to_string(n));
  return a_[n];
}

const mpz_class& ContinuedFraction::p(int n) const {
  if (n < 0 || n > depth()) throw Error(ErrorKind::IndexOutOfRange, "convergent index " + std::to_string(n));
  return p_[n];
}

const mpz_class& ContinuedFraction::q(int n) const {
  if (n < 0 || n > depth()) throw Error(ErrorKind::IndexOutOfRange, "convergent index " + std::to_string(n));
  return q_[n];
}

Scalar ContinuedFraction::qnorm(int n) const { return ietlab::qnorm(q(n), value_); }

int ContinuedFraction::last_index_with_q_at_most(const mpz_class& bound) const {
  int best = -1;
  for (int n = 0; n <= depth(); ++n)
    if (q_[n] <= bound) best = n;
  return best;
}

int ceil_log2(const mpz_class& q) {
  if (q <= 1) return 0;
  mpz_class t = q - 1;
  return static_cast<int>(mpz_sizeinbase(t.get_mpz_t(), 2));
}

int bits_for_qmax(const mpz_class& q_max) { return std::max(256, 8 * ceil_log2(q_max)); }

Scalar qnorm(const mpz_class& q, const Scalar& alpha) {
  if (q < 1) throw Error(ErrorKind::InvalidArgument, "qnorm needs q >= 1");
  const int bits = alpha.bits();
  // q*alpha is exact with bits + log2(q) bits of mantissa
  const int wide = bits + static_cast<int>(mpz_sizeinbase(q.get_mpz_t(), 2)) + 2;
  Scalar t = Scalar::zero(wide);
  mpfr_mul_z(t.raw(), alpha.raw(), q.get_mpz_t(), MPFR_RNDN);
  Scalar f = frac(t);
  Scalar g = 1 - f;
  Scalar d = f < g ? f : g;
  // alpha carries an error of up to 2^-bits; q*alpha up to q times that
  Scalar noise = Scalar::from_mpz(q, 64);
  mpfr_mul_2si(noise.raw(), noise.raw(), -static_cast<long>(bits), MPFR_RNDU);
  if (d.is_zero() || mpfr_cmp(d.raw(), noise.raw()) <= 0)
    throw Error(ErrorKind::PrecisionExhausted, "||q alpha|| indistinguishable from 0 at " + std::to_string(bits) + " bits");
  return d.with_bits(bits);
}

ContinuedFraction cf_expand(const Scalar& x, int depth) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be >= 1");
  if (!(x > 0) || !(x < 1)) throw Error(ErrorKind::OutOfDomain, "cf_expand needs 0 < x < 1");
  const int bits = x.bits();
  Scalar lo = x, hi = x;
  Scalar ilo = Scalar::zero(bits), ihi = Scalar::zero(bits), flo = Scalar::zero(bits), fhi = Scalar::zero(bits);
  std::vector<long> quotients{0};
  for (int i = 1; i <= depth; ++i) {
    if (lo.is_zero() && hi.is_zero())
      throw Error(ErrorKind::RationalInput, "expansion terminates after " + std::to_string(i - 1) + " quotients");
    if (lo.sign() <= 0)
      throw Error(ErrorKind::PrecisionExhausted, "remainder interval reaches 0 at quotient " + std::to_string(i));
    mpfr_ui_div(ilo.raw(), 1, hi.raw(), MPFR_RNDD);
    mpfr_ui_div(ihi.raw(), 1, lo.raw(), MPFR_RNDU);
    mpfr_floor(flo.raw(), ilo.raw());
    mpfr_floor(fhi.raw(), ihi.raw());
    // an upper end sitting exactly on the next integer is still ambiguous
    if (!(flo == fhi) || (ihi.is_integer() && !(ilo == ihi)))
      throw Error(ErrorKind::PrecisionExhausted, "quotient " + std::to_string(i) + " undetermined at " + std::to_string(bits) + " bits");
    if (!mpfr_fits_slong_p(flo.raw(), MPFR_RNDN))
      throw Error(ErrorKind::PrecisionExhausted, "quotient overflow");
    long a = mpfr_get_si(flo.raw(), MPFR_RNDN);
    quotients.push_back(a);
    mpfr_sub_si(lo.raw(), ilo.raw(), a, MPFR_RNDD);
    mpfr_sub_si(hi.raw(), ihi.raw(), a, MPFR_RNDU);
  }
  if (lo.is_zero() && hi.is_zero())
    throw Error(ErrorKind::RationalInput, "expansion terminates after " + std::to_string(depth) + " quotients");
  return ContinuedFraction(std::move(quotients), x, std::nullopt, depth);
}

ContinuedFraction cf_realize(const std::vector<long>& quotients, const TailPolicy& tail, int bits,
                             int tail_terms) {
  for (long v : quotients)
    if (v < 1) throw Error(ErrorKind::InvalidArgument, "quotients must be >= 1");
  if (tail.block.empty()) throw Error(ErrorKind::InvalidArgument, "empty tail block");

  // prefix convergents p_L, p_{L-1}, q_L, q_{L-1}
  mpz_class p = 0, q = 1, pp = 1, qp = 0;
  for (long v : quotients) {
    mpz_class pn = v * p + pp, qn = v * q + qp;
    pp = p; qp = q; p = pn; q = qn;
  }
  const int need = 4 * ceil_log2(q);
  if (bits < need)
    throw Error(ErrorKind::PrecisionTooLow, "need at least " + std::to_string(need) + " bits, got " + std::to_string(bits));

  // complete quotient t = [b_1; b_2, ..., b_k, t] solves Q t^2 + (Q' - P) t - P' = 0
  mpz_class P = 1, Q = 0, Pp = 0, Qp = 1;  // seeded so the loop yields [b_1;...]
  for (long b : tail.block) {
    mpz_class Pn = b * P + Pp, Qn = b * Q + Qp;
    Pp = P; Qp = Q; P = Pn; Q = Qn;
  }
  // after the loop: P/Q = [b_1;...;b_k], Pp/Qp the previous convergent
  const int work = bits + 64;
  mpz_class B = P - Qp;
  mpz_class D = B * B + 4 * Q * Pp;
  Scalar t = sqrt(Scalar::from_mpz(D, work));
  t += Scalar::from_mpz(B, work);
  t /= Scalar::from_mpz(2 * Q, work);

  Scalar num = Scalar::from_mpz(p, work) * t + Scalar::from_mpz(pp, work);
  Scalar den = Scalar::from_mpz(q, work) * t + Scalar::from_mpz(qp, work);
  Scalar value = (num / den).with_bits(bits);

  std::vector<long> all{0};
  all.insert(all.end(), quotients.begin(), quotients.end());
  // store tail quotients while 4*log2(q) stays within the precision
  mpz_class qa = q, qb = qp;
  for (int i = 0; i < tail_terms; ++i) {
    long b = tail.block[i % tail.block.size()];
    mpz_class qn = b * qa + qb;
    if (4 * ceil_log2(qn) > bits) break;
    all.push_back(b);
    qb = qa; qa = qn;
  }
  return ContinuedFraction(std::move(all), std::move(value), tail, static_cast<int>(quotients.size()));
}

DiophantineProfile diophantine_profile(const ContinuedFraction& cf, const Scalar& epsilon, int k,
                                       long threshold) {
  if (cf.depth() < 1) throw Error(ErrorKind::InsufficientDepth, "profile needs at least 2 convergents");
  DiophantineProfile prof;
  prof.epsilon = epsilon;
  prof.k = k;
  prof.threshold = threshold;
  prof.first_index = 0;
  prof.last_index = cf.depth();
  const int bits = cf.bits();
  Scalar e1 = epsilon + 1;
  for (int n = prof.first_index; n <= prof.last_index; ++n) {
    Scalar nq = cf.qnorm(n);
    Scalar qn = Scalar::from_mpz(cf.q(n), bits);
    Scalar roth = pow(qn, e1) * nq;
    Scalar sk = pow(qn, Scalar::from_int(k + 1, bits)) * nq;
    if (n == prof.first_index || roth < prof.roth_min) prof.roth_min = roth;
    prof.roth_scores.push_back(std::move(roth));
    prof.sk0_scores.push_back(std::move(sk));
    if (n + 1 <= cf.depth() && cf.a(n + 1) >= threshold) prof.big_quotient_indices.push_back(n);
  }
  return prof;
}

std::string validate(const ContinuedFraction& cf) {
  std::ostringstream err;
  const int L = cf.depth();
  for (int n = 0; n <= L; ++n) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), cf.p(n).get_mpz_t(), cf.q(n).get_mpz_t());
    if (g != 1) err << "gcd(p_" << n << ", q_" << n << ") != 1; ";
    if (n >= 2) {
      if (cf.p(n) != cf.a(n) * cf.p(n - 1) + cf.p(n - 2)) err << "p recurrence fails at " << n << "; ";
      if (cf.q(n) != cf.a(n) * cf.q(n - 1) + cf.q(n - 2)) err << "q recurrence fails at " << n << "; ";
    }
    if (n >= 2 && cf.q(n) <= cf.q(n - 1)) err << "q not increasing at " << n << "; ";
    // |alpha - p/q| < 1/q^2, compared exactly: |q alpha - p| * q < 1
    const int wide = cf.bits() + 2 * static_cast<int>(mpz_sizeinbase(cf.q(n).get_mpz_t(), 2)) + 4;
    Scalar lhs = cf.value().with_bits(wide) * cf.q(n);
    lhs -= Scalar::from_mpz(cf.p(n), wide);
    lhs = abs(lhs) * cf.q(n);
    if (!(lhs < 1)) err << "convergent quality fails at " << n << "; ";
  }
  return err.str();
}

}  // namespace ietlab
