#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "ietlab/scalar.hpp"

namespace ietlab {

// How a finite quotient prefix is continued: the block is repeated forever.
// {1} is the golden tail; a constant tail c is the block {c}.
struct TailPolicy {
  std::vector<long> block{1};

  static TailPolicy golden() { return TailPolicy{{1}}; }
  static TailPolicy periodic(std::vector<long> b);
  std::string describe() const;
  bool operator==(const TailPolicy&) const = default;
};

class ContinuedFraction {
 public:
  ContinuedFraction(std::vector<long> quotients, Scalar value, std::optional<TailPolicy> tail,
                    int prefix_length);

  // a_0, a_1, ..., a_L
  const std::vector<long>& quotients() const { return a_; }
  long a(int n) const;
  // largest stored index L
  int depth() const { return static_cast<int>(a_.size()) - 1; }
  // number of quotients a_1..a_k that came from the caller rather than the tail
  int prefix_length() const { return prefix_length_; }

  const mpz_class& p(int n) const;
  const mpz_class& q(int n) const;
  // sign of q_n*alpha - p_n, i.e. (-1)^n
  int sigma(int n) const { return (n % 2 == 0) ? 1 : -1; }

  const Scalar& value() const { return value_; }
  int bits() const { return value_.bits(); }
  const std::optional<TailPolicy>& tail() const { return tail_; }

  // ||q_n alpha||
  Scalar qnorm(int n) const;

  // largest stored n with q_n <= bound, -1 if none
  int last_index_with_q_at_most(const mpz_class& bound) const;

 private:
  std::vector<long> a_;
  std::vector<mpz_class> p_, q_;
  Scalar value_;
  std::optional<TailPolicy> tail_;
  int prefix_length_ = 0;
};

// Expansion of 0 < x < 1 by interval arithmetic with outward rounding.
// Throws PrecisionExhausted when a quotient is undetermined at x's precision and
// RationalInput when the expansion terminates.
ContinuedFraction cf_expand(const Scalar& x, int depth);

// Value of [0; quotients..., tail...]. `quotients` are a_1..a_L.
// Up to `tail_terms` quotients of the tail are stored as well (fewer if the
// precision cannot support their convergents).
ContinuedFraction cf_realize(const std::vector<long>& quotients, const TailPolicy& tail, int bits,
                             int tail_terms = 8);

// max(256, 8 * ceil(log2 q_max))
int bits_for_qmax(const mpz_class& q_max);
int ceil_log2(const mpz_class& q);

Scalar qnorm(const mpz_class& q, const Scalar& alpha);
inline Scalar qnorm(long q, const Scalar& alpha) { return qnorm(mpz_class(q), alpha); }

struct DiophantineProfile {
  Scalar epsilon;
  int k = 0;
  long threshold = 0;
  int first_index = 0;
  int last_index = 0;
  std::vector<Scalar> roth_scores;  // q_n^{1+eps} ||q_n alpha||, index n - first_index
  std::vector<Scalar> sk0_scores;   // q_n^{k+1} ||q_n alpha||
  std::vector<int> big_quotient_indices;  // n with a_{n+1} >= threshold
  Scalar roth_min;  // witness score, not a verdict
};

DiophantineProfile diophantine_profile(const ContinuedFraction& cf, const Scalar& epsilon, int k,
                                       long threshold);

// Checks the stored data against the exact recurrences, gcd = 1, monotone q and the
// convergent quality bound. Returns an empty string when all hold.
std::string validate(const ContinuedFraction& cf);

}  // namespace ietlab
