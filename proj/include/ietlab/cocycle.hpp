#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ietlab/continued_fraction.hpp"
#include "ietlab/dynsys.hpp"
#include "ietlab/scalar.hpp"

namespace ietlab {

// c0 + c1*x + sum_m a_m cos(2 pi m x / period) + b_m sin(2 pi m x / period), m = 1..M,
// in the absolute coordinate x.
struct TrigAffine {
  Scalar c0, c1;
  std::vector<Scalar> a, b;

  int modes() const { return static_cast<int>(a.size()); }
  bool is_zero() const;
  void pad(int m);
};

// Right-continuous piecewise function on [0, domain). Piece j lives on
// [breakpoints[j], breakpoints[j+1]) with breakpoints[0] = 0. The trig period is
// separate from the domain because an induced function keeps its parent's period.
class PiecewiseSmoothFn {
 public:
  PiecewiseSmoothFn(Scalar domain, Scalar period, std::vector<Scalar> breakpoints,
                    std::vector<TrigAffine> pieces);

  static PiecewiseSmoothFn zero(const Scalar& domain);
  static PiecewiseSmoothFn constant(const Scalar& domain, const Scalar& c);
  // single piece, period = domain
  static PiecewiseSmoothFn trig(const Scalar& domain, const Scalar& c0, std::vector<Scalar> a,
                                std::vector<Scalar> b);
  static PiecewiseSmoothFn sin_mode(const Scalar& domain, int m, const Scalar& amp);
  static PiecewiseSmoothFn cos_mode(const Scalar& domain, int m, const Scalar& amp);
  // {(x - beta)/L} - 1/2 : slope 1/L, jump -1 at beta
  static PiecewiseSmoothFn sawtooth(const Scalar& domain, const Scalar& beta);
  // height on [u, v), 0 elsewhere, 0 <= u < v <= domain
  static PiecewiseSmoothFn indicator(const Scalar& domain, const Scalar& u, const Scalar& v,
                                     const Scalar& height);

  const Scalar& domain() const { return domain_; }
  const Scalar& period() const { return period_; }
  const std::vector<Scalar>& breakpoints() const { return bp_; }
  const std::vector<TrigAffine>& pieces() const { return pieces_; }
  int bits() const { return domain_.bits(); }
  int max_mode() const;

  int piece_index(const Scalar& x) const;       // x in [0, domain)
  int piece_index_left(const Scalar& y) const;  // y in (0, domain]
  // right end of piece j
  const Scalar& piece_end(int j) const;

  // descriptor j evaluated at any x (no piece lookup)
  Scalar piece_eval(int j, const Scalar& x) const;

  Scalar eval(const Scalar& x) const;       // OutOfDomain outside [0, domain)
  Scalar eval_left(const Scalar& y) const;  // left limit, y in (0, domain]

  // jump at breakpoint j: f(b_j) - f(b_j^-); j = 0 uses the circle value f(domain^-)
  std::vector<Scalar> jump_values() const;

 private:
  Scalar domain_, period_;
  std::vector<Scalar> bp_;
  std::vector<TrigAffine> pieces_;
};

Scalar fn_eval(const PiecewiseSmoothFn& f, const Scalar& x);
PiecewiseSmoothFn fn_derivative(const PiecewiseSmoothFn& f);
Scalar fn_integral(const PiecewiseSmoothFn& f);
// integral over [u, v) with 0 <= u <= v <= domain
Scalar fn_integral_over(const PiecewiseSmoothFn& f, const Scalar& u, const Scalar& v);
// integral over the arc [s, s+len) of the circle of length domain (len <= domain)
Scalar fn_integral_arc(const PiecewiseSmoothFn& f, const Scalar& s, const Scalar& len);
// circle variation: int |f'| over pieces + sum |jumps|
Scalar fn_variation(const PiecewiseSmoothFn& f);
Scalar fn_jump_sum(const PiecewiseSmoothFn& f);

PiecewiseSmoothFn operator+(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g);
PiecewiseSmoothFn operator-(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g);
PiecewiseSmoothFn operator*(const Scalar& c, const PiecewiseSmoothFn& f);
PiecewiseSmoothFn operator-(const PiecewiseSmoothFn& f);

// On [start, end) of a new domain the result is f(x + shift).
struct Segment {
  Scalar start, end, shift;
};

// Builds x -> f(x + shift) segment by segment; uncovered parts of the new domain are 0.
PiecewiseSmoothFn compose_translation(const PiecewiseSmoothFn& f, const std::vector<Segment>& segs,
                                      const Scalar& new_domain);
// g o R for a rotation on the same domain
PiecewiseSmoothFn compose_rotation(const PiecewiseSmoothFn& g, const Rotation& r);
// f o T^{-1}
PiecewiseSmoothFn compose_inverse(const PiecewiseSmoothFn& f, const Iet3& t);
// f(domain - x), as its right-continuous representative
PiecewiseSmoothFn mirror(const PiecewiseSmoothFn& f);
// same values, restricted to [0, new_domain), new_domain <= domain
PiecewiseSmoothFn restrict_to(const PiecewiseSmoothFn& f, const Scalar& new_domain);

// Drops breakpoints whose two sides carry the same descriptor within tol.
PiecewiseSmoothFn simplify(const PiecewiseSmoothFn& f, const Scalar& tol);

// one piece, no slope, period equal to the domain
bool is_pure_trig(const PiecewiseSmoothFn& f);

// Sums S_n f along orbits of a map, with phase tracking so trig terms cost a few
// multiplications per step instead of a sine evaluation.
class BirkhoffEngine {
 public:
  static constexpr long kDefaultBudget = 10'000'000;

  BirkhoffEngine(Map map, PiecewiseSmoothFn fn, long orbit_budget = kDefaultBudget);
  // several cocycles over the same orbit (same domain and period)
  BirkhoffEngine(Map map, std::vector<PiecewiseSmoothFn> fns, long orbit_budget = kDefaultBudget);

  const Map& map() const { return map_; }
  const PiecewiseSmoothFn& fn(std::size_t i = 0) const { return fns_[i]; }
  std::size_t count() const { return fns_.size(); }
  long budget() const { return budget_; }

  // S_n f(x), any sign of n
  Scalar sum(const Scalar& x, long n) const;
  std::vector<Scalar> sums(const Scalar& x, long n) const;
  // limit of S_n f(x') as x' -> y from the left, y in (0, domain], n >= 0
  Scalar sum_left(const Scalar& y, long n) const;
  std::vector<Scalar> sums_left(const Scalar& y, long n) const;

  // S_n f(T^j x) for j = 0..count-1 via S_n f(Tx) = S_n f(x) - f(x) + f(T^n x).
  // Result index [fn][j].
  std::vector<std::vector<Scalar>> window(const Scalar& x, long n, long count) const;
  std::vector<std::vector<Scalar>> window_left(const Scalar& y, long n, long count) const;

 private:
  void check_budget(long n) const;
  Map map_;
  std::vector<PiecewiseSmoothFn> fns_;
  long budget_;
};

Scalar birkhoff(const BirkhoffEngine& e, const Scalar& x, long n);

struct DkReport {
  int n = 0;
  mpz_class q;
  long points = 0;          // grid + refinement points evaluated
  Scalar var_f, var_df;     // Var(f), Var(f')
  Scalar max_f, max_df;     // sup estimates of |S_q f|, |S_q f'|
  Scalar argmax_f;
  bool pass_f = false, pass_df = false;
};

// grid of grid_size points plus both sides of every breakpoint preimage R^{-i}b, i < q_n
DkReport dk_verify(const PiecewiseSmoothFn& f, const Rotation& r, const ContinuedFraction& cf, int n,
                   long grid_size);

struct SmallIntegralEntry {
  Scalar start;       // J = [start, start + len) on the circle
  Scalar integral;    // quadrature
  Scalar exact;       // sum_i int_{R^i J} f in closed form
  bool exact_known = false;  // skipped when q * #J is too large
  bool translate = true;  // tower translate or random placement
};

struct SmallIntegralReport {
  int k = 0;
  mpz_class q;             // q_{k+1}
  Scalar len;              // ||q_k alpha||
  Scalar w;                // ||q_{k+1} alpha||
  Scalar var_f;
  Scalar bound;            // w * Var(f)
  Scalar quad_tol;
  Scalar max_abs;          // max |integral| over all J
  Scalar max_quad_error;   // max |quadrature - closed form|
  Scalar slack;            // bound / max_abs (infinite -> reported as 0 when max_abs = 0)
  long evaluations = 0;
  bool pass = false;
  std::vector<SmallIntegralEntry> entries;
};

SmallIntegralReport small_integral_check(const PiecewiseSmoothFn& f, const Rotation& r,
                                         const ContinuedFraction& cf, int k, long random_placements = 64,
                                         std::uint64_t seed = 1, long eval_budget = 5'000'000);

}  // namespace ietlab
