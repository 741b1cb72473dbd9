#pragma once

#include <cstdint>
#include <vector>

#include "ietlab/cocycle.hpp"
#include "ietlab/continued_fraction.hpp"
#include "ietlab/towers.hpp"

namespace ietlab {

// Cut of the large tower over [w, b) at the discontinuity of S_q f coming from beta.
// In base coordinates the cut is u = R^{-m} beta for levels j <= m and
// u' = u - sigma_{k+1} w for j > m, since R^q moves points by sigma_{k+1} w.
struct XiSets {
  int k = 0;
  long q = 0;             // q_{k+1}
  Scalar alpha;
  Scalar l, w, b;         // ||q_k alpha||, ||q_{k+1} alpha||, l + w
  Scalar beta;
  long m = 0;
  int sigma_next = 1;     // sigma_{k+1}
  Scalar u, u_late;       // cut in base coordinates for j <= m and j > m
  Scalar width1, width2;            // |J^1_j|, |J^2_j| for j <= m
  Scalar width1_late, width2_late;  // for j > m

  Scalar cut(long j) const;            // d_j
  Arc j1(long j) const;                // [R^j w, d_j)
  Arc j2(long j) const;                // [d_j, R^j b)
  Scalar measure1() const;             // |Xi^1|
  Scalar measure2() const;
};

// BetaInSmallTower when beta is not on the large tower over [w, b) at scale k;
// DegenerateXiSets when a cut leaves the open base.
XiSets build_xi_sets(const ContinuedFraction& cf, int k, const Scalar& beta);

struct FiberSample {
  long j = 0;
  Scalar omega_minus, omega_plus;  // S just left and right of the cut
  Scalar dev1, dev2;               // sup over samples of |S - a1| on J^1, |S - a2| on J^2
  Scalar osc1, osc2;               // sup |S - omega^-| on J^1, |S - omega^+| on J^2
};

struct EssentialValueReport {
  int k = 0;
  long q = 0;
  Scalar a1, a2, epsilon;
  // (1)
  Scalar measure_xi1, measure_xi2, tower_measure;
  // (2)
  Scalar rigidity;           // ||q_{k+1} alpha||
  Scalar rigidity_sampled;   // sup over samples of the circle distance |R^q x - x|
  // (3)
  Scalar sym_diff1, sym_diff2;   // |Xi^i symdiff R Xi^i|, exact
  Scalar sym_diff_bound;         // 4 max fiber width + 2 w
  // (4)
  Scalar sup_dev1, sup_dev2;
  Scalar mean1, mean2;
  Scalar omega_gap_error;        // max_j |omega^+ - omega^- + 1|
  long fibers_sampled = 0;
  bool full_sweep = true;
  long continuity_violations = 0;  // breakpoint preimages strictly inside some J
  bool pass1 = false, pass2 = false;  // sup_dev <= epsilon
  std::vector<FiberSample> fibers;
};

// Evaluates the four conditions. max_fibers = 0 sweeps every level with sliding
// windows; otherwise that many random levels are sampled. JumpNotNormalized unless f
// jumps by -1 at beta.
EssentialValueReport criterion_check(const XiSets& xi, const PiecewiseSmoothFn& f, const Scalar& a1,
                                     const Scalar& a2, const Scalar& epsilon, long max_fibers = 0,
                                     std::uint64_t seed = 1);

struct MvtReport {
  Scalar var_df;
  Scalar osc_bound;           // l * Var(f')
  Scalar max_osc1, max_osc2;  // sup_j of the measured oscillations
  Scalar c_k;                 // w * Var(f)
  Scalar integral_bound;      // c_k + 2 l^2 Var(f')
  Scalar max_integral;        // sup_j | |J^1| omega^- + |J^2| omega^+ |
  Scalar slack;
  bool pass_osc = false, pass_integral = false;
};

MvtReport mvt_bound_check(const XiSets& xi, const PiecewiseSmoothFn& f, const EssentialValueReport& ev);

struct FraczekReport {
  std::vector<int> indices;
  std::vector<Scalar> q2_scores;               // q^2 ||q alpha||
  std::vector<std::vector<Scalar>> fractions;  // [i][j] = {q_{n_j} beta_i}
  std::vector<Scalar> gamma;                   // last fractional part per discontinuity
  Scalar min_separation;                       // circle distance between distinct gammas
  bool scores_decreasing = false;
  bool plausible = false;
};

FraczekReport fraczek_condition(const ContinuedFraction& cf, const std::vector<Scalar>& discontinuities,
                                const std::vector<int>& subsequence, const Scalar& margin);

}  // namespace ietlab
