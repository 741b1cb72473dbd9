#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ietlab/cocycle.hpp"
#include "ietlab/dynsys.hpp"

namespace ietlab {

enum class InductionCase { Case1, Case2 };

const char* to_string(InductionCase c);

// [start, end) of J with constant first-return time r
struct ReturnPiece {
  Scalar start, end;
  int r = 1;
};

// First return of a symmetric 3-IET (and its cocycle) to J = [0, |J|).
struct InducedSystem {
  InductionCase case_tag;
  Scalar j_length;
  Rotation rotation;
  PiecewiseSmoothFn induced_fn;
  std::vector<ReturnPiece> return_times;
  Iet3 parent;
  PiecewiseSmoothFn parent_fn;

  int return_time(const Scalar& x) const;
  // jumps of the induced cocycle at its breakpoints (index 0 is the circle jump)
  std::vector<Scalar> jumps() const { return induced_fn.jump_values(); }
};

// Case1 when la > lc, Case2 when la < lc. DegenerateCase when equal.
InducedSystem induce(const Iet3& t, const PiecewiseSmoothFn& f);

// smallest r >= 1 with T^r x in [0, j_length)
int return_time(const Iet3& t, const Scalar& j_length, const Scalar& x, int horizon = 16);

struct InductionReport {
  long samples = 0;
  Scalar max_map_discrepancy;  // |R x - T^{r(x)} x|
  Scalar max_fn_discrepancy;   // |f~(x) - S_{r(x)} f(x)|
  Scalar max_discrepancy;
  Scalar worst_x;
};

InductionReport verify_induction(const InducedSystem& sys, long samples, std::uint64_t seed = 1);

// Values on a uniform grid x_i = domain * i / n.
struct GridFunction {
  Scalar domain;
  std::vector<Scalar> x, values;
};

struct LiftReport {
  GridFunction h;
  Scalar tau;                // premise tolerance
  Scalar premise_residual;   // sup over the J-grid of |f~ - (h^ o R - h^)|
  Scalar max_residual;       // sup over the full grid of |f - (h o T - h)|
  double certified_fraction = 0;  // share of grid points with residual <= 10 tau
  bool certified = false;         // certified_fraction >= 0.99
};

// h = h^ on J and h(T x) = h^(x) + f(x) above J (one induction step has one extra level).
// grid >= 2 so that both levels carry points. NotACoboundary if the premise fails.
LiftReport lift_transfer(const InducedSystem& sys, const std::function<Scalar(const Scalar&)>& h_induced, long grid,
                         const Scalar& tau);

}  // namespace ietlab
