#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ietlab/cocycle.hpp"
#include "ietlab/continued_fraction.hpp"
#include "ietlab/induction.hpp"

namespace ietlab {

enum class TransferMethod { Fourier, ClosedForm, ChiTrick, Lifted };
const char* to_string(TransferMethod m);

struct TransferSolution {
  std::variant<PiecewiseSmoothFn, GridFunction> g;
  PiecewiseSmoothFn f;     // the cocycle that was solved
  Scalar angle;            // rotation angle, same units as the domain
  Scalar residual;         // sup over the residual grid of |f - (g o R - g)|
  Scalar tolerance;
  TransferMethod method = TransferMethod::Fourier;
  bool failed = false;

  bool symbolic() const { return std::holds_alternative<PiecewiseSmoothFn>(g); }
  const PiecewiseSmoothFn& fn() const { return std::get<PiecewiseSmoothFn>(g); }
  Scalar eval(const Scalar& x) const;
};

// f must be a single trig piece with period = domain and zero mean. Solves over the
// rotation by `angle` on [0, domain). SmallDivisorBreakdown when some
// |exp(2 pi i m angle / L) - 1| < 2^{-P/2}; NotACoboundary when the mean is not 0.
TransferSolution solve_fourier(const PiecewiseSmoothFn& f, const Scalar& angle, int modes, long residual_grid = 1024);

// g = (cos 2 pi x + cos 2 pi (x - alpha)) / (-2 sin 2 pi alpha) for f = sin 2 pi x
TransferSolution sin_transfer(const Scalar& alpha, long residual_grid = 1024);
// direct evaluation of the same closed form
Scalar sin_transfer_value(const Scalar& alpha, const Scalar& x);
// sup |g| of the closed form: sqrt(A^2 + 1/4), A = -(1 + cos 2 pi alpha) / (2 sin 2 pi alpha)
Scalar sin_transfer_sup(const Scalar& alpha);

// chi = alpha on [0, 1 - alpha), alpha - 1 on [1 - alpha, 1); h(x) = x.
// The residual is computed symbolically and is exactly 0.
TransferSolution chi_transfer(const Scalar& alpha, long residual_grid = 1024);
PiecewiseSmoothFn chi_function(const Scalar& alpha);

// residual of a symbolic candidate: grid sup of |f - (g o R - g)|
Scalar transfer_residual(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g, const Rotation& r, long grid);

// Lifts a symbolic solution on the induction interval to the whole IET domain
// (grid function, method Lifted, failed unless certified).
TransferSolution lift_solution(const InducedSystem& sys, const TransferSolution& h_induced, long grid);

enum class GrowthTrend { Bounded, Clustered, Growing };
const char* to_string(GrowthTrend t);

struct GrowthReport {
  std::vector<int> n;
  std::vector<mpz_class> q;
  std::vector<Scalar> m;   // grid max |S_{q_n} f|
  Scalar fitted_c;         // max over the window
  GrowthTrend trend = GrowthTrend::Bounded;
};

// n = 1..depth (only indices with q_n within the orbit budget)
GrowthReport growth_diagnostic(const PiecewiseSmoothFn& f, const Rotation& r, const ContinuedFraction& cf, int depth,
                               long grid = 256);

struct BreakpointVisit {
  Scalar breakpoint;
  Scalar jump;
  long steps = 0;   // t >= 0 with R^{-t} b the first visit to J
  Scalar point;     // R^{-t} b
  bool on_discontinuity = false;
};

struct NonergodicCertificate {
  long m = 0;
  int n = 0;
  Scalar beta;
  Scalar j_length;        // ||q_n alpha|| + ||q_{n+1} alpha||
  Scalar cut;             // interior discontinuity of the induced rotation
  long cut_steps = 0;
  std::vector<BreakpointVisit> visits;
  bool pass = false;
};

struct NonergodicExample {
  Rotation rotation;
  Scalar beta;
  PiecewiseSmoothFn f;
  NonergodicCertificate certificate;
};

// {x - beta} - {x}: jumps -1 at beta and +1 at 0, no slope
PiecewiseSmoothFn step_cocycle(const Scalar& beta);

// beta = R^{-m}(0); J = [0, ||q_n alpha|| + ||q_{n+1} alpha||) for the smallest stored n with
// q_n >= m. The induced cocycle is continuous on both continuity intervals of the induced
// rotation iff every breakpoint of f first reaches J (backwards) at 0 or at the cut.
NonergodicExample nonergodic_example(const ContinuedFraction& cf, long m,
                                     const std::function<PiecewiseSmoothFn(const Scalar&)>& make_f = step_cocycle);

}  // namespace ietlab
