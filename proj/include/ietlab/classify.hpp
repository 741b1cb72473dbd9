#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ietlab/cocycle.hpp"
#include "ietlab/cohom.hpp"
#include "ietlab/dynsys.hpp"

namespace ietlab {

enum class Verdict { CoboundaryTypical, ErgodicSkewProduct, NonergodicConstructed, Inconclusive };
const char* to_string(Verdict v);

// which result the verdict leans on
enum class Basis {
  TypicalCoboundary,   // f(0) = f(L-) = 0, f absolutely continuous: coboundary for a.e. symmetric 3-IET
  TypicalErgodicity,   // f(0) = f(L-) != 0: ergodic for a.e. symmetric 3-IET
  NonzeroJumpSum,      // S(f) != 0: ergodic over every ergodic base
  ConstructedWitness,  // induced discontinuity on the backward orbit of 0
  None,
};
const char* to_string(Basis b);

struct ErgodicityVerdict {
  Verdict verdict = Verdict::Inconclusive;
  Basis basis = Basis::None;
  std::string citation;              // human-readable statement of the result used
  Scalar jump_sum;                   // S(f)
  Scalar endpoint_value;             // f(0)
  bool interior_smooth = false;      // no interior jumps of f or f'
  std::vector<std::string> evidence; // free-form pointers to numeric reports
};

// Decision order: passing witness, then S(f) != 0, then the continuous case split by f(0).
ErgodicityVerdict predict_ergodicity(const Iet3& t, const PiecewiseSmoothFn& f,
                                     const std::optional<NonergodicCertificate>& witness = std::nullopt);

}  // namespace ietlab
