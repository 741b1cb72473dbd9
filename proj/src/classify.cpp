#include "ietlab/classify.hpp"

#include "ietlab/error.hpp"

namespace ietlab {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CoboundaryTypical: return "CoboundaryTypical";
    case Verdict::ErgodicSkewProduct: return "ErgodicSkewProduct";
    case Verdict::NonergodicConstructed: return "NonergodicConstructed";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(Basis b) {
  switch (b) {
    case Basis::TypicalCoboundary: return "typical_coboundary";
    case Basis::TypicalErgodicity: return "typical_ergodicity";
    case Basis::NonzeroJumpSum: return "nonzero_jump_sum";
    case Basis::ConstructedWitness: return "constructed_witness";
    case Basis::None: return "none";
  }
  return "?";
}

ErgodicityVerdict predict_ergodicity(const Iet3& t, const PiecewiseSmoothFn& f,
                                     const std::optional<NonergodicCertificate>& witness) {
  if (!(f.domain() == t.total())) throw Error(ErrorKind::InvalidArgument, "cocycle domain differs from the IET length");
  const int bits = f.bits();
  Scalar tol = ldexp_one(24 - bits, bits);
  ErgodicityVerdict v;
  v.jump_sum = fn_jump_sum(f);
  v.endpoint_value = f.eval(Scalar::zero(bits));

  auto jumps = f.jump_values();
  auto djumps = fn_derivative(f).jump_values();
  v.interior_smooth = true;
  for (std::size_t j = 1; j < jumps.size(); ++j)
    if (abs(jumps[j]) > tol || abs(djumps[j]) > tol) v.interior_smooth = false;

  if (witness && witness->pass) {
    v.verdict = Verdict::NonergodicConstructed;
    v.basis = Basis::ConstructedWitness;
    v.citation =
        "induced cocycle continuous on both continuity intervals when its discontinuity lies on the backward "
        "orbit of 0; the skew product is then not ergodic";
    v.evidence.push_back("nonergodic certificate: m = " + std::to_string(witness->m) + ", n = " +
                         std::to_string(witness->n));
    return v;
  }
  if (abs(v.jump_sum) > tol) {
    v.verdict = Verdict::ErgodicSkewProduct;
    v.basis = Basis::NonzeroJumpSum;
    v.citation = "non-zero total sum of jumps: the skew product is ergodic over every ergodic 3-IET";
    v.evidence.push_back("S(f) = " + v.jump_sum.to_string(12));
    return v;
  }
  if (v.interior_smooth) {
    if (abs(v.endpoint_value) > tol) {
      v.verdict = Verdict::ErgodicSkewProduct;
      v.basis = Basis::TypicalErgodicity;
      v.citation = "f(0) = f(|I|-) != 0 with zero mean: the skew product is ergodic for almost every symmetric 3-IET";
    } else {
      v.verdict = Verdict::CoboundaryTypical;
      v.basis = Basis::TypicalCoboundary;
      v.citation = "f(0) = f(|I|-) = 0 with zero mean: f is a coboundary for almost every symmetric 3-IET";
    }
    v.evidence.push_back("f(0) = " + v.endpoint_value.to_string(12));
    return v;
  }
  v.citation = "no result covers interior discontinuities with S(f) = 0";
  return v;
}

}  // namespace ietlab
