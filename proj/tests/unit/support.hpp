#pragma once

#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "ietlab/error.hpp"
#include "ietlab/scalar.hpp"

namespace ietlab::testing {

inline Scalar R(const char* s, int bits = 256) { return Scalar::parse(s, bits); }

inline bool near(const Scalar& a, const Scalar& b, const Scalar& tol) { return !(abs(a - b) > tol); }
inline bool near(const Scalar& a, const char* b, const char* tol) {
  return near(a, Scalar::parse(b, a.bits()), Scalar::parse(tol, a.bits()));
}

// runs fn and returns the ErrorKind it threw
template <class F>
std::string error_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return std::string(to_string(e.kind()));
  }
  return "none";
}

}  // namespace ietlab::testing

#include "ietlab/cocycle.hpp"

namespace ietlab::testing {

// random piecewise trig+affine cocycle with `pieces` pieces and up to `modes` modes
inline PiecewiseSmoothFn random_cocycle(std::mt19937_64& rng, const Scalar& domain, int pieces, int modes,
                                        bool continuous_trig_only = false) {
  const int bits = domain.bits();
  std::uniform_real_distribution<double> u(-1, 1);
  auto rnd = [&] { return Scalar::from_double(u(rng), bits); };
  std::vector<Scalar> bp{Scalar::zero(bits)};
  if (!continuous_trig_only) {
    std::vector<Scalar> cuts;
    for (int i = 1; i < pieces; ++i) cuts.push_back(Scalar::random_unit(rng, bits) * domain);
    std::sort(cuts.begin(), cuts.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
    for (auto& c : cuts) bp.push_back(c);
  }
  std::vector<TrigAffine> desc;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    TrigAffine d{rnd(), continuous_trig_only ? Scalar::zero(bits) : rnd(), {}, {}};
    for (int m = 0; m < modes; ++m) {
      d.a.push_back(rnd());
      d.b.push_back(rnd());
    }
    desc.push_back(std::move(d));
  }
  return PiecewiseSmoothFn(domain, domain, std::move(bp), std::move(desc));
}

}  // namespace ietlab::testing
