#pragma once

#include <optional>
#include <vector>

#include "ietlab/continued_fraction.hpp"
#include "ietlab/dynsys.hpp"

namespace ietlab {

// arc [start, start + width) on the unit circle
struct Arc {
  Scalar start, width;
};

enum class TowerKind { Small, Large };
const char* to_string(TowerKind k);

// Two Rokhlin towers of the unit rotation by alpha at scale n: the large one has base
// width ||q_n alpha|| and height q_{n+1}, the small one width ||q_{n+1} alpha|| and
// height q_n. Levels are never materialised.
struct RokhlinTower {
  int n = 0;
  int sign = 1;      // sigma_n; decides on which side of z the bases sit
  Scalar z;
  Scalar alpha;
  Arc base_small, base_large;
  mpz_class h_small, h_large;
  // true for build_tower; the fixed [0, b) layout is a partition only for sigma_n = +
  bool partition = true;

  Rotation rotation() const;
  Scalar measure() const;  // h_small * |small| + h_large * |large|
  Arc level(TowerKind which, long j) const;
};

// sigma_n = +: large [z, z+l), small [z-w, z); sigma_n = -: large [z-l, z), small [z, z+w)
RokhlinTower build_tower(const ContinuedFraction& cf, int n, const Scalar& z);

// small base [0, w), large base [w, b), b = l + w (the layout used for balanced points)
RokhlinTower balanced_tower(const ContinuedFraction& cf, int n);

struct Location {
  TowerKind which = TowerKind::Large;
  long level = 0;
  Scalar offset;  // position inside the base fiber
};

// Walks backward until the orbit hits a base. nullopt when no base is met within the
// tower height, which only happens for a non-partition layout.
std::optional<Location> locate(const RokhlinTower& t, const Scalar& x);

// true if x lies in the arc (half-open)
bool arc_contains(const Arc& a, const Scalar& x);

struct BalancedScale {
  int k = 0;            // convergent index n_k
  Scalar b;             // ||q_k alpha|| + ||q_{k+1} alpha||
  Scalar w;             // ||q_{k+1} alpha||
  bool in_small = false;  // z not on the large tower over [w, b)
  long m = -1;          // level
  Scalar offset;        // position of R^{-m} z in [0, b)
  Scalar epsilon;       // |offset / b - delta|
};

struct BalancedReport {
  Scalar delta;
  std::vector<BalancedScale> scales;
};

BalancedReport balanced_report(const ContinuedFraction& cf, const Scalar& z, const Scalar& delta,
                               const std::vector<int>& scales);

// R^m(delta * b_k). TargetOutsideLargeBase unless w_k < delta * b_k < b_k.
Scalar construct_balanced_beta(const ContinuedFraction& cf, const Scalar& delta, int k, long m);

}  // namespace ietlab
