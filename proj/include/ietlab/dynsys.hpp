#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "ietlab/scalar.hpp"

namespace ietlab {

// Symmetric 3-IET: pieces A=[0,la), B=[la,la+lb), C=[la+lb,total) are
// reordered C B A.
class Iet3 {
 public:
  Iet3(Scalar la, Scalar lb, Scalar lc);

  const Scalar& lambda_a() const { return la_; }
  const Scalar& lambda_b() const { return lb_; }
  const Scalar& lambda_c() const { return lc_; }
  const Scalar& total() const { return total_; }
  int bits() const { return total_.bits(); }

  // same map rescaled to total length 1
  Iet3 normalized() const;

  int piece(const Scalar& x) const;  // 0,1,2 for A,B,C
  const Scalar& translation(int piece) const { return shift_[piece]; }
  std::array<Scalar, 3> translations() const { return shift_; }

  Scalar apply(const Scalar& x) const;
  Scalar inverse(const Scalar& y) const;

  // In-place variants without domain checks; return the branch taken.
  int step(Scalar& x) const;
  int step_inverse(Scalar& y) const;
  // left-limit convention: pieces (xi_j, xi_{j+1}], y in (0, total]
  int step_left(Scalar& y) const;

  std::string describe() const;

 private:
  Scalar la_, lb_, lc_, total_;
  Scalar xi1_, xi2_;           // la, la+lb
  Scalar img1_, img2_;         // lc, lc+lb: image pieces C|B|A
  std::array<Scalar, 3> shift_;
};

// x -> x + angle mod modulus on [0, modulus)
class Rotation {
 public:
  Rotation(Scalar modulus, Scalar angle);

  const Scalar& modulus() const { return modulus_; }
  const Scalar& angle() const { return angle_; }
  int bits() const { return angle_.bits(); }

  // branch 0 adds angle, branch 1 adds angle - modulus
  std::array<Scalar, 2> translations() const { return {angle_, wrap_}; }

  Scalar apply(const Scalar& x) const;
  Scalar inverse(const Scalar& y) const;
  // R^j x for any integer j, via x + j*angle reduced once
  Scalar power(const Scalar& x, long j) const;

  int step(Scalar& x) const;
  int step_inverse(Scalar& y) const;
  int step_left(Scalar& y) const;  // y in (0, modulus]

  // signed distance on the circle of length modulus, in [-modulus/2, modulus/2)
  Scalar circle_delta(const Scalar& a, const Scalar& b) const;

  std::string describe() const;

 private:
  Scalar modulus_, angle_, wrap_;
};

using Map = std::variant<Iet3, Rotation>;

const Scalar& domain_length(const Map& m);
Scalar map_apply(const Map& m, const Scalar& x);
Scalar map_inverse(const Map& m, const Scalar& y);
std::string describe(const Map& m);

struct OrbitSample {
  Scalar start;
  std::vector<Scalar> points;
  std::string map_id;
};

OrbitSample orbit(const Map& m, const Scalar& x, long n);

// {0, la, la+lb}
std::vector<Scalar> discontinuities(const Iet3& t);

struct KeaneReport {
  long horizon = 0;
  Scalar tol;
  Scalar minimum;  // min |T^m xi_b - xi_g| over 1 <= m <= horizon
  long m = 0;
  int beta = 0, gamma = 0;  // indices into the interior discontinuities {la, la+lb}
  bool holds = false;       // minimum > tol
};

// Finite-horizon check over the interior discontinuities la, la+lb.
KeaneReport keane_check(const Iet3& t, long horizon, const Scalar& tol);

// lengths reversed; as maps reflect(T) = T^{-1} and I o T = reflect(T) o I with I(x) = total - x
Iet3 reflect(const Iet3& t);

// Star discrepancy of points in [0, length).
Scalar star_discrepancy(std::vector<Scalar> pts, const Scalar& length);

}  // namespace ietlab
