#include "ietlab/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>

#include "ietlab/cocycle.hpp"
#include "ietlab/error.hpp"

namespace ietlab {

namespace {

GaussRule make_rule(int n, int bits) {
  const int wide = bits + 32;
  GaussRule rule;
  Scalar pi = Scalar::pi(wide);
  Scalar tiny = ldexp_one(-(bits + 8), wide);
  for (int i = 1; i <= n; ++i) {
    // Chebyshev-like start, then Newton on P_n
    Scalar x = cos(pi * Scalar::from_double(i - 0.25, wide) / Scalar::from_double(n + 0.5, wide));
    Scalar dp = Scalar::zero(wide);
    for (int it = 0; it < 200; ++it) {
      Scalar p0 = Scalar::from_int(1, wide), p1 = x;
      for (int k = 2; k <= n; ++k) {
        Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      // P_n = p1, P_{n-1} = p0
      dp = n * (x * p1 - p0) / (x * x - 1);
      Scalar dx = p1 / dp;
      x -= dx;
      if (!(abs(dx) > tiny)) break;
    }
    // derivative at the converged node
    Scalar p0 = Scalar::from_int(1, wide), p1 = x;
    for (int k = 2; k <= n; ++k) {
      Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = std::move(p1);
      p1 = std::move(p2);
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    Scalar w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes.push_back(x.with_bits(bits));
    rule.weights.push_back(w.with_bits(bits));
  }
  return rule;
}

Scalar apply_rule(const GaussRule& g, const std::function<Scalar(const Scalar&)>& f, const Scalar& a,
                  const Scalar& b, long& evals) {
  Scalar half = (b - a) / 2, mid = (a + b) / 2;
  Scalar acc = Scalar::zero(a.bits());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    acc += g.weights[i] * f(mid + half * g.nodes[i]);
    ++evals;
  }
  return acc * half;
}

}  // namespace

const GaussRule& gauss_legendre(int n, int bits) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Gauss rule needs n >= 1");
  static std::mutex mu;
  static std::map<std::pair<int, int>, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, bits);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_rule(n, bits)).first;
  return it->second;
}

QuadResult integrate_adaptive(const std::function<Scalar(const Scalar&)>& f, const Scalar& a, const Scalar& b,
                              const Scalar& tol, long budget, int nodes, int max_depth) {
  const int bits = a.bits();
  const GaussRule& g = gauss_legendre(nodes, bits);
  QuadResult res;
  res.value = Scalar::zero(bits);
  res.error = Scalar::zero(bits);
  if (!(a < b)) return res;
  Scalar span = b - a;
  struct Cell {
    Scalar lo, hi, whole;
    int depth;
  };
  std::vector<Cell> stack;
  stack.push_back({a, b, apply_rule(g, f, a, b, res.evaluations), 0});
  while (!stack.empty()) {
    Cell c = std::move(stack.back());
    stack.pop_back();
    if (res.evaluations > budget)
      throw Error(ErrorKind::QuadratureBudgetExceeded, "more than " + std::to_string(budget) + " evaluations");
    Scalar mid = (c.lo + c.hi) / 2;
    Scalar left = apply_rule(g, f, c.lo, mid, res.evaluations);
    Scalar right = apply_rule(g, f, mid, c.hi, res.evaluations);
    Scalar fine = left + right;
    Scalar diff = abs(fine - c.whole);
    if (!(diff > tol * (c.hi - c.lo) / span) || c.depth >= max_depth) {
      res.value += fine;
      res.error += diff;
      continue;
    }
    stack.push_back({mid, c.hi, std::move(right), c.depth + 1});
    stack.push_back({c.lo, mid, std::move(left), c.depth + 1});
  }
  return res;
}

SmallIntegralReport small_integral_check(const PiecewiseSmoothFn& f, const Rotation& r, const ContinuedFraction& cf,
                                         int k, long random_placements, std::uint64_t seed, long eval_budget) {
  if (random_placements < 0) throw Error(ErrorKind::InvalidArgument, "random_placements must be >= 0");
  SmallIntegralReport rep;
  rep.k = k;
  rep.q = cf.q(k + 1);
  if (!rep.q.fits_slong_p()) throw Error(ErrorKind::OrbitBudgetExceeded, "q_{k+1} too large");
  const long q = rep.q.get_si();
  const int bits = r.bits();
  const Scalar& L = r.modulus();
  rep.len = cf.qnorm(k) * L;
  rep.w = cf.qnorm(k + 1) * L;
  rep.var_f = fn_variation(f);
  rep.bound = rep.w * rep.var_f;
  rep.quad_tol = Scalar::parse("1e-10", bits);
  BirkhoffEngine eng(Map(r), f);

  // discontinuities of S_q f: R^{-i} b for i < q
  std::vector<Scalar> disc;
  for (const Scalar& b : f.breakpoints()) {
    Scalar y = b;
    for (long i = 0; i < q; ++i) {
      disc.push_back(y);
      r.step_inverse(y);
    }
  }
  std::sort(disc.begin(), disc.end(), [](const Scalar& x, const Scalar& y) { return x < y; });

  // large tower base at scale k, then its q_{k+1} translates
  Scalar base = cf.sigma(k) > 0 ? Scalar::zero(bits) : L - rep.len;
  Scalar s = base;
  for (long j = 0; j < q; ++j) {
    rep.entries.push_back({s, Scalar::zero(bits), Scalar::zero(bits), false, true});
    r.step(s);
  }
  std::mt19937_64 rng(seed);
  for (long i = 0; i < random_placements; ++i) {
    rep.entries.push_back({Scalar::random_unit(rng, bits) * L, Scalar::zero(bits), Scalar::zero(bits), false, false});
  }

  auto integrand = [&](const Scalar& x) { return eng.sum(x, q); };
  // relative target 1e-12 of the bound, floored well below the slack
  Scalar tol = max(rep.bound * Scalar::parse("1e-12", bits), Scalar::parse("1e-20", bits));
  long evals = 0;
  auto integrate_linear = [&](const Scalar& a, const Scalar& b) {
    Scalar total = Scalar::zero(bits);
    auto lo = std::upper_bound(disc.begin(), disc.end(), a, [](const Scalar& v, const Scalar& d) { return v < d; });
    Scalar cur = a;
    for (auto it = lo; it != disc.end() && *it < b; ++it) {
      if (*it > cur) {
        auto qr = integrate_adaptive(integrand, cur, *it, tol, eval_budget - evals);
        evals += qr.evaluations;
        total += qr.value;
      }
      cur = *it;
    }
    auto qr = integrate_adaptive(integrand, cur, b, tol, eval_budget - evals);
    evals += qr.evaluations;
    total += qr.value;
    return total;
  };

  const bool do_exact = static_cast<double>(q) * static_cast<double>(rep.entries.size()) <= 4e6;
  rep.max_abs = Scalar::zero(bits);
  rep.max_quad_error = Scalar::zero(bits);
  for (auto& e : rep.entries) {
    Scalar end = e.start + rep.len;
    if (end > L) e.integral = integrate_linear(e.start, L) + integrate_linear(Scalar::zero(bits), end - L);
    else e.integral = integrate_linear(e.start, end);
    rep.max_abs = max(rep.max_abs, abs(e.integral));
    if (do_exact) {
      Scalar acc = Scalar::zero(bits);
      Scalar t = e.start;
      for (long i = 0; i < q; ++i) {
        acc += fn_integral_arc(f, t, rep.len);
        r.step(t);
      }
      e.exact = acc;
      e.exact_known = true;
      rep.max_quad_error = max(rep.max_quad_error, abs(e.exact - e.integral));
    }
  }
  rep.evaluations = evals;
  rep.slack = rep.max_abs.is_zero() ? Scalar::zero(bits) : rep.bound / rep.max_abs;
  rep.pass = !(rep.max_abs > rep.bound + rep.quad_tol);
  return rep;
}

}  // namespace ietlab
