#include "ietlab/essval.hpp"

#include <algorithm>
#include <random>

#include "ietlab/error.hpp"

namespace ietlab {

namespace {

Rotation unit_rotation(const Scalar& alpha) { return Rotation(Scalar::from_int(1, alpha.bits()), alpha); }

// half-open intervals on [0, 1), sorted and disjoint
using Intervals = std::vector<std::pair<Scalar, Scalar>>;

void add_arc(Intervals& out, const Scalar& start, const Scalar& width) {
  Scalar end = start + width;
  if (end > 1) {
    out.emplace_back(start, Scalar::from_int(1, start.bits()));
    out.emplace_back(Scalar::zero(start.bits()), end - 1);
  } else {
    out.emplace_back(start, end);
  }
}

Scalar total_length(const Intervals& v) {
  Scalar s = Scalar::zero(v.empty() ? default_bits() : v[0].first.bits());
  for (auto& [a, b] : v) s += b - a;
  return s;
}

Scalar overlap(Intervals x, Intervals y) {
  auto by_start = [](const auto& p, const auto& q) { return p.first < q.first; };
  std::sort(x.begin(), x.end(), by_start);
  std::sort(y.begin(), y.end(), by_start);
  Scalar s = Scalar::zero(x.empty() ? default_bits() : x[0].first.bits());
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const Scalar& lo = max(x[i].first, y[j].first);
    const Scalar& hi = min(x[i].second, y[j].second);
    if (lo < hi) s += hi - lo;
    if (x[i].second < y[j].second) ++i; else ++j;
  }
  return s;
}

}  // namespace

Scalar XiSets::cut(long j) const { return unit_rotation(alpha).power(j <= m ? u : u_late, j); }

Arc XiSets::j1(long j) const {
  return Arc{unit_rotation(alpha).power(w, j), j <= m ? width1 : width1_late};
}

Arc XiSets::j2(long j) const { return Arc{cut(j), j <= m ? width2 : width2_late}; }

Scalar XiSets::measure1() const { return width1 * (m + 1) + width1_late * (q - m - 1); }
Scalar XiSets::measure2() const { return width2 * (m + 1) + width2_late * (q - m - 1); }

XiSets build_xi_sets(const ContinuedFraction& cf, int k, const Scalar& beta) {
  if (k < 0 || k + 1 > cf.depth()) throw Error(ErrorKind::IndexOutOfRange, "scale " + std::to_string(k) + " beyond stored convergents");
  if (beta.sign() < 0 || !(beta < 1)) throw Error(ErrorKind::OutOfDomain, "beta outside [0, 1)");
  if (!cf.q(k + 1).fits_slong_p()) throw Error(ErrorKind::OrbitBudgetExceeded, "q_{k+1} too large");
  XiSets xi;
  xi.k = k;
  xi.q = cf.q(k + 1).get_si();
  xi.alpha = cf.value();
  xi.l = cf.qnorm(k);
  xi.w = cf.qnorm(k + 1);
  xi.b = xi.l + xi.w;
  xi.beta = beta;
  xi.sigma_next = cf.sigma(k + 1);
  Rotation r = unit_rotation(xi.alpha);
  Scalar y = beta;
  long m = -1;
  for (long j = 0; j < xi.q; ++j) {
    if (!(y < xi.w) && y < xi.b) {
      m = j;
      break;
    }
    r.step_inverse(y);
  }
  if (m < 0) throw Error(ErrorKind::BetaInSmallTower, "beta is not on the large tower at scale " + std::to_string(k));
  xi.m = m;
  xi.u = y;
  xi.u_late = xi.sigma_next > 0 ? y - xi.w : y + xi.w;
  if (!(xi.u > xi.w))
    throw Error(ErrorKind::DegenerateXiSets, "cut sits on the base edge, J^1 is empty");
  if (m + 1 < xi.q && (!(xi.u_late > xi.w) || !(xi.u_late < xi.b)))
    throw Error(ErrorKind::DegenerateXiSets,
                "cut for levels above m is u " + std::string(xi.sigma_next > 0 ? "-" : "+") + " w = " +
                    xi.u_late.to_string(10) + ", outside (" + xi.w.to_string(10) + ", " + xi.b.to_string(10) + ")");
  xi.width1 = xi.u - xi.w;
  xi.width2 = xi.b - xi.u;
  xi.width1_late = xi.u_late - xi.w;
  xi.width2_late = xi.b - xi.u_late;
  return xi;
}

EssentialValueReport criterion_check(const XiSets& xi, const PiecewiseSmoothFn& f, const Scalar& a1,
                                     const Scalar& a2, const Scalar& epsilon, long max_fibers, std::uint64_t seed) {
  const int bits = xi.alpha.bits();
  if (!(f.domain() == 1)) throw Error(ErrorKind::InvalidArgument, "Xi experiments run on the unit circle");
  // normalisation: jump -1 at beta
  {
    Scalar tol = ldexp_one(16 - bits, bits);
    auto jumps = f.jump_values();
    bool ok = false;
    for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
      if (abs(f.breakpoints()[i] - xi.beta) > tol) continue;
      ok = !(abs(jumps[i] + 1) > tol);
      if (!ok)
        throw Error(ErrorKind::JumpNotNormalized, "jump at beta is " + jumps[i].to_string(10) + ", expected -1");
    }
    if (!ok) throw Error(ErrorKind::JumpNotNormalized, "beta is not a breakpoint of f");
  }

  EssentialValueReport rep;
  rep.k = xi.k;
  rep.q = xi.q;
  rep.a1 = a1;
  rep.a2 = a2;
  rep.epsilon = epsilon;
  const long q = xi.q;
  Rotation r = unit_rotation(xi.alpha);
  BirkhoffEngine eng(Map(r), f);
  Scalar eta = ldexp_one(-bits / 2, bits);

  // (1)
  rep.measure_xi1 = xi.measure1();
  rep.measure_xi2 = xi.measure2();
  rep.tower_measure = xi.l * q;
  // (2)
  rep.rigidity = xi.w;
  rep.rigidity_sampled = Scalar::zero(bits);

  // sample positions in base coordinates: J^1 {w, mid, u-eta}, J^2 {u+eta, mid, b-eta}
  auto positions = [&](const Scalar& cutp) {
    return std::vector<Scalar>{xi.w, (xi.w + cutp) / 2, cutp - eta, cutp + eta, (cutp + xi.b) / 2, xi.b - eta};
  };
  const auto early = positions(xi.u), late = positions(xi.u_late);

  auto fold = [&](long j, const std::vector<Scalar>& s) {
    FiberSample fs;
    fs.j = j;
    fs.omega_minus = s[2];
    fs.omega_plus = s[3];
    fs.dev1 = max(max(abs(s[0] - a1), abs(s[1] - a1)), abs(s[2] - a1));
    fs.dev2 = max(max(abs(s[3] - a2), abs(s[4] - a2)), abs(s[5] - a2));
    fs.osc1 = max(abs(s[0] - s[2]), abs(s[1] - s[2]));
    fs.osc2 = max(abs(s[4] - s[3]), abs(s[5] - s[3]));
    rep.fibers.push_back(std::move(fs));
  };

  if (max_fibers <= 0 || max_fibers >= q) {
    rep.full_sweep = true;
    const long n_early = xi.m + 1, n_late = q - xi.m - 1;
    std::vector<std::vector<Scalar>> we, wl;
    for (auto& p : early) we.push_back(eng.window(p, q, n_early)[0]);
    if (n_late > 0)
      for (auto& p : late) wl.push_back(eng.window(r.power(p, xi.m + 1), q, n_late)[0]);
    for (long j = 0; j < q; ++j) {
      std::vector<Scalar> s;
      for (int i = 0; i < 6; ++i) s.push_back(j <= xi.m ? we[i][j] : wl[i][j - n_early]);
      fold(j, s);
    }
  } else {
    rep.full_sweep = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> pick(0, q - 1);
    std::vector<long> js;
    for (long i = 0; i < max_fibers; ++i) js.push_back(pick(rng));
    std::sort(js.begin(), js.end());
    js.erase(std::unique(js.begin(), js.end()), js.end());
    for (long j : js) {
      const auto& base = j <= xi.m ? early : late;
      std::vector<Scalar> s;
      for (auto& p : base) s.push_back(eng.sum(r.power(p, j), q));
      fold(j, s);
    }
  }
  rep.fibers_sampled = static_cast<long>(rep.fibers.size());
  for (const Scalar& p : early) {
    Scalar d = abs(r.circle_delta(p, r.power(p, q)));
    rep.rigidity_sampled = max(rep.rigidity_sampled, d);
  }

  // (4)
  rep.sup_dev1 = Scalar::zero(bits);
  rep.sup_dev2 = Scalar::zero(bits);
  rep.omega_gap_error = Scalar::zero(bits);
  rep.mean1 = Scalar::zero(bits);
  rep.mean2 = Scalar::zero(bits);
  for (auto& fs : rep.fibers) {
    rep.sup_dev1 = max(rep.sup_dev1, fs.dev1);
    rep.sup_dev2 = max(rep.sup_dev2, fs.dev2);
    rep.omega_gap_error = max(rep.omega_gap_error, abs(fs.omega_plus - fs.omega_minus + 1));
    rep.mean1 += fs.omega_minus;
    rep.mean2 += fs.omega_plus;
  }
  rep.mean1 /= rep.fibers_sampled;
  rep.mean2 /= rep.fibers_sampled;
  rep.pass1 = !(rep.sup_dev1 > epsilon);
  rep.pass2 = !(rep.sup_dev2 > epsilon);

  // (3) exact: every J is an arc, R only moves arcs by alpha
  Intervals x1, x2, rx1, rx2;
  Scalar start = xi.w;
  for (long j = 0; j < q; ++j) {
    const Scalar& c = j <= xi.m ? xi.u : xi.u_late;
    Scalar w1 = j <= xi.m ? xi.width1 : xi.width1_late;
    Scalar w2 = j <= xi.m ? xi.width2 : xi.width2_late;
    Scalar cj = r.power(c, j);
    add_arc(x1, start, w1);
    add_arc(x2, cj, w2);
    Scalar s1 = start, s2 = cj;
    r.step(s1);
    r.step(s2);
    add_arc(rx1, s1, w1);
    add_arc(rx2, s2, w2);
    r.step(start);
  }
  rep.sym_diff1 = total_length(x1) + total_length(rx1) - 2 * overlap(x1, rx1);
  rep.sym_diff2 = total_length(x2) + total_length(rx2) - 2 * overlap(x2, rx2);
  Scalar widest = max(max(xi.width1, xi.width2), max(xi.width1_late, xi.width2_late));
  rep.sym_diff_bound = 4 * widest + 2 * xi.w;

  // continuity: R^{-i} g strictly inside a fiber other than at the cut
  {
    Scalar tol = ldexp_one(16 - bits, bits);
    auto jumps = f.jump_values();
    for (std::size_t g = 0; g < f.breakpoints().size(); ++g) {
      if (!(abs(jumps[g]) > tol)) continue;
      Scalar y = f.breakpoints()[g];
      for (long t = 0; t < 2 * q - 1; ++t) {
        if (y - xi.w > eta && xi.b - y > eta) {
          // levels j = t - i for i in [max(0, t-q+1), min(q-1, t)]
          long jlo = t - std::min(q - 1, t), jhi = t - std::max(0L, t - q + 1);
          long early_lo = jlo, early_hi = std::min(jhi, xi.m);
          long n_early = early_hi >= early_lo ? early_hi - early_lo + 1 : 0;
          long n_late = (jhi - jlo + 1) - n_early;
          if (abs(y - xi.u) > eta) rep.continuity_violations += n_early;
          if (abs(y - xi.u_late) > eta) rep.continuity_violations += n_late;
        }
        r.step_inverse(y);
      }
    }
  }
  return rep;
}

MvtReport mvt_bound_check(const XiSets& xi, const PiecewiseSmoothFn& f, const EssentialValueReport& ev) {
  const int bits = xi.alpha.bits();
  MvtReport rep;
  rep.var_df = fn_variation(fn_derivative(f));
  rep.osc_bound = xi.l * rep.var_df;
  rep.c_k = xi.w * fn_variation(f);
  rep.integral_bound = rep.c_k + 2 * xi.l * xi.l * rep.var_df;
  rep.slack = ldexp_one(48 - bits, bits) * xi.q;
  rep.max_osc1 = Scalar::zero(bits);
  rep.max_osc2 = Scalar::zero(bits);
  rep.max_integral = Scalar::zero(bits);
  for (auto& fs : ev.fibers) {
    rep.max_osc1 = max(rep.max_osc1, fs.osc1);
    rep.max_osc2 = max(rep.max_osc2, fs.osc2);
    const bool early = fs.j <= xi.m;
    Scalar in = (early ? xi.width1 : xi.width1_late) * fs.omega_minus + (early ? xi.width2 : xi.width2_late) * fs.omega_plus;
    rep.max_integral = max(rep.max_integral, abs(in));
  }
  rep.pass_osc = !(max(rep.max_osc1, rep.max_osc2) > rep.osc_bound + rep.slack);
  rep.pass_integral = !(rep.max_integral > rep.integral_bound + rep.slack);
  return rep;
}

FraczekReport fraczek_condition(const ContinuedFraction& cf, const std::vector<Scalar>& discontinuities,
                                const std::vector<int>& subsequence, const Scalar& margin) {
  const int bits = cf.bits();
  FraczekReport rep;
  rep.indices = subsequence;
  rep.fractions.assign(discontinuities.size(), {});
  for (int n : subsequence) {
    Scalar qn = Scalar::from_mpz(cf.q(n), bits);
    rep.q2_scores.push_back(qn * qn * cf.qnorm(n));
    for (std::size_t i = 0; i < discontinuities.size(); ++i) {
      const int wide = bits + static_cast<int>(mpz_sizeinbase(cf.q(n).get_mpz_t(), 2)) + 2;
      rep.fractions[i].push_back(frac(discontinuities[i].with_bits(wide) * cf.q(n)).with_bits(bits));
    }
  }
  rep.scores_decreasing = !rep.q2_scores.empty();
  for (std::size_t i = 1; i < rep.q2_scores.size(); ++i)
    if (!(rep.q2_scores[i] < rep.q2_scores[i - 1])) rep.scores_decreasing = false;
  for (auto& fr : rep.fractions) rep.gamma.push_back(fr.empty() ? Scalar::zero(bits) : fr.back());
  rep.min_separation = Scalar::from_int(1, bits);
  for (std::size_t i = 0; i < rep.gamma.size(); ++i)
    for (std::size_t j = i + 1; j < rep.gamma.size(); ++j) {
      Scalar d = abs(rep.gamma[i] - rep.gamma[j]);
      d = min(d, 1 - d);
      rep.min_separation = min(rep.min_separation, d);
    }
  rep.plausible = rep.scores_decreasing && rep.min_separation > margin;
  return rep;
}

}  // namespace ietlab
