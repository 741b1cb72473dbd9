#include "ietlab/experiments.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ietlab/error.hpp"
#include "ietlab/parallel.hpp"

namespace ietlab {

namespace {

using Field = std::string;

Error config_error(const std::string& msg, const Field& f) { return Error(ErrorKind::ConfigError, msg, f); }

const Json* find(const Json& d, const char* key) {
  if (!d.is_object()) return nullptr;
  auto it = d.find(key);
  return it == d.end() ? nullptr : &*it;
}

const Json& require(const Json& d, const char* key, const Field& prefix = {}) {
  const Json* j = find(d, key);
  if (!j) throw config_error("required field missing", prefix + key);
  return *j;
}

long get_long(const Json& d, const char* key, long def, long lo, long hi, const Field& prefix = {}) {
  const Json* j = find(d, key);
  if (!j) return def;
  if (!j->is_number_integer()) throw config_error("expected an integer", prefix + key);
  long v = j->get<long>();
  if (v < lo || v > hi)
    throw config_error("must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", prefix + key);
  return v;
}

std::string get_string(const Json& d, const char* key, const std::string& def, const Field& prefix = {}) {
  const Json* j = find(d, key);
  if (!j) return def;
  if (!j->is_string()) throw config_error("expected a string", prefix + key);
  return j->get<std::string>();
}

std::optional<Scalar> get_real(const Json& d, const char* key, int bits, const Field& prefix = {}) {
  const Json* j = find(d, key);
  if (!j) return std::nullopt;
  return scalar_from_json(*j, bits, prefix + key);
}

std::vector<int> get_int_list(const Json& d, const char* key, const Field& prefix = {}) {
  const Json* j = find(d, key);
  std::vector<int> out;
  if (!j) return out;
  if (!j->is_array()) throw config_error("expected an integer array", prefix + key);
  for (std::size_t i = 0; i < j->size(); ++i) {
    if (!(*j)[i].is_number_integer())
      throw config_error("expected an integer", prefix + key + "[" + std::to_string(i) + "]");
    out.push_back((*j)[i].get<int>());
  }
  return out;
}

Scalar one(int bits) { return Scalar::from_int(1, bits); }

Rotation unit_rotation(const ContinuedFraction& cf) { return Rotation(one(cf.bits()), cf.value()); }

// the alpha field as a plain real: any alpha spec, or a number/string
Scalar alpha_value(const Json& j, int bits, const Field& field) {
  if ((j.is_string() && j.get<std::string>() == "golden") ||
      (j.is_object() && (j.contains("quotients") || j.contains("value"))))
    return alpha_from_json(j, bits, field).value();
  Scalar a = scalar_from_json(j, bits, field);
  if (!(a > 0) || !(a < 1)) throw config_error("alpha must lie in (0, 1)", field);
  return a;
}

void check_scale_index(const ContinuedFraction& cf, int n, const Field& f) {
  if (n < 0 || n + 1 > cf.depth())
    throw config_error("scale needs q_" + std::to_string(n + 1) + "; stored depth is " + std::to_string(cf.depth()), f);
}

long to_long_checked(const mpz_class& z, const std::string& what) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::OrbitBudgetExceeded, what + " does not fit a long");
  return z.get_si();
}

// ---- kinds ----

Artifacts run_cfrac(const ExperimentConfig& c) {
  const Json& d = c.doc;
  ContinuedFraction cf = alpha_from_json(require(d, "alpha"), c.bits, "alpha");
  Json pj = find(d, "profile") ? d.at("profile") : Json::object();
  Scalar eps = get_real(pj, "epsilon", c.bits, "profile.").value_or(Scalar::parse("0.1", c.bits));
  int k = static_cast<int>(get_long(pj, "k", 2, 0, 64, "profile."));
  long threshold = get_long(pj, "threshold", 100, 1, 1L << 40, "profile.");
  DiophantineProfile prof = diophantine_profile(cf, eps, k, threshold);
  std::string problems = validate(cf);

  Artifacts a;
  a.report["alpha"] = to_json(cf);
  a.report["validation"] = problems.empty() ? "ok" : problems;
  a.report["profile"] = Json{{"epsilon", eps.to_string()},
                             {"k", k},
                             {"threshold", threshold},
                             {"roth_min", prof.roth_min.to_string(20)},
                             {"big_quotient_indices", prof.big_quotient_indices}};
  Csv t{{"n", "a_n", "p_n", "q_n", "qnorm", "sigma", "roth_score", "sk0_score"}, {}};
  for (int n = 0; n <= cf.depth(); ++n) {
    const int i = n - prof.first_index;
    t.add({std::to_string(n), std::to_string(cf.a(n)), cf.p(n).get_str(), cf.q(n).get_str(), cell(cf.qnorm(n)),
           std::to_string(cf.sigma(n)), cell(prof.roth_scores[i]), cell(prof.sk0_scores[i])});
  }
  a.tables.emplace_back("convergents", std::move(t));
  return a;
}

Map map_from(const Json& d, int bits) {
  const Json* al = find(d, "alpha");
  const Json* la = find(d, "lambda");
  if ((al != nullptr) == (la != nullptr)) throw config_error("exactly one of alpha and lambda is required", al ? "lambda" : "alpha");
  if (al) return Rotation(one(bits), alpha_value(*al, bits, "alpha"));
  return iet3_from_json(*la, bits, "lambda");
}

Artifacts run_orbit(const ExperimentConfig& c) {
  const Json& d = c.doc;
  Map m = map_from(d, c.bits);
  long n = get_long(d, "n", 1000, 1, c.orbit_budget);
  Scalar x = get_real(d, "x", c.bits).value_or(Scalar::zero(c.bits));
  if (x.sign() < 0 || !(x < domain_length(m))) throw config_error("start outside the domain", "x");
  OrbitSample s = orbit(m, x, n);

  Artifacts a;
  a.report["map"] = std::holds_alternative<Iet3>(m) ? to_json(std::get<Iet3>(m)) : to_json(std::get<Rotation>(m));
  a.report["description"] = s.map_id;
  a.report["n"] = n;
  a.report["start"] = to_json(s.start);
  a.report["end"] = to_json(s.points.back());
  a.report["star_discrepancy"] = star_discrepancy(s.points, domain_length(m)).to_string(20);
  if (auto* t = std::get_if<Iet3>(&m)) {
    long horizon = get_long(d, "keane_horizon", std::min(n, 1000L), 1, c.orbit_budget);
    a.report["keane"] = to_json(keane_check(*t, horizon, ldexp_one(-c.bits / 2, c.bits)));
  }
  Csv t{{"index", "point"}, {}};
  for (std::size_t i = 0; i < s.points.size(); ++i) t.add({std::to_string(i), cell(s.points[i])});
  a.tables.emplace_back("orbit", std::move(t));
  return a;
}

Artifacts run_induce(const ExperimentConfig& c) {
  const Json& d = c.doc;
  Iet3 t = iet3_from_json(require(d, "lambda"), c.bits, "lambda");
  PiecewiseSmoothFn f = cocycle_spec(find(d, "cocycle") ? d.at("cocycle") : Json("sin"), t.total(), c.bits, "cocycle");
  long samples = get_long(d, "samples", 1000, 1, 10'000'000);
  InducedSystem sys = induce(t, f);
  InductionReport rep = verify_induction(sys, samples, c.seed);

  Artifacts a;
  a.report["induced"] = to_json(sys);
  a.report["verification"] = to_json(rep);
  Csv tab{{"index", "breakpoint", "jump"}, {}};
  auto jumps = sys.jumps();
  for (std::size_t i = 0; i < jumps.size(); ++i)
    tab.add({std::to_string(i), cell(sys.induced_fn.breakpoints()[i]), cell(jumps[i])});
  a.tables.emplace_back("breakpoints", std::move(tab));
  return a;
}

Artifacts run_dk(const ExperimentConfig& c) {
  const Json& d = c.doc;
  ContinuedFraction cf = alpha_from_json(require(d, "alpha"), c.bits, "alpha");
  Rotation r = unit_rotation(cf);
  PiecewiseSmoothFn f = cocycle_spec(find(d, "cocycle") ? d.at("cocycle") : Json("sin"), one(c.bits), c.bits, "cocycle",
                                     std::nullopt, cf.value());
  long qmax = get_long(d, "qmax", 100000, 1, c.orbit_budget);
  long grid = get_long(d, "grid", 256, 1, 1'000'000);
  std::vector<int> idx = get_int_list(d, "indices");
  if (idx.empty())
    for (int n = 1; n <= cf.depth(); ++n)
      if (cf.q(n) <= qmax) idx.push_back(n);
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (idx[i] < 0 || idx[i] > cf.depth())
      throw config_error("index beyond stored convergents", "indices[" + std::to_string(i) + "]");

  Artifacts a;
  Json rows = Json::array();
  Csv tab{{"n", "q_n", "max_f", "max_df", "var_f", "var_df", "pass_f", "pass_df"}, {}};
  long violations = 0;
  for (int n : idx) {
    DkReport rep = dk_verify(f, r, cf, n, grid);
    violations += (rep.pass_f ? 0 : 1) + (rep.pass_df ? 0 : 1);
    rows.push_back(to_json(rep));
    tab.add({std::to_string(n), rep.q.get_str(), cell(rep.max_f), cell(rep.max_df), cell(rep.var_f), cell(rep.var_df),
             rep.pass_f ? "1" : "0", rep.pass_df ? "1" : "0"});
  }
  a.report["alpha"] = cf.value().to_string(30);
  a.report["cocycle"] = to_json(f);
  a.report["scales"] = rows;
  a.report["violations"] = violations;
  a.tables.emplace_back("dk", std::move(tab));

  if (const Json* sw = find(d, "sweep")) {
    int n = static_cast<int>(get_long(*sw, "n", idx.empty() ? 1 : idx.back(), 0, cf.depth(), "sweep."));
    long points = get_long(*sw, "points", 64, 1, 1'000'000, "sweep.");
    long q = to_long_checked(cf.q(n), "q_n");
    BirkhoffEngine eng(Map(r), f, c.orbit_budget);
    std::vector<Scalar> vals(points, Scalar::zero(c.bits));
    parallel_for(static_cast<std::size_t>(points),
                 [&](std::size_t i) { vals[i] = eng.sum(one(c.bits) * static_cast<long>(i) / points, q); });
    Csv s{{"point", "S_nf"}, {}};
    for (long i = 0; i < points; ++i) s.add({cell(one(c.bits) * i / points), cell(vals[i])});
    a.tables.emplace_back("sweep", std::move(s));
  }
  if (const Json* si = find(d, "small_integral")) {
    int k = static_cast<int>(get_long(*si, "k", 1, 0, cf.depth(), "small_integral."));
    check_scale_index(cf, k, "small_integral.k");
    long random = get_long(*si, "random", 64, 0, 1'000'000, "small_integral.");
    a.report["small_integral"] = to_json(small_integral_check(f, r, cf, k, random, c.seed));
  }
  return a;
}

Artifacts run_tower(const ExperimentConfig& c) {
  const Json& d = c.doc;
  ContinuedFraction cf = alpha_from_json(require(d, "alpha"), c.bits, "alpha");
  int n = static_cast<int>(get_long(d, "n", 1, 0, cf.depth()));
  check_scale_index(cf, n, "n");
  Scalar z = get_real(d, "z", c.bits).value_or(Scalar::zero(c.bits));
  if (z.sign() < 0 || !(z < 1)) throw config_error("shift outside [0, 1)", "z");
  RokhlinTower t = build_tower(cf, n, z);

  Artifacts a;
  a.report["tower"] = to_json(t);
  if (const Json* pts = find(d, "locate")) {
    if (!pts->is_array()) throw config_error("expected an array of points", "locate");
    Json locs = Json::array();
    for (std::size_t i = 0; i < pts->size(); ++i) {
      const Field f = "locate[" + std::to_string(i) + "]";
      Scalar x = scalar_from_json((*pts)[i], c.bits, f);
      if (x.sign() < 0 || !(x < 1)) throw config_error("point outside [0, 1)", f);
      auto loc = locate(t, x);
      if (loc)
        locs.push_back(Json{{"x", x.to_string(20)}, {"tower", to_string(loc->which)}, {"level", loc->level},
                            {"offset", loc->offset.to_string(20)}});
      else
        locs.push_back(Json{{"x", x.to_string(20)}, {"tower", nullptr}});
    }
    a.report["locations"] = locs;
  }
  if (const Json* bj = find(d, "balanced")) {
    Scalar delta = get_real(*bj, "delta", c.bits, "balanced.").value_or(sqrt(Scalar::parse("0.5", c.bits)));
    Scalar bz = get_real(*bj, "z", c.bits, "balanced.").value_or(z);
    std::vector<int> scales = get_int_list(*bj, "scales", "balanced.");
    if (scales.empty()) scales.push_back(n);
    for (std::size_t i = 0; i < scales.size(); ++i)
      check_scale_index(cf, scales[i], "balanced.scales[" + std::to_string(i) + "]");
    if (!(delta > 0) || !(delta < 1)) throw config_error("delta must lie in (0, 1)", "balanced.delta");
    BalancedReport br = balanced_report(cf, bz, delta, scales);
    a.report["balanced"] = to_json(br);
    Csv tab{{"scale", "b_k", "offset", "epsilon_k", "m_k"}, {}};
    for (auto& s : br.scales) tab.add({std::to_string(s.k), cell(s.b), cell(s.offset), cell(s.epsilon), std::to_string(s.m)});
    a.tables.emplace_back("balanced", std::move(tab));
  }
  return a;
}

Artifacts run_essval(const ExperimentConfig& c) {
  const Json& d = c.doc;
  Json flagship = Json{{"quotients", {1, 1, 1, 1, 1, 1000}}};
  ContinuedFraction cf = alpha_from_json(find(d, "alpha") ? d.at("alpha") : flagship, c.bits, "alpha");
  // default scale: n with the largest a_{n+1} among the given quotients
  int kdef = 0;
  for (int n = 0; n + 1 <= std::max(cf.prefix_length(), 1) && n + 1 <= cf.depth(); ++n)
    if (cf.a(n + 1) > cf.a(kdef + 1)) kdef = n;
  int k = static_cast<int>(get_long(d, "k", kdef, 0, cf.depth()));
  check_scale_index(cf, k, "k");
  Scalar delta = get_real(d, "delta", c.bits).value_or(sqrt(Scalar::parse("0.5", c.bits)));
  if (!(delta > 0) || !(delta < 1)) throw config_error("delta must lie in (0, 1)", "delta");
  long m = get_long(d, "m", 0, 0, c.orbit_budget);
  Scalar beta = construct_balanced_beta(cf, delta, k, m);
  PiecewiseSmoothFn f = cocycle_spec(find(d, "cocycle") ? d.at("cocycle") : Json("sawtooth"), one(c.bits), c.bits,
                                     "cocycle", beta, cf.value());
  Scalar a1 = get_real(d, "a1", c.bits).value_or(1 - delta);
  Scalar a2 = get_real(d, "a2", c.bits).value_or(-delta);
  Scalar eps = get_real(d, "epsilon", c.bits)
                   .value_or(Scalar::from_int(5, c.bits) / cf.a(k + 1) + fn_variation(fn_derivative(f)) * cf.qnorm(k));
  long max_fibers = get_long(d, "max_fibers", 0, 0, c.orbit_budget);

  XiSets xi = build_xi_sets(cf, k, beta);
  EssentialValueReport ev = criterion_check(xi, f, a1, a2, eps, max_fibers, c.seed);
  MvtReport mvt = mvt_bound_check(xi, f, ev);

  Artifacts a;
  a.report["alpha"] = cf.value().to_string(30);
  a.report["beta"] = to_json(beta);
  a.report["cocycle"] = to_json(f);
  a.report["xi"] = to_json(xi);
  a.report["conditions"] = to_json(ev);
  a.report["mvt"] = to_json(mvt);
  a.report["cluster_separation"] = (ev.mean1 - ev.mean2).to_string(20);
  Csv tab{{"j", "J1", "J2", "omega_minus", "omega_plus"}, {}};
  for (auto& fs : ev.fibers) {
    const bool early = fs.j <= xi.m;
    tab.add({std::to_string(fs.j), cell(early ? xi.width1 : xi.width1_late), cell(early ? xi.width2 : xi.width2_late),
             cell(fs.omega_minus), cell(fs.omega_plus)});
  }
  a.tables.emplace_back("fibers", std::move(tab));
  return a;
}

Csv grid_table(const TransferSolution& s, const Scalar& domain, long points) {
  Csv t{{"x", "g"}, {}};
  for (long i = 0; i < points; ++i) {
    Scalar x = domain * i / points;
    t.add({cell(x), cell(s.eval(x))});
  }
  return t;
}

Artifacts run_cohom(const ExperimentConfig& c) {
  const Json& d = c.doc;
  const std::string method = get_string(d, "method", "");
  if (method.empty()) throw config_error("required field missing", "method");
  long grid = get_long(d, "grid", 1024, 2, 10'000'000);
  long points = get_long(d, "points", 256, 1, 10'000'000);
  Artifacts a;
  a.report["method"] = method;

  if (method == "fourier" || method == "closed_form" || method == "chi") {
    Scalar alpha = alpha_value(require(d, "alpha"), c.bits, "alpha");
    auto solve = [&]() -> TransferSolution {
      if (method == "closed_form") return sin_transfer(alpha, grid);
      if (method == "chi") return chi_transfer(alpha, grid);
      PiecewiseSmoothFn f =
          cocycle_spec(find(d, "cocycle") ? d.at("cocycle") : Json("sin"), one(c.bits), c.bits, "cocycle");
      int modes = static_cast<int>(get_long(d, "modes", std::max(f.max_mode(), 1), 1, 1 << 20));
      return solve_fourier(f, alpha, modes, grid);
    };
    TransferSolution s = solve();
    a.report["solution"] = to_json(s);
    a.tables.emplace_back("transfer", grid_table(s, one(c.bits), points));
  } else if (method == "growth") {
    ContinuedFraction cf = alpha_from_json(require(d, "alpha"), c.bits, "alpha");
    PiecewiseSmoothFn f = cocycle_spec(find(d, "cocycle") ? d.at("cocycle") : Json("sin"), one(c.bits), c.bits,
                                       "cocycle", std::nullopt, cf.value());
    int depth = static_cast<int>(get_long(d, "depth", 15, 1, cf.depth()));
    GrowthReport g = growth_diagnostic(f, unit_rotation(cf), cf, depth, get_long(d, "grid", 256, 1, 1'000'000));
    a.report["growth"] = to_json(g);
    Csv t{{"n", "q_n", "M_n"}, {}};
    for (std::size_t i = 0; i < g.n.size(); ++i) t.add({std::to_string(g.n[i]), g.q[i].get_str(), cell(g.m[i])});
    a.tables.emplace_back("growth", std::move(t));
  } else if (method == "nonergodic") {
    ContinuedFraction cf = alpha_from_json(require(d, "alpha"), c.bits, "alpha");
    long m = get_long(d, "m", 1, 1, c.orbit_budget);
    if (!find(d, "m")) throw config_error("required field missing", "m");
    const Json spec = find(d, "cocycle") ? d.at("cocycle") : Json("step");
    NonergodicExample ex = nonergodic_example(cf, m, [&](const Scalar& beta) {
      return cocycle_spec(spec, one(c.bits), c.bits, "cocycle", beta, cf.value());
    });
    a.report["rotation"] = to_json(ex.rotation);
    a.report["beta"] = to_json(ex.beta);
    a.report["cocycle"] = to_json(ex.f);
    a.report["certificate"] = to_json(ex.certificate);
    Csv t{{"breakpoint", "jump", "steps", "point", "on_discontinuity"}, {}};
    for (auto& v : ex.certificate.visits)
      t.add({cell(v.breakpoint), cell(v.jump), std::to_string(v.steps), cell(v.point), v.on_discontinuity ? "1" : "0"});
    a.tables.emplace_back("visits", std::move(t));
  } else if (method == "lift") {
    Iet3 t = iet3_from_json(require(d, "lambda"), c.bits, "lambda");
    PiecewiseSmoothFn f = cocycle_spec(require(d, "cocycle"), t.total(), c.bits, "cocycle");
    InducedSystem sys = induce(t, f);
    PiecewiseSmoothFn ft = simplify(sys.induced_fn, ldexp_one(48 - c.bits, c.bits));
    if (!is_pure_trig(ft))
      throw Error(ErrorKind::NotACoboundary, "induced cocycle is not a single trig piece; no closed-form solver applies",
                  "cocycle");
    int modes = static_cast<int>(get_long(d, "modes", std::max(ft.max_mode(), 1), 1, 1 << 20));
    TransferSolution h = solve_fourier(ft, sys.rotation.angle(), modes, grid);
    TransferSolution s = lift_solution(sys, h, grid);
    a.report["induced"] = to_json(sys);
    a.report["induced_solution"] = to_json(h);
    a.report["solution"] = to_json(s);
    const GridFunction& gf = std::get<GridFunction>(s.g);
    Csv tab{{"x", "h"}, {}};
    for (std::size_t i = 0; i < gf.x.size(); ++i) tab.add({cell(gf.x[i]), cell(gf.values[i])});
    a.tables.emplace_back("lift", std::move(tab));
  } else {
    throw config_error("unknown method (fourier, closed_form, chi, growth, nonergodic, lift)", "method");
  }
  return a;
}

Artifacts run_classify(const ExperimentConfig& c) {
  const Json& d = c.doc;
  Iet3 t = iet3_from_json(require(d, "lambda"), c.bits, "lambda");
  PiecewiseSmoothFn f = cocycle_spec(require(d, "cocycle"), t.total(), c.bits, "cocycle");
  std::optional<NonergodicCertificate> witness;
  Artifacts a;
  if (const Json* w = find(d, "witness")) {
    ContinuedFraction cf = alpha_from_json(require(*w, "alpha", "witness."), c.bits, "witness.alpha");
    if (!find(*w, "m")) throw config_error("required field missing", "witness.m");
    long m = get_long(*w, "m", 1, 1, c.orbit_budget, "witness.");
    witness = nonergodic_example(cf, m).certificate;
    a.report["witness"] = to_json(*witness);
  }
  ErgodicityVerdict v = predict_ergodicity(t, f, witness);
  a.report["lambda"] = to_json(t);
  a.report["cocycle"] = to_json(f);
  a.report["verdict"] = to_json(v);
  return a;
}

}  // namespace

ContinuedFraction alpha_from_json(const Json& j, int bits, const std::string& field) {
  if (j.is_string()) {
    if (j.get<std::string>() != "golden") throw config_error("unknown alpha name (only \"golden\")", field);
    return cf_realize({}, TailPolicy::golden(), bits, 40);
  }
  if (!j.is_object()) throw config_error("alpha must be \"golden\" or an object", field);
  if (j.contains("quotients")) {
    const Json& q = j.at("quotients");
    if (!q.is_array()) throw config_error("expected an integer array", field + ".quotients");
    std::vector<long> a;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (!q[i].is_number_integer() || q[i].get<long>() < 1)
        throw config_error("quotients must be integers >= 1", field + ".quotients[" + std::to_string(i) + "]");
      a.push_back(q[i].get<long>());
    }
    std::vector<long> tail{1};
    if (j.contains("tail")) {
      const Json& t = j.at("tail");
      if (!t.is_array() || t.empty()) throw config_error("expected a non-empty integer array", field + ".tail");
      tail.clear();
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (!t[i].is_number_integer() || t[i].get<long>() < 1)
          throw config_error("tail quotients must be integers >= 1", field + ".tail[" + std::to_string(i) + "]");
        tail.push_back(t[i].get<long>());
      }
    }
    int extra = static_cast<int>(get_long(j, "extra_terms", 30, 0, 1000, field + "."));
    return cf_realize(a, TailPolicy::periodic(tail), bits, extra);
  }
  if (j.contains("value")) {
    Scalar x = scalar_from_json(j.at("value"), bits, field + ".value");
    if (!(x > 0) || !(x < 1)) throw config_error("alpha must lie in (0, 1)", field + ".value");
    int depth = static_cast<int>(get_long(j, "depth", 30, 1, 100000, field + "."));
    return cf_expand(x, depth);
  }
  throw config_error("alpha needs \"quotients\" or \"value\"", field);
}

PiecewiseSmoothFn cocycle_spec(const Json& j, const Scalar& domain, int bits, const std::string& field,
                               const std::optional<Scalar>& beta, const std::optional<Scalar>& alpha) {
  if (j.is_object() && j.contains("breakpoints")) {
    PiecewiseSmoothFn f = cocycle_from_json(j, bits, field);
    if (!(f.domain() == domain)) throw config_error("descriptor domain differs from the map", field + ".domain");
    return f;
  }
  Json spec = j.is_string() ? Json{{"named", j}} : j;
  if (!spec.is_object() || !spec.contains("named") || !spec.at("named").is_string())
    throw config_error("expected a cocycle name or descriptor", field);
  const std::string name = spec.at("named").get<std::string>();
  const Field p = field + ".";
  auto need_beta = [&] {
    if (auto b = get_real(spec, "beta", bits, p)) {
      if (b->sign() < 0 || !(*b < domain)) throw config_error("beta outside the domain", p + "beta");
      return *b;
    }
    if (beta) return *beta;
    throw config_error("required field missing", p + "beta");
  };
  Scalar amp = get_real(spec, "amp", bits, p).value_or(one(bits));
  if (name == "sin" || name == "cos") {
    int mode = static_cast<int>(get_long(spec, "mode", 1, 1, 1 << 20, p));
    return name == "sin" ? PiecewiseSmoothFn::sin_mode(domain, mode, amp) : PiecewiseSmoothFn::cos_mode(domain, mode, amp);
  }
  if (name == "sawtooth") return amp * PiecewiseSmoothFn::sawtooth(domain, need_beta());
  if (name == "step") {
    Scalar b = need_beta();
    if (domain == 1 && b.sign() > 0) return amp * step_cocycle(b);
    // {(x - beta)/L} - {x/L} on a general domain
    return amp * (PiecewiseSmoothFn::sawtooth(domain, b) - PiecewiseSmoothFn::sawtooth(domain, Scalar::zero(bits)));
  }
  if (name == "zero") return PiecewiseSmoothFn::zero(domain);
  if (name == "chi") {
    if (!(domain == 1)) throw config_error("chi lives on the unit circle", field);
    Scalar a = get_real(spec, "alpha", bits, p).value_or(alpha ? *alpha : Scalar::zero(bits));
    if (!(a > 0) || !(a < 1)) throw config_error("chi needs alpha in (0, 1)", p + "alpha");
    return chi_function(a);
  }
  if (name == "indicator") {
    auto u = get_real(spec, "u", bits, p), v = get_real(spec, "v", bits, p);
    if (!u) throw config_error("required field missing", p + "u");
    if (!v) throw config_error("required field missing", p + "v");
    try {
      return PiecewiseSmoothFn::indicator(domain, *u, *v, amp);
    } catch (const Error& e) {
      throw config_error(e.detail(), field);
    }
  }
  if (name == "trig") {
    Scalar c0 = get_real(spec, "c0", bits, p).value_or(Scalar::zero(bits));
    std::vector<Scalar> a, b;
    auto list = [&](const char* k, std::vector<Scalar>& out) {
      if (const Json* arr = find(spec, k)) {
        if (!arr->is_array()) throw config_error("expected an array of reals", p + k);
        for (std::size_t i = 0; i < arr->size(); ++i)
          out.push_back(scalar_from_json((*arr)[i], bits, p + k + "[" + std::to_string(i) + "]"));
      }
    };
    list("a", a);
    list("b", b);
    const std::size_t m = std::max(a.size(), b.size());
    a.resize(m, Scalar::zero(bits));
    b.resize(m, Scalar::zero(bits));
    return PiecewiseSmoothFn::trig(domain, c0, a, b);
  }
  throw config_error("unknown cocycle \"" + name + "\"", p + "named");
}

ExperimentConfig parse_config(const Json& doc, const std::string& kind, const ConfigOverrides& ov) {
  if (!doc.is_object()) throw config_error("config must be a JSON object", "");
  ExperimentConfig c;
  c.doc = doc;
  c.schema = static_cast<int>(get_long(doc, "schema", 1, 1, 1));
  std::string k = get_string(doc, "kind", kind);
  if (!kind.empty() && k != kind) throw config_error("kind \"" + k + "\" does not match the subcommand", "kind");
  if (std::find(experiment_kinds().begin(), experiment_kinds().end(), k) == experiment_kinds().end())
    throw config_error("unknown kind \"" + k + "\"", "kind");
  c.kind = k;
  c.bits = static_cast<int>(get_long(doc, "bits", default_bits(), 64, 1 << 20));
  if (const Json* s = find(doc, "seed")) {
    if (!s->is_number_unsigned()) throw config_error("expected a non-negative integer", "seed");
    c.seed = s->get<std::uint64_t>();
  }
  c.threads = static_cast<int>(get_long(doc, "threads", 1, 1, 1024));
  c.out = get_string(doc, "out", "");
  if (const Json* b = find(doc, "budgets")) {
    if (!b->is_object()) throw config_error("expected an object", "budgets");
    c.orbit_budget = get_long(*b, "orbit", c.orbit_budget, 1, 1L << 40, "budgets.");
  }
  if (ov.bits) {
    if (*ov.bits < 64) throw config_error("bits must be >= 64", "bits");
    c.bits = *ov.bits;
  }
  if (ov.seed) c.seed = *ov.seed;
  if (ov.out) c.out = *ov.out;
  if (ov.threads) {
    if (*ov.threads < 1) throw config_error("threads must be >= 1", "threads");
    c.threads = *ov.threads;
  }
  return c;
}

Artifacts run_experiment(const ExperimentConfig& c) {
  set_thread_budget(c.threads);
  Artifacts a;
  if (c.kind == "cfrac") a = run_cfrac(c);
  else if (c.kind == "orbit") a = run_orbit(c);
  else if (c.kind == "induce") a = run_induce(c);
  else if (c.kind == "dk") a = run_dk(c);
  else if (c.kind == "tower") a = run_tower(c);
  else if (c.kind == "essval") a = run_essval(c);
  else if (c.kind == "cohom") a = run_cohom(c);
  else if (c.kind == "classify") a = run_classify(c);
  else throw config_error("unknown kind \"" + c.kind + "\"", "kind");
  Json head{{"schema", 1}, {"kind", c.kind}, {"bits", c.bits}, {"seed", c.seed}};
  head.update(a.report);
  a.report = std::move(head);
  return a;
}

Json error_json(const Error& e) {
  Json j{{"schema", 1}, {"error", std::string(to_string(e.kind()))}, {"message", e.detail()}};
  if (!e.field().empty()) j["field"] = e.field();
  return j;
}

int run(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  try {
    Artifacts a = run_experiment(c);
    if (c.out.empty()) {
      out << a.report.dump(2) << '\n';
      return 0;
    }
    namespace fs = std::filesystem;
    fs::create_directories(c.out);
    {
      std::ofstream f(fs::path(c.out) / (c.kind + "_report.json"), std::ios::binary);
      f << a.report.dump(2) << '\n';
      if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write report", "out");
    }
    for (auto& [stem, t] : a.tables) {
      std::ofstream f(fs::path(c.out) / (c.kind + "_" + stem + ".csv"), std::ios::binary);
      t.write(f);
      if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + stem + ".csv", "out");
    }
    out << a.report.dump(2) << '\n';
    return 0;
  } catch (const Error& e) {
    err << error_json(e).dump() << '\n';
    return is_numeric_failure(e.kind()) ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    err << error_json(Error(ErrorKind::ConfigError, e.what())).dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << error_json(Error(ErrorKind::InvalidArgument, e.what(), "out")).dump() << '\n';
    return 1;
  }
}

}  // namespace ietlab
