#include "ietlab/serialize.hpp"

#include <sstream>

#include "ietlab/error.hpp"

namespace ietlab {

namespace {

Json scalars(const std::vector<Scalar>& v) {
  Json a = Json::array();
  for (auto& x : v) a.push_back(x.to_string());
  return a;
}

Json mpz(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

std::vector<Scalar> scalar_list(const Json& j, int bits, const std::string& field) {
  if (!j.is_array()) throw Error(ErrorKind::ConfigError, "expected an array of reals", field);
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(scalar_from_json(j[i], bits, field + "[" + std::to_string(i) + "]"));
  return out;
}

bool needs_quotes(const std::string& s) { return s.find_first_of(",\"\n") != std::string::npos; }

}  // namespace

Json to_json(const Scalar& x) { return Json{{"dec", x.to_string()}, {"bits", x.bits()}}; }

Scalar scalar_from_json(const Json& j, int bits, const std::string& field) {
  try {
    if (j.is_object()) {
      if (!j.contains("dec")) throw Error(ErrorKind::ConfigError, "missing \"dec\"", field);
      int b = j.value("bits", bits);
      if (b < 16) throw Error(ErrorKind::ConfigError, "bits must be >= 16", field + ".bits");
      return Scalar::parse(j.at("dec").get<std::string>(), b);
    }
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), bits);
    // numbers go through their shortest decimal text, so 0.3 means the decimal 0.3
    if (j.is_number()) return Scalar::parse(j.dump(), bits);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError) throw;
    throw Error(ErrorKind::ConfigError, e.detail(), field);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigError, e.what(), field);
  }
  throw Error(ErrorKind::ConfigError, "expected a real (string, number or {dec, bits})", field);
}

Json to_json(const ContinuedFraction& cf) {
  Json q = Json::array(), conv = Json::array();
  for (int n = 0; n <= cf.depth(); ++n) {
    q.push_back(cf.a(n));
    conv.push_back(Json{{"n", n}, {"p", mpz(cf.p(n))}, {"q", mpz(cf.q(n))}});
  }
  Json j{{"quotients", q}, {"value", to_json(cf.value())}, {"prefix_length", cf.prefix_length()}};
  if (cf.tail()) j["tail"] = cf.tail()->block;
  j["convergents"] = conv;
  return j;
}

Json to_json(const Iet3& t) {
  return Json{{"lambda", {t.lambda_a().to_string(), t.lambda_b().to_string(), t.lambda_c().to_string()}},
              {"bits", t.bits()}};
}

Iet3 iet3_from_json(const Json& j, int bits, const std::string& field) {
  const Json* arr = &j;
  int b = bits;
  if (j.is_object()) {
    if (!j.contains("lambda")) throw Error(ErrorKind::ConfigError, "missing \"lambda\"", field);
    arr = &j.at("lambda");
    b = j.value("bits", bits);
  }
  if (!arr->is_array() || arr->size() != 3) throw Error(ErrorKind::ConfigError, "lambda needs three lengths", field);
  auto v = scalar_list(*arr, b, field);
  for (int i = 0; i < 3; ++i)
    if (!(v[i] > 0)) throw Error(ErrorKind::ConfigError, "lengths must be positive", field + "[" + std::to_string(i) + "]");
  return Iet3(v[0], v[1], v[2]);
}

Json to_json(const Rotation& r) {
  return Json{{"modulus", r.modulus().to_string()}, {"angle", r.angle().to_string()}, {"bits", r.bits()}};
}

Json to_json(const KeaneReport& r) {
  return Json{{"horizon", r.horizon}, {"tol", r.tol.to_string(6)}, {"minimum", r.minimum.to_string(20)},
              {"m", r.m}, {"beta", r.beta}, {"gamma", r.gamma}, {"holds", r.holds}};
}

Json to_json(const PiecewiseSmoothFn& f) {
  Json pieces = Json::array();
  for (auto& p : f.pieces())
    pieces.push_back(Json{{"c0", p.c0.to_string()}, {"c1", p.c1.to_string()}, {"a", scalars(p.a)}, {"b", scalars(p.b)}});
  return Json{{"domain", f.domain().to_string()},
              {"period", f.period().to_string()},
              {"bits", f.bits()},
              {"breakpoints", scalars(f.breakpoints())},
              {"pieces", pieces}};
}

PiecewiseSmoothFn cocycle_from_json(const Json& j, int bits, const std::string& field) {
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, "cocycle descriptor must be an object", field);
  const int b = j.value("bits", bits);
  for (const char* k : {"domain", "breakpoints", "pieces"})
    if (!j.contains(k)) throw Error(ErrorKind::ConfigError, std::string("missing \"") + k + "\"", field);
  Scalar domain = scalar_from_json(j.at("domain"), b, field + ".domain");
  Scalar period = j.contains("period") ? scalar_from_json(j.at("period"), b, field + ".period") : domain;
  auto bp = scalar_list(j.at("breakpoints"), b, field + ".breakpoints");
  const Json& pj = j.at("pieces");
  if (!pj.is_array() || pj.size() != bp.size())
    throw Error(ErrorKind::ConfigError, "one piece per breakpoint", field + ".pieces");
  std::vector<TrigAffine> pieces;
  for (std::size_t i = 0; i < pj.size(); ++i) {
    const std::string f = field + ".pieces[" + std::to_string(i) + "]";
    const Json& p = pj[i];
    if (!p.is_object()) throw Error(ErrorKind::ConfigError, "piece must be an object", f);
    TrigAffine d;
    d.c0 = p.contains("c0") ? scalar_from_json(p.at("c0"), b, f + ".c0") : Scalar::zero(b);
    d.c1 = p.contains("c1") ? scalar_from_json(p.at("c1"), b, f + ".c1") : Scalar::zero(b);
    if (p.contains("a")) d.a = scalar_list(p.at("a"), b, f + ".a");
    if (p.contains("b")) d.b = scalar_list(p.at("b"), b, f + ".b");
    const int m = std::max(d.modes(), static_cast<int>(d.b.size()));
    d.a.resize(m, Scalar::zero(b));
    d.b.resize(m, Scalar::zero(b));
    pieces.push_back(std::move(d));
  }
  try {
    return PiecewiseSmoothFn(domain, period, std::move(bp), std::move(pieces));
  } catch (const Error& e) {
    throw Error(ErrorKind::ConfigError, e.detail(), field);
  }
}

Json to_json(const DkReport& r) {
  return Json{{"n", r.n},         {"q", mpz(r.q)},           {"points", r.points},
              {"var_f", r.var_f.to_string(20)},   {"var_df", r.var_df.to_string(20)},
              {"max_f", r.max_f.to_string(20)},   {"max_df", r.max_df.to_string(20)},
              {"argmax_f", r.argmax_f.to_string(20)}, {"pass_f", r.pass_f}, {"pass_df", r.pass_df}};
}

Json to_json(const SmallIntegralReport& r) {
  long exact = 0;
  for (auto& e : r.entries) exact += e.exact_known ? 1 : 0;
  return Json{{"k", r.k},
              {"q", mpz(r.q)},
              {"len", r.len.to_string(20)},
              {"w", r.w.to_string(20)},
              {"var_f", r.var_f.to_string(20)},
              {"bound", r.bound.to_string(20)},
              {"quad_tol", r.quad_tol.to_string(6)},
              {"max_abs", r.max_abs.to_string(20)},
              {"max_quad_error", r.max_quad_error.to_string(6)},
              {"slack", r.slack.to_string(10)},
              {"evaluations", r.evaluations},
              {"intervals", r.entries.size()},
              {"closed_form_checked", exact},
              {"pass", r.pass}};
}

Json to_json(const InducedSystem& s) {
  Json rt = Json::array();
  for (auto& p : s.return_times) rt.push_back(Json{{"start", p.start.to_string()}, {"end", p.end.to_string()}, {"r", p.r}});
  return Json{{"case", to_string(s.case_tag)},
              {"j_length", to_json(s.j_length)},
              {"rotation", to_json(s.rotation)},
              {"return_times", rt},
              {"induced_cocycle", to_json(s.induced_fn)},
              {"parent", to_json(s.parent)}};
}

Json to_json(const InductionReport& r) {
  return Json{{"samples", r.samples},
              {"max_map_discrepancy", r.max_map_discrepancy.to_string(6)},
              {"max_fn_discrepancy", r.max_fn_discrepancy.to_string(6)},
              {"max_discrepancy", r.max_discrepancy.to_string(6)},
              {"worst_x", r.worst_x.to_string(20)}};
}

Json to_json(const RokhlinTower& t) {
  auto arc = [](const Arc& a) { return Json{{"start", a.start.to_string(20)}, {"width", a.width.to_string(20)}}; };
  return Json{{"n", t.n},
              {"parity", t.sign > 0 ? "+" : "-"},
              {"shift", t.z.to_string(20)},
              {"alpha", t.alpha.to_string(20)},
              {"large", {{"base", arc(t.base_large)}, {"height", mpz(t.h_large)}}},
              {"small", {{"base", arc(t.base_small)}, {"height", mpz(t.h_small)}}},
              {"measure", t.measure().to_string(20)},
              {"partition", t.partition}};
}

Json to_json(const BalancedReport& r) {
  Json s = Json::array();
  for (auto& x : r.scales)
    s.push_back(Json{{"k", x.k},
                     {"b", x.b.to_string(20)},
                     {"w", x.w.to_string(20)},
                     {"in_small", x.in_small},
                     {"m", x.m},
                     {"offset", x.offset.to_string(20)},
                     {"epsilon", x.epsilon.to_string(20)}});
  return Json{{"delta", r.delta.to_string(20)}, {"scales", s}};
}

Json to_json(const XiSets& xi) {
  return Json{{"k", xi.k},
              {"q", xi.q},
              {"l", xi.l.to_string(20)},
              {"w", xi.w.to_string(20)},
              {"b", xi.b.to_string(20)},
              {"beta", xi.beta.to_string(20)},
              {"m", xi.m},
              {"sigma_next", xi.sigma_next},
              {"u", xi.u.to_string(20)},
              {"u_late", xi.u_late.to_string(20)},
              {"measure_xi1", xi.measure1().to_string(20)},
              {"measure_xi2", xi.measure2().to_string(20)}};
}

Json to_json(const EssentialValueReport& r) {
  return Json{{"k", r.k},
              {"q", r.q},
              {"a1", r.a1.to_string(20)},
              {"a2", r.a2.to_string(20)},
              {"epsilon", r.epsilon.to_string(20)},
              {"measure", {{"xi1", r.measure_xi1.to_string(20)}, {"xi2", r.measure_xi2.to_string(20)},
                           {"tower", r.tower_measure.to_string(20)}}},
              {"rigidity", {{"expected", r.rigidity.to_string(20)}, {"sampled", r.rigidity_sampled.to_string(20)}}},
              {"boundary", {{"sym_diff1", r.sym_diff1.to_string(20)}, {"sym_diff2", r.sym_diff2.to_string(20)},
                            {"bound", r.sym_diff_bound.to_string(20)}}},
              {"deviation", {{"sup1", r.sup_dev1.to_string(20)}, {"sup2", r.sup_dev2.to_string(20)},
                             {"mean1", r.mean1.to_string(20)}, {"mean2", r.mean2.to_string(20)}}},
              {"omega_gap_error", r.omega_gap_error.to_string(10)},
              {"fibers_sampled", r.fibers_sampled},
              {"full_sweep", r.full_sweep},
              {"continuity_violations", r.continuity_violations},
              {"pass1", r.pass1},
              {"pass2", r.pass2}};
}

Json to_json(const MvtReport& r) {
  return Json{{"var_df", r.var_df.to_string(20)},
              {"osc_bound", r.osc_bound.to_string(20)},
              {"max_osc1", r.max_osc1.to_string(20)},
              {"max_osc2", r.max_osc2.to_string(20)},
              {"c_k", r.c_k.to_string(20)},
              {"integral_bound", r.integral_bound.to_string(20)},
              {"max_integral", r.max_integral.to_string(20)},
              {"slack", r.slack.to_string(6)},
              {"pass_osc", r.pass_osc},
              {"pass_integral", r.pass_integral}};
}

Json to_json(const FraczekReport& r) {
  Json fr = Json::array();
  for (auto& row : r.fractions) {
    Json a = Json::array();
    for (auto& x : row) a.push_back(x.to_string(20));
    fr.push_back(a);
  }
  Json sc = Json::array(), g = Json::array();
  for (auto& x : r.q2_scores) sc.push_back(x.to_string(20));
  for (auto& x : r.gamma) g.push_back(x.to_string(20));
  return Json{{"indices", r.indices},
              {"q2_scores", sc},
              {"fractions", fr},
              {"gamma", g},
              {"min_separation", r.min_separation.to_string(20)},
              {"scores_decreasing", r.scores_decreasing},
              {"plausible", r.plausible}};
}

Json to_json(const TransferSolution& s) {
  Json j{{"method", to_string(s.method)},
         {"angle", s.angle.to_string()},
         {"residual", s.residual.to_string(6)},
         {"tolerance", s.tolerance.to_string(6)},
         {"failed", s.failed},
         {"f", to_json(s.f)}};
  if (s.symbolic())
    j["g"] = to_json(s.fn());
  else
    j["g"] = Json{{"grid", std::get<GridFunction>(s.g).x.size()}, {"domain", std::get<GridFunction>(s.g).domain.to_string()}};
  return j;
}

Json to_json(const GrowthReport& r) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.n.size(); ++i)
    rows.push_back(Json{{"n", r.n[i]}, {"q", mpz(r.q[i])}, {"M", r.m[i].to_string(20)}});
  return Json{{"rows", rows}, {"fitted_c", r.fitted_c.to_string(20)}, {"trend", to_string(r.trend)}};
}

Json to_json(const NonergodicCertificate& c) {
  Json v = Json::array();
  for (auto& x : c.visits)
    v.push_back(Json{{"breakpoint", x.breakpoint.to_string(20)},
                     {"jump", x.jump.to_string(20)},
                     {"steps", x.steps},
                     {"point", x.point.to_string(20)},
                     {"on_discontinuity", x.on_discontinuity}});
  return Json{{"m", c.m},
              {"n", c.n},
              {"beta", to_json(c.beta)},
              {"j_length", c.j_length.to_string(20)},
              {"cut", c.cut.to_string(20)},
              {"cut_steps", c.cut_steps},
              {"visits", v},
              {"pass", c.pass}};
}

Json to_json(const ErgodicityVerdict& v) {
  return Json{{"verdict", to_string(v.verdict)},
              {"basis", to_string(v.basis)},
              {"citation", v.citation},
              {"jump_sum", v.jump_sum.to_string(20)},
              {"endpoint_value", v.endpoint_value.to_string(20)},
              {"interior_smooth", v.interior_smooth},
              {"evidence", v.evidence}};
}

std::string cell(const Scalar& x) { return x.to_string(kCsvDigits); }

void Csv::write(std::ostream& os) const {
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << ',';
      if (needs_quotes(r[i])) {
        os << '"';
        for (char c : r[i]) os << (c == '"' ? "\"\"" : std::string(1, c));
        os << '"';
      } else {
        os << r[i];
      }
    }
    os << '\n';
  };
  line(header);
  for (auto& r : rows) line(r);
}

std::string Csv::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace ietlab
