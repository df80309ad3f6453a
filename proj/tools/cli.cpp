#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ddclab/constructions.hpp"
#include "ddclab/degrees.hpp"
#include "ddclab/envelope.hpp"
#include "ddclab/model_io.hpp"
#include "ddclab/twist.hpp"
#include "ddclab/verify.hpp"

#ifndef DDCLAB_VERSION
#define DDCLAB_VERSION "0.0.0"
#endif

namespace ddc::cli {

const char* version() { return DDCLAB_VERSION; }

namespace {

struct Options {
  std::string input;
  unsigned long tmax = 0;  // 0 = command default
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::size_t count = 0;  // 0 = suite default
  std::string format = "table";
  std::string output;
  std::string map;

  // command specific
  std::string frobenius, first, second, with, center, save;
  std::optional<std::size_t> degree;
  std::size_t steps = 0;
  double threshold = 1e3;
  int log2_rmin = -10, log2_rmax = 10;
  long smax = 2;
  std::optional<double> theta, eps;
  std::size_t g = 1, n = 1, codim = 2;
  long q = 0, base = 0;
  std::vector<std::string> weil;
  std::vector<std::string> endo;
  std::vector<std::size_t> dims;
};

struct Report {
  Json json;
  std::vector<std::string> lines;
  int code = 0;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string tuple(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + ")";
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

Json doubles(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(double_json(x));
  return out;
}

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_json(x));
  return out;
}

Report begin(const std::string& command, const Options& o) {
  Report r;
  r.json["tool"] = "lab";
  r.json["version"] = version();
  r.json["command"] = command;
  r.json["seed"] = o.seed;
  if (!o.input.empty()) r.json["input"] = o.input;
  return r;
}

double tol_or(const Options& o, double fallback) { return o.tol ? *o.tol : fallback; }

ModelFile load_model(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::InvalidArgument, "--input is required");
  return parse_model(read_text_file(path));
}

// A model reference is a file path or "projective:N:Q".
QBundle load_bundle(const std::string& ref) {
  if (ref.rfind("projective:", 0) == 0) {
    std::istringstream in(ref.substr(11));
    std::size_t n = 0;
    long q = 0;
    char colon = 0;
    if (!(in >> n >> colon >> q) || colon != ':' || !in.eof())
      throw Error(ErrorCode::InvalidArgument, "expected projective:N:Q, got \"" + ref + "\"");
    return projective_model(n, q);
  }
  return bundle_from_model(load_model(ref));
}

Json degree_estimate_json(const DegreeEstimate& e) {
  Json j;
  j["value"] = double_json(e.value);
  j["mode"] = to_string(e.mode);
  j["t_min"] = e.t_min;
  j["t_max"] = e.t_max;
  j["drift"] = double_json(e.drift);
  return j;
}

Json comparison_json(const ComparisonLine& c) {
  return Json{{"k", c.k}, {"lhs", double_json(c.lhs)}, {"rhs", double_json(c.rhs)}, {"verdict", to_string(c.verdict)}};
}

Report cmd_degrees(const Options& o) {
  Report r = begin("degrees", o);
  const ModelFile m = load_model(o.input);
  const auto sys = m.system(o.map);
  const std::string name = sys.mode() == IterateMode::List ? "iterates" : (o.map.empty() ? m.default_map_name() : o.map);
  const DdcReport d = ddc_verdict(sys, o.tmax ? o.tmax : 64, tol_or(o, 1e-6));

  std::vector<double> lambda, chi;
  for (const auto& e : d.lambda) lambda.push_back(e.value);
  for (const auto& e : d.chi) chi.push_back(e.value);
  bool fail = d.weaker == Verdict::Fail;
  for (const auto& c : d.equality) fail = fail || c.verdict == Verdict::Fail;
  for (const auto& c : d.odd) fail = fail || c.verdict == Verdict::Fail;
  r.code = fail ? 1 : 0;

  r.json["model"] = m.provenance;
  r.json["map"] = name;
  r.json["lambda"] = doubles(lambda);
  r.json["chi"] = doubles(chi);
  Json le = Json::array(), ce = Json::array(), eq = Json::array(), odd = Json::array();
  for (const auto& e : d.lambda) le.push_back(degree_estimate_json(e));
  for (const auto& e : d.chi) ce.push_back(degree_estimate_json(e));
  for (const auto& c : d.equality) eq.push_back(comparison_json(c));
  for (const auto& c : d.odd) odd.push_back(comparison_json(c));
  r.json["lambda_estimates"] = std::move(le);
  r.json["chi_estimates"] = std::move(ce);
  r.json["equality"] = std::move(eq);
  r.json["odd_bound"] = std::move(odd);
  r.json["weaker"] = to_string(d.weaker);
  if (d.weaker_counterexample) r.json["weaker_counterexample"] = *d.weaker_counterexample;
  r.json["conjectureD_false_model"] = d.conjectureD_false_model;
  r.json["notes"] = d.notes;

  r.lines.push_back("model: " + m.provenance);
  r.lines.push_back("map: " + name);
  r.lines.push_back("lambda = " + tuple(lambda));
  r.lines.push_back("chi    = " + tuple(chi));
  r.lines.push_back(pad("check", 34) + pad("lhs", 16) + pad("rhs", 16) + "verdict");
  for (const auto& c : d.equality) {
    const std::string k = std::to_string(c.k);
    r.lines.push_back(pad("chi_" + std::to_string(2 * c.k) + " = lambda_" + k, 34) + pad(num(c.lhs), 16) +
                      pad(num(c.rhs), 16) + to_string(c.verdict));
  }
  for (const auto& c : d.odd) {
    r.lines.push_back(pad("chi_" + std::to_string(2 * c.k + 1) + " <= sqrt(lambda_" + std::to_string(c.k) +
                              " lambda_" + std::to_string(c.k + 1) + ")",
                          34) +
                      pad(num(c.lhs), 16) + pad(num(c.rhs), 16) + to_string(c.verdict));
  }
  std::string weaker = "envelope form: " + to_string(d.weaker);
  if (d.weaker_counterexample) weaker += " (differs at x = " + num(*d.weaker_counterexample) + ")";
  r.lines.push_back(weaker);
  for (const auto& note : d.notes) r.lines.push_back("note: " + note);
  return r;
}

Json envelope_json(const LogConcaveEnvelope& e) {
  Json j;
  j["domain"] = Json::array({rational_json(e.lo()), rational_json(e.hi())});
  Json bp = Json::array();
  for (const auto& p : e.breakpoints()) bp.push_back(Json::array({rational_json(p.x), rational_json(p.v)}));
  j["breakpoints"] = std::move(bp);
  return j;
}

std::string breakpoint_line(const LogConcaveEnvelope& e) {
  if (e.is_zero()) return "(zero)";
  std::string s;
  for (const auto& p : e.breakpoints())
    s += (s.empty() ? "" : " ") + ("(" + format_rational(p.x) + ", " + format_rational(p.v) + ")");
  return s;
}

SequenceFile load_sequences(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::InvalidArgument, "--input is required");
  return parse_sequences(read_text_file(path));
}

Report cmd_envelope(const Options& o) {
  Report r = begin("envelope", o);
  const SequenceFile s = load_sequences(o.input);
  const auto ap = a_points(s.a, s.placement);
  const auto a_env = upper_log_envelope(ap);
  r.json["placement"] = s.placement == Placement::Doubled ? "doubled" : "literal";
  r.json["a_envelope"] = envelope_json(a_env);
  r.lines.push_back("A breakpoints: " + breakpoint_line(a_env));
  std::optional<LogConcaveEnvelope> b_env;
  if (!s.b.empty()) {
    b_env = upper_log_envelope(b_points(s.b));
    r.json["b_envelope"] = envelope_json(*b_env);
    r.lines.push_back("B breakpoints: " + breakpoint_line(*b_env));
  }
  r.lines.push_back(pad("x", 8) + pad("A(x)", 18) + (b_env ? "B(x)" : ""));
  Json values = Json::array();
  const long hi = std::lround(std::max(a_env.hi().get_d(), b_env ? b_env->hi().get_d() : 0.0));
  for (long x = 0; x <= hi; ++x) {
    const Rational rx(x);
    auto at = [&](const LogConcaveEnvelope& e) -> std::optional<double> {
      if (e.is_zero() || rx < e.lo() || rx > e.hi()) return std::nullopt;
      return e.eval_double(rx);
    };
    auto av = at(a_env);
    std::optional<double> bv;
    if (b_env) bv = at(*b_env);
    Json row{{"x", x}};
    row["A"] = av ? double_json(*av) : Json(nullptr);
    if (b_env) row["B"] = bv ? double_json(*bv) : Json(nullptr);
    values.push_back(std::move(row));
    r.lines.push_back(pad(std::to_string(x), 8) + pad(av ? num(*av) : "-", 18) + (b_env ? (bv ? num(*bv) : "-") : ""));
  }
  r.json["values"] = std::move(values);
  return r;
}

Report cmd_prop1(const Options& o) {
  Report r = begin("prop1", o);
  const SequenceFile s = load_sequences(o.input);
  const Prop1Report p = prop1_verdict(s.a, s.b, s.placement);
  const std::string domain = "[" + format_rational(p.a_env.lo()) + "," + format_rational(p.a_env.hi()) + "]";
  r.json["placement"] = s.placement == Placement::Doubled ? "doubled" : "literal";
  r.json["verdict_detail"] = to_string(p.verdict);
  Json cond;
  cond["condition1"] = p.conditions.cond1;
  cond["condition1_failures"] = p.conditions.cond1_failures;
  cond["condition2"] = p.conditions.cond2;
  Json wit = Json::array();
  for (const auto& w : p.conditions.cond2_witnesses) {
    Json jw{{"k", w.k}};
    jw["r"] = w.r ? rational_json(*w.r) : Json(nullptr);
    wit.push_back(std::move(jw));
  }
  cond["condition2_witnesses"] = std::move(wit);
  r.json["conditions"] = std::move(cond);
  r.json["a_envelope"] = envelope_json(p.a_env);
  r.json["b_envelope"] = envelope_json(p.b_env);
  r.json["compared_at"] = rationals(p.compared_at);
  if (p.counterexample) r.json["counterexample"] = rational_json(*p.counterexample);

  r.lines.push_back("A breakpoints: " + breakpoint_line(p.a_env));
  r.lines.push_back("B breakpoints: " + breakpoint_line(p.b_env));
  switch (p.verdict) {
    case Prop1Verdict::Equal:
      r.lines.push_back("envelopes equal on " + domain);
      break;
    case Prop1Verdict::NotEqual:
      r.code = 1;
      r.lines.push_back("envelopes differ at x = " + format_rational(*p.counterexample));
      break;
    case Prop1Verdict::HypothesesFail:
      r.code = 1;
      for (auto j : p.conditions.cond1_failures)
        r.lines.push_back("condition 1 fails at j = " + std::to_string(j) + ": b_" + std::to_string(2 * j) + " < a_" +
                          std::to_string(j));
      for (const auto& w : p.conditions.cond2_witnesses)
        r.lines.push_back("condition 2 fails at k = " + std::to_string(w.k) +
                          (w.r ? " (r = " + format_rational(*w.r) + ")" : ""));
      r.lines.push_back("hypotheses fail; envelopes not compared");
      break;
  }
  return r;
}

std::optional<std::string> frobenius_name(const ModelFile& m, const std::string& requested) {
  if (!requested.empty()) return requested;
  for (const auto& [name, spec] : m.polarized)
    if (spec.weilRH) return name;
  return std::nullopt;
}

Report cmd_eq1(const Options& o) {
  Report r = begin("eq1-scan", o);
  const ModelFile m = load_model(o.input);
  const std::string name = o.map.empty() ? m.default_map_name() : o.map;
  if (o.log2_rmin > o.log2_rmax) throw Error(ErrorCode::InvalidArgument, "--log2-rmin exceeds --log2-rmax");
  const auto d = endo_degrees(m.map(name), m.numerics());
  std::optional<double> base;
  if (auto fr = frobenius_name(m, o.frobenius)) base = static_cast<double>(m.polarized.at(*fr).a);
  const auto grid = dyadic_grid(o.log2_rmin, o.log2_rmax);
  const Eq1Report e = eq1_scan(d.lambda, d.chi, grid, tol_or(o, 1e-9), base);
  r.code = e.ok() ? 0 : 1;

  r.json["model"] = m.provenance;
  r.json["map"] = name;
  r.json["lambda"] = doubles(d.lambda);
  r.json["chi"] = doubles(d.chi);
  r.json["grid"] = Json{{"log2_min", o.log2_rmin}, {"log2_max", o.log2_rmax}, {"size", grid.size()}};
  r.json["checked"] = e.entries.size();
  Json viol = Json::array();
  for (const auto& v : e.violations)
    viol.push_back(Json{{"r", double_json(v.r)},
                        {"k", v.k},
                        {"lhs", double_json(v.lhs)},
                        {"rhs", double_json(v.rhs)},
                        {"margin", double_json(v.margin)}});
  r.json["violations"] = std::move(viol);
  if (base) {
    Json sched = Json::array();
    for (const auto& [rv, t, s] : e.schedule) sched.push_back(Json{{"r", double_json(rv)}, {"t", t}, {"s", s}});
    r.json["schedule"] = std::move(sched);
  }
  double worst = INFINITY;
  for (const auto& v : e.entries) worst = std::min(worst, v.margin);
  r.json["min_margin"] = double_json(worst);

  r.lines.push_back("model: " + m.provenance);
  r.lines.push_back("map: " + name);
  r.lines.push_back("lambda = " + tuple(d.lambda));
  r.lines.push_back("chi    = " + tuple(d.chi));
  r.lines.push_back("r in {2^i : " + std::to_string(o.log2_rmin) + " <= i <= " + std::to_string(o.log2_rmax) + "}, " +
                    std::to_string(e.entries.size()) + " (r, k) pairs checked, smallest margin " + num(worst));
  if (e.ok()) {
    r.lines.push_back("no violation");
  } else {
    r.lines.push_back(std::to_string(e.violations.size()) + " violations");
    for (std::size_t i = 0; i < e.violations.size() && i < 10; ++i) {
      const auto& v = e.violations[i];
      r.lines.push_back("violation at r = " + num(v.r) + ", k = " + std::to_string(v.k) + ": r^k chi_k = " +
                        num(v.lhs) + " > max_j r^(2j) lambda_j = " + num(v.rhs));
    }
  }
  return r;
}

Report cmd_claim1(const Options& o) {
  Report r = begin("claim1", o);
  const ModelFile m = load_model(o.input);
  const auto fr = frobenius_name(m, o.frobenius);
  if (!fr) throw Error(ErrorCode::InvalidArgument, "model has no polarized map; name one with --frobenius");
  const auto model = m.polarized_model(*fr);
  const auto sys = m.system(o.map);
  const unsigned long tmax = o.tmax ? o.tmax : 16;
  if (o.smax < 0) throw Error(ErrorCode::InvalidArgument, "--smax must be non-negative");

  std::vector<unsigned long> ts;
  for (unsigned long t = 1; t <= tmax; t *= 2) ts.push_back(t);
  if (sys.mode() == IterateMode::List)
    std::erase_if(ts, [&](unsigned long t) { return t > sys.list_size(); });

  Json lines = Json::array();
  Json per_k = Json::array();
  double overall = 0.0;
  r.lines.push_back("frobenius: " + *fr + " (a = " + std::to_string(model.a) + ")");
  r.lines.push_back(pad("k", 6) + pad("max implied C", 18) + "at (s, t)");
  for (std::size_t k = 0; k <= m.space->top(); ++k) {
    Claim1Line best;
    for (long s = -o.smax; s <= o.smax; ++s)
      for (auto t : ts) {
        const Claim1Line l = claim1_check(sys, model, k, s, t);
        lines.push_back(Json{{"k", l.k},
                             {"s", l.s},
                             {"t", l.t},
                             {"lhs", double_json(l.lhs)},
                             {"rhs", double_json(l.rhs)},
                             {"implied_c", double_json(l.implied_c)}});
        if (l.implied_c > best.implied_c || (best.t == 0)) best = l;
      }
    if (std::isinf(best.implied_c)) r.code = 1;
    overall = std::max(overall, best.implied_c);
    per_k.push_back(Json{{"k", k}, {"max_implied_c", double_json(best.implied_c)}, {"s", best.s}, {"t", best.t}});
    r.lines.push_back(pad(std::to_string(k), 6) + pad(num(best.implied_c), 18) + "(" + std::to_string(best.s) + ", " +
                      std::to_string(best.t) + ")");
  }
  r.json["frobenius"] = *fr;
  r.json["a"] = model.a;
  r.json["s_range"] = Json::array({-o.smax, o.smax});
  r.json["t_values"] = ts;
  r.json["per_degree"] = std::move(per_k);
  r.json["max_implied_c"] = double_json(overall);
  r.json["lines"] = std::move(lines);
  r.lines.push_back("empirical C = " + num(overall) + (r.code ? " (unbounded: numerical side vanishes)" : ""));
  return r;
}

Report cmd_jordan(const Options& o) {
  Report r = begin("jordan", o);
  const ModelFile m = load_model(o.input);
  std::string first = o.first, second = o.second;
  if (first.empty() || second.empty()) {
    std::vector<std::string> names;
    for (const auto& [name, spec] : m.polarized)
      if (name != first && name != second) names.push_back(name);
    auto it = names.begin();
    if (first.empty() && it != names.end()) first = *it++;
    if (second.empty() && it != names.end()) second = *it++;
    if (first.empty() || second.empty())
      throw Error(ErrorCode::InvalidArgument, "need two polarized maps; name them with --first and --second");
  }
  const std::size_t k = o.degree ? *o.degree : m.space->n();
  m.space->check_degree(k);
  const auto p1 = m.polarized_model(first);
  const auto p2 = m.polarized_model(second);
  const std::size_t steps = o.steps ? o.steps : 40;
  const JordanCompareReport j = jordan_compare(p1, p2, k, steps);

  r.json["first"] = Json{{"map", first}, {"a", p1.a}, {"block", j.b1}};
  r.json["second"] = Json{{"map", second}, {"a", p2.a}, {"block", j.b2}};
  r.json["degree"] = k;
  r.json["equal"] = j.equal;
  r.lines.push_back("degree " + std::to_string(k) + ": " + first + " (a = " + std::to_string(p1.a) +
                    ") dominant block " + std::to_string(j.b1) + ", " + second + " (a = " + std::to_string(p2.a) +
                    ") dominant block " + std::to_string(j.b2));
  if (j.equal) {
    r.lines.push_back("dominant block sizes agree; no certificate needed");
    return r;
  }
  r.json["theta"] = double_json(j.theta);
  r.json["threshold"] = double_json(o.threshold);
  Json rows = Json::array();
  std::optional<std::size_t> hit;
  r.lines.push_back("theta = " + num(j.theta));
  r.lines.push_back(pad("step", 6) + pad("s", 22) + pad("t", 22) + "certificate");
  for (std::size_t i = 0; i < j.certificate.size(); ++i) {
    const auto& st = j.steps[i];
    rows.push_back(Json{{"step", i + 1}, {"s", st.s}, {"t", st.t}, {"certificate", double_json(j.certificate[i])}});
    r.lines.push_back(pad(std::to_string(i + 1), 6) + pad(std::to_string(st.s), 22) + pad(std::to_string(st.t), 22) +
                      num(j.certificate[i]));
    if (!hit && j.certificate[i] > o.threshold) hit = i + 1;
  }
  r.json["certificate"] = std::move(rows);
  r.json["exceeds_at_step"] = hit ? Json(*hit) : Json(nullptr);
  r.lines.push_back(hit ? "certificate exceeds " + num(o.threshold) + " at step " + std::to_string(*hit)
                        : "certificate stays below " + num(o.threshold) + " in " + std::to_string(j.certificate.size()) +
                              " steps");
  return r;
}

Json kronecker_json(const KroneckerResult& k) {
  return Json{{"step", k.step}, {"s", k.s}, {"t", k.t}, {"residual", double_json(k.residual)}, {"rational", k.rational}};
}

Report cmd_kronecker(const Options& o) {
  Report r = begin("kronecker", o);
  if (!o.theta) throw Error(ErrorCode::InvalidArgument, "--theta is required");
  const double theta = *o.theta;
  r.json["theta"] = double_json(theta);
  const auto seq = kronecker_sequence(theta, o.steps ? o.steps : 64);
  Json rows = Json::array();
  r.lines.push_back(pad("step", 6) + pad("s", 22) + pad("t", 22) + "|theta s + t|");
  for (const auto& k : seq) {
    rows.push_back(kronecker_json(k));
    r.lines.push_back(pad(std::to_string(k.step), 6) + pad(std::to_string(k.s), 22) + pad(std::to_string(k.t), 22) +
                      num(k.residual) + (k.rational ? " (rational)" : ""));
  }
  r.json["sequence"] = std::move(rows);
  if (o.eps) {
    const KroneckerResult k = kronecker_approx(theta, *o.eps);
    r.json["eps"] = double_json(*o.eps);
    r.json["result"] = kronecker_json(k);
    r.lines.push_back("eps = " + num(*o.eps) + ": (s, t) = (" + std::to_string(k.s) + ", " + std::to_string(k.t) +
                      "), residual " + num(k.residual));
  }
  return r;
}

Report construct_report(const std::string& kind, const Options& o, const QBundle& b) {
  Report r = begin("construct " + kind, o);
  const ModelFile m = model_from_bundle(b);
  const auto bad = noncommuting_endos(b);
  r.json["provenance"] = b.provenance;
  r.json["n"] = b.space->n();
  r.json["dims"] = b.space->dims();
  r.json["noncommuting_endos"] = bad;
  r.json["model"] = model_to_json(m);
  r.lines.push_back("model: " + b.provenance);
  std::vector<double> dims;
  for (auto d : b.space->dims()) dims.push_back(static_cast<double>(d));
  r.lines.push_back("n = " + std::to_string(b.space->n()) + ", dims = " + tuple(dims));
  if (b.frobenius)
    r.lines.push_back(std::string(b.frobenius->frobenius ? "frobenius" : "polarized map") +
                      ": a = " + std::to_string(b.frobenius->a) +
                      (b.frobenius->semisimple ? ", semisimple" : ", not semisimple"));
  std::string names;
  for (const auto& [name, f] : b.endos) names += (names.empty() ? "" : ", ") + name + (b.over_fq.count(name) ? "*" : "");
  r.lines.push_back("endos: " + (names.empty() ? std::string("none") : names + " (* = defined over the base field)"));
  if (!bad.empty()) {
    r.code = 1;
    for (const auto& name : bad) r.lines.push_back("endo " + name + " does not commute with the frobenius");
  }
  if (!o.save.empty()) {
    std::ofstream f(o.save);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + o.save);
    f << model_to_json(m).dump(2) << "\n";
    r.lines.push_back("model written to " + o.save);
  }
  return r;
}

Report cmd_construct_abelian(const Options& o) {
  if (o.q <= 1) throw Error(ErrorCode::InvalidArgument, "--q is required");
  if (o.weil.empty()) throw Error(ErrorCode::InvalidArgument, "--weil is required");
  std::vector<Rational> coeffs;
  for (auto it = o.weil.rbegin(); it != o.weil.rend(); ++it) coeffs.push_back(parse_rational(*it));
  const QPoly p(std::move(coeffs));
  if (p.degree() != static_cast<int>(2 * o.g))
    throw Error(ErrorCode::InvalidArgument, "--weil needs 2g + 1 coefficients, highest degree first");
  const QMatrix m1 = companion_matrix(p);
  std::optional<QMatrix> endo;
  if (!o.endo.empty()) {
    if (o.endo.size() != 2) throw Error(ErrorCode::InvalidArgument, "--endo takes a,b for a + b Fr");
    const Rational a = parse_rational(o.endo[0]), b = parse_rational(o.endo[1]);
    QMatrix e = QMatrix::scalar(m1.rows(), a);
    for (std::size_t i = 0; i < m1.rows(); ++i)
      for (std::size_t j = 0; j < m1.cols(); ++j) e(i, j) += b * m1(i, j);
    endo = e;
  }
  return construct_report("abelian", o, abelian_model(o.g, o.q, m1, endo));
}

Report cmd_construct_product(const Options& o) {
  if (o.input.empty() || o.with.empty()) throw Error(ErrorCode::InvalidArgument, "--input and --with are required");
  return construct_report("product", o, product_model(load_bundle(o.input), load_bundle(o.with)));
}

Report cmd_construct_blowup(const Options& o) {
  if (o.input.empty() || o.center.empty()) throw Error(ErrorCode::InvalidArgument, "--input and --center are required");
  return construct_report("blowup", o, blowup_model(load_bundle(o.input), load_bundle(o.center), o.codim));
}

Report cmd_construct_hilb2(const Options& o) {
  if (o.input.empty()) throw Error(ErrorCode::InvalidArgument, "--input is required");
  return construct_report("hilb2", o, hilb2_model(load_bundle(o.input)));
}

Report cmd_construct_random(const Options& o) {
  if (o.dims.empty()) throw Error(ErrorCode::InvalidArgument, "--dims is required");
  if (o.dims.size() != 2 * o.n + 1) throw Error(ErrorCode::InvalidArgument, "--dims needs 2n + 1 entries");
  return construct_report("random", o, random_semisimple_model(o.n, o.dims, o.base ? o.base : 4, o.seed));
}

Report cmd_verify(const std::string& suite, const Options& o, std::ostream& err) {
  Report r = begin("verify " + suite, o);
  SuiteResult s;
  if (suite == "lieberman")
    s = lieberman_suite(o.seed, o.count ? o.count : 1000);
  else if (suite == "norms")
    s = norms_suite(o.seed, o.count ? o.count : 10000);
  else if (suite == "yamamoto")
    s = yamamoto_suite(o.seed, o.count ? o.count : 100);
  else if (suite == "prop1-suite")
    s = prop1_suite(o.seed, o.count ? o.count : 1000);
  else
    s = ddc_suite(o.seed, o.count ? o.count : 100);
  err << "lab: verify " << suite << " finished in " << num(s.seconds) << " s\n";
  r.code = s.passed() ? 0 : 1;
  r.json["suite"] = s.name;
  r.json["count"] = s.count;
  r.json["failures"] = s.failures;
  r.json["notes"] = s.notes;
  r.lines.push_back("suite " + s.name + ": " + std::to_string(s.count) + " instances, " + std::to_string(s.failures) +
                    " failures");
  for (const auto& note : s.notes) r.lines.push_back("note: " + note);
  return r;
}

std::string render(const Report& r, const std::string& format) {
  if (format == "json") return r.json.dump(2) + "\n";
  std::string out = "lab " + std::string(version()) + "  " + r.json["command"].get<std::string>() +
                    "  seed " + std::to_string(r.json["seed"].get<std::uint64_t>()) + "\n";
  for (const auto& l : r.lines) out += l + "\n";
  out += std::string("verdict: ") + (r.code == 0 ? "pass" : "fail") + "\n";
  return out;
}

void add_common(CLI::App* sub, Options& o, bool input) {
  if (input) sub->add_option("--input", o.input, "Model or sequence file");
  sub->add_option("--tmax", o.tmax, "Largest iterate index");
  sub->add_option("--tol", o.tol, "Relative tolerance");
  sub->add_option("--seed", o.seed, "Random seed");
  sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "table"}));
  sub->add_option("--output", o.output, "Write the report to this path");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Dynamical degree computations on finite-dimensional cohomology models", "lab"};
  app.set_version_flag("--version", std::string("lab ") + version());
  app.require_subcommand(1);

  std::function<Report()> action;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, bool input,
                  std::function<Report(const Options&)> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub, o, input);
    sub->callback([&action, fn, &o] { action = [fn, &o] { return fn(o); }; });
    return sub;
  };

  auto* degrees = leaf(&app, "degrees", "Numerical and cohomological degrees with verdicts", true, cmd_degrees);
  degrees->add_option("--map", o.map, "Map name (default: the only non-polarized map)");
  leaf(&app, "envelope", "Log-concave envelopes of a sequence file", true, cmd_envelope);
  leaf(&app, "prop1", "Envelope equality under the two sequence conditions", true, cmd_prop1);
  auto* eq1 = leaf(&app, "eq1-scan", "Scan r^k chi_k <= max_j r^(2j) lambda_j over a dyadic grid", true, cmd_eq1);
  eq1->add_option("--map", o.map, "Map name");
  eq1->add_option("--frobenius", o.frobenius, "Polarized map used for the twist schedule");
  eq1->add_option("--log2-rmin", o.log2_rmin, "Smallest exponent i in r = 2^i");
  eq1->add_option("--log2-rmax", o.log2_rmax, "Largest exponent i in r = 2^i");
  auto* claim1 = leaf(&app, "claim1", "Twisted norm bound with the implied constant", true, cmd_claim1);
  claim1->add_option("--map", o.map, "Map name");
  claim1->add_option("--frobenius", o.frobenius, "Polarized map F");
  claim1->add_option("--smax", o.smax, "Twists s range over [-smax, smax]");
  auto* jordan = leaf(&app, "jordan", "Dominant Jordan sizes of two polarized maps and the growth certificate", true,
                      cmd_jordan);
  jordan->add_option("--first", o.first, "First polarized map");
  jordan->add_option("--second", o.second, "Second polarized map");
  jordan->add_option("--degree", o.degree, "Cohomological degree (default n)");
  jordan->add_option("--steps", o.steps, "Convergent steps (default 40)");
  jordan->add_option("--threshold", o.threshold, "Certificate threshold");
  auto* kron = leaf(&app, "kronecker", "Convergents (s, t) with |theta s + t| small", false, cmd_kronecker);
  kron->add_option("--theta", o.theta, "Irrational target")->required();
  kron->add_option("--eps", o.eps, "Stop at the first residual below eps");
  kron->add_option("--steps", o.steps, "Convergents to list (default 64)");

  CLI::App* construct = app.add_subcommand("construct", "Build a model and print it");
  construct->require_subcommand(1);
  auto* abelian = leaf(construct, "abelian", "Exterior-power model from a Weil polynomial", false, cmd_construct_abelian);
  abelian->add_option("--g", o.g, "Dimension g");
  abelian->add_option("--q", o.q, "Prime power q");
  abelian->add_option("--weil", o.weil, "Coefficients, highest degree first")->delimiter(',');
  abelian->add_option("--endo", o.endo, "a,b for the endo a + b Fr on H^1")->delimiter(',');
  abelian->add_option("--save", o.save, "Write the model file here");
  auto* product = leaf(construct, "product", "Kunneth product of two models", true, cmd_construct_product);
  product->add_option("--with", o.with, "Second factor (file or projective:N:Q)");
  product->add_option("--save", o.save, "Write the model file here");
  auto* blowup = leaf(construct, "blowup", "Blowup along a center", true, cmd_construct_blowup);
  blowup->add_option("--center", o.center, "Center model (file or projective:N:Q)");
  blowup->add_option("--codim", o.codim, "Codimension r of the center");
  blowup->add_option("--save", o.save, "Write the model file here");
  auto* hilb2 = leaf(construct, "hilb2", "Hilbert square", true, cmd_construct_hilb2);
  hilb2->add_option("--save", o.save, "Write the model file here");
  auto* random = leaf(construct, "random", "Random semisimple Weil model", false, cmd_construct_random);
  random->add_option("--n", o.n, "Dimension n");
  random->add_option("--dims", o.dims, "Betti numbers d_0..d_2n")->delimiter(',');
  random->add_option("--base", o.base, "Weil base (default 4)");
  random->add_option("--save", o.save, "Write the model file here");

  CLI::App* verify = app.add_subcommand("verify", "Seeded property suites");
  verify->require_subcommand(1);
  for (const char* name : {"lieberman", "norms", "yamamoto", "prop1-suite", "ddc-suite"}) {
    const std::string suite = name;
    auto* sub = leaf(verify, suite, "Run the " + suite + " suite", false,
                     [suite, &err](const Options& opts) { return cmd_verify(suite, opts, err); });
    sub->add_option("--count", o.count, "Number of instances (default: suite size)");
  }

  std::vector<const char*> argv{"lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "lab: " << e.what() << "\n";
    return 2;
  }

  Report report;
  try {
    report = action();
  } catch (const Error& e) {
    err << "lab: " << (o.input.empty() ? "" : o.input + ": ") << e.what() << "\n";
    return 2;
  }
  const std::string text = render(report, o.format);
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream f(o.output);
    if (!f) {
      err << "lab: cannot write " << o.output << "\n";
      return 2;
    }
    f << text;
  }
  return report.code;
}

}  // namespace ddc::cli
