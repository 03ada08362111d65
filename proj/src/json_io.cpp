#include "diskineq/json_io.hpp"

#include <memory>
#include <string>

#include "diskineq/errors.hpp"

namespace diskineq {

namespace {

[[noreturn]] void bad(const std::string& what) { throw PreconditionFailed("invalid function descriptor: " + what); }

cplx coefficient_from_json(const json& c) {
  if (c.is_number()) return {c.get<double>(), 0.0};
  if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
    return {c[0].get<double>(), c[1].get<double>()};
  }
  bad("coefficients must be numbers or [re, im] pairs");
}

TaylorSeries series_from_json(const json& j, const char* key) {
  if (!j.contains(key)) return TaylorSeries();
  const json& arr = j.at(key);
  if (!arr.is_array()) bad(std::string("\"") + key + "\" must be an array");
  std::vector<cplx> coeffs;
  coeffs.reserve(arr.size());
  for (const json& c : arr) coeffs.push_back(coefficient_from_json(c));
  return TaylorSeries(std::move(coeffs));
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) bad(std::string("missing numeric field \"") + key + "\"");
  return j.at(key).get<double>();
}

json quadrature_to_json(const QuadratureInfo& q) { return {{"N", q.n}, {"M", q.m}, {"err_est", q.err_est}}; }

}  // namespace

HarmonicFunction function_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) bad("expected an object with a \"type\"");
  const std::string type = j.at("type").get<std::string>();
  if (type == "taylor_pair") return HarmonicFunction::taylor_pair(series_from_json(j, "g"), series_from_json(j, "h"));
  if (type == "fa") return HarmonicFunction::fa(number_field(j, "a"));
  if (type == "monomial") {
    const double n = number_field(j, "n");
    if (n < 0.0 || n != static_cast<double>(static_cast<unsigned>(n))) bad("\"n\" must be a non-negative integer");
    return HarmonicFunction::monomial(static_cast<unsigned>(n));
  }
  if (type == "exp") {
    if (!j.contains("base")) bad("missing \"base\"");
    const double scale = j.contains("scale") ? number_field(j, "scale") : 1.0;
    return HarmonicFunction::exp_of(function_from_json(j.at("base")), scale);
  }
  bad("unknown type \"" + type + "\"");
}

json series_to_json(const TaylorSeries& s) {
  json arr = json::array();
  for (const cplx& c : s.coeffs()) arr.push_back({c.real(), c.imag()});
  return arr;
}

json function_to_json(const HarmonicFunction& f) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TaylorPair>) {
          return {{"type", "taylor_pair"}, {"g", series_to_json(v.g)}, {"h", series_to_json(v.h)}};
        } else if constexpr (std::is_same_v<T, FaFamily>) {
          return {{"type", "fa"}, {"a", v.a}};
        } else if constexpr (std::is_same_v<T, Monomial>) {
          return {{"type", "monomial"}, {"n", v.n}};
        } else {
          return {{"type", "exp"}, {"scale", v.scale}, {"base", function_to_json(*v.base)}};
        }
      },
      f.variant());
}

json report_to_json(const InequalityReport& r) {
  json j;
  j["name"] = r.name;
  j["params"] = r.params;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["constant"] = r.constant;
  j["margin"] = r.margin;
  switch (r.verdict()) {
    case Verdict::pass:
      j["pass"] = true;
      break;
    case Verdict::fail:
      j["pass"] = false;
      break;
    case Verdict::not_applicable:
      j["pass"] = "not-applicable";
      break;
  }
  j["hypothesis_ok"] = r.hypothesis_ok;
  j["trivial"] = r.trivial;
  if (!r.note.empty()) j["note"] = r.note;
  j["quadrature"] = quadrature_to_json(r.quadrature);
  json parts = json::array();
  for (const MarginPart& p : r.parts) {
    parts.push_back({{"label", p.label},
                     {"lhs", p.lhs},
                     {"rhs", p.rhs},
                     {"constant", p.constant},
                     {"margin", p.margin},
                     {"err_est", p.err_est},
                     {"pass", p.pass()}});
  }
  j["parts"] = std::move(parts);
  return j;
}

json norm_to_json(const NormResult& r) {
  return {{"value", r.value},
          {"p", r.p},
          {"space", r.space == Space::hardy ? "hardy" : "bergman"},
          {"err_est", r.err_est},
          {"quadrature", {{"N", r.n}, {"M", r.m}}}};
}

json constants_to_json(const constants::Table& t) {
  return {{"p", t.p},     {"R_p", t.R},       {"L_p", t.L},   {"M_p", t.M},
          {"C_p", t.C},   {"E_4", t.E4},      {"pbar", t.pbar}, {"newt_constant", t.newt},
          {"p1", t.p1}};
}

json search_to_json(const SearchResult& r) {
  return {{"best_ratio", r.best_ratio},
          {"best_params", r.best_params},
          {"evaluations", r.evaluations},
          {"seed", r.seed},
          {"restarts", r.restarts},
          {"failed_restarts", r.failed_restarts},
          {"best_restart", r.best_restart},
          {"constant", r.constant},
          {"err_est", r.err_est},
          {"counterexample", r.counterexample},
          {"best_function", function_to_json(r.best_function)}};
}

json sweep_to_json(const FaSweep& s) {
  json points = json::array();
  for (const FaPoint& pt : s.points) {
    json jp = {{"a", pt.a}, {"ratio", pt.ratio}, {"err_est", pt.err_est}};
    if (!pt.error.empty()) jp["error"] = pt.error;
    points.push_back(std::move(jp));
  }
  return {{"p", s.p}, {"points", std::move(points)}, {"extrapolate", s.extrapolate}};
}

}  // namespace diskineq
