#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "pcf/identify.hpp"
#include "pcf/limits.hpp"
#include "pcf/parse.hpp"

namespace pcf {

using json = nlohmann::ordered_json;

/// Coefficients in ascending order, as exact strings.
inline json to_json(const Poly& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(c.get_str());
  return out;
}

inline Poly poly_from_json(const json& j) {
  std::vector<BigRat> c;
  for (const auto& s : j) c.push_back(parse_rational(s.get<std::string>()));
  return Poly(std::move(c));
}

inline std::string frac(const BigRat& r) { return fraction_string(r.get_num(), r.get_den()); }

inline json to_json(const EulerTriple& t) {
  return {{"h1", to_json(t.h1())}, {"h2", to_json(t.h2())}, {"f", to_json(t.f())}};
}

inline json to_json(const IdentifyReport& r) {
  json sol = json::array(), rej = json::array();
  for (const auto& t : r.solutions) sol.push_back(to_json(t));
  for (const auto& x : r.rejections)
    rej.push_back({{"h1", to_json(x.candidate.h1)}, {"h2", to_json(x.candidate.h2)}, {"reason", x.reason}});
  return {{"solutions", sol}, {"rejections", rej}, {"exhaustive", r.exhaustive}};
}

inline IdentifyReport identify_report_from_json(const json& j) {
  IdentifyReport r;
  for (const auto& s : j.at("solutions"))
    r.solutions.emplace_back(poly_from_json(s.at("h1")), poly_from_json(s.at("h2")), poly_from_json(s.at("f")));
  for (const auto& x : j.at("rejections")) {
    Rejection rej;
    rej.candidate.h1 = poly_from_json(x.at("h1"));
    rej.candidate.h2 = poly_from_json(x.at("h2"));
    rej.reason = x.at("reason").get<std::string>();
    r.rejections.push_back(std::move(rej));
  }
  r.exhaustive = j.at("exhaustive").get<bool>();
  return r;
}

inline json to_json(const ZetaCombo& z) {
  json zeta = json::object();
  for (const auto& [d, c] : z.zeta) zeta[std::to_string(d)] = frac(c);
  return {{"const", frac(z.constant)}, {"zeta", zeta}, {"status", z.is_exact() ? "exact" : "divergent"}};
}

inline ZetaCombo zeta_combo_from_json(const json& j) {
  ZetaCombo z;
  const std::string status = j.at("status").get<std::string>();
  if (status != "exact" && status != "divergent") throw error(errc::invalid_input, "unknown status " + status);
  z.status = status == "exact" ? ZetaCombo::Status::exact : ZetaCombo::Status::divergent;
  z.constant = parse_rational(j.at("const").get<std::string>());
  for (const auto& [k, v] : j.at("zeta").items()) z.add_zeta(std::stol(k), parse_rational(v.get<std::string>()));
  return z;
}

inline json to_json(const LimitEstimate& e, unsigned digits = 20) {
  return {{"value", frac(e.value)},
          {"decimal", to_decimal(e.value, digits)},
          {"last_delta", frac(e.last_delta)},
          {"depth_used", e.depth_used},
          {"verdict", e.estimated() ? "estimated" : "inconclusive"}};
}

inline json to_json(const BetaClosedForm& b) {
  if (b.kind == BetaClosedForm::Kind::exact)
    return {{"kind", "exact"}, {"reciprocal_sum", frac(*b.reciprocal_sum)}, {"cf_value", frac(*b.cf_value)}};
  return {{"kind", "integral"}, {"p", frac(b.p)}, {"q", frac(b.q)}, {"ratio", frac(b.r)}, {"form", b.str()}};
}

}  // namespace pcf
