#pragma once

// JSON serialization of forms, estimates, bound records and reports, plus a
// flattening to CSV/table rows that reuses the JSON number strings verbatim.

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polar/bounds.hpp"
#include "polar/extremals.hpp"
#include "polar/form.hpp"
#include "polar/norms.hpp"
#include "polar/report.hpp"
#include "polar/types.hpp"

namespace polar::io {

using json = nlohmann::ordered_json;

/// inf -> "inf", -inf -> "-inf", NaN -> null, finite values unchanged.
inline json number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline double to_double(const json& j) {
  if (j.is_null()) return std::nan("");
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "oo") return kInf;
    if (s == "-inf") return -kInf;
    throw std::invalid_argument("expected a number, got \"" + s + "\"");
  }
  return j.get<double>();
}

inline json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

template <class T>
json vector_json(const Vec<T>& x, Field field) {
  json a = json::array();
  for (const auto& v : x) {
    const cplx c(v);
    if (field == Field::real)
      a.push_back(number(c.real()));
    else
      a.push_back(json::array({number(c.real()), number(c.imag())}));
  }
  return a;
}

// ---- forms ----

inline json form_json(const SymmetricForm& f) {
  json coeffs = json::array();
  for (const auto& t : f.terms()) {
    json c{{"alpha", t.alpha.exponents()}, {"re", number(t.coeff.real())}};
    if (!f.is_real()) c["im"] = number(t.coeff.imag());
    coeffs.push_back(std::move(c));
  }
  return json{{"degree", f.degree()}, {"dim", f.dim()}, {"field", to_string(f.field())}, {"coeffs", coeffs}};
}

inline SymmetricForm form_from_json(const json& j) {
  try {
    const int m = j.at("degree").get<int>();
    const int d = j.at("dim").get<int>();
    const Field field = parse_field(j.value("field", std::string("real")));
    std::vector<Coefficient> coeffs;
    for (const auto& c : j.at("coeffs")) {
      const double re = to_double(c.at("re"));
      const double im = c.contains("im") ? to_double(c.at("im")) : 0.0;
      coeffs.push_back({MultiIndex(c.at("alpha").get<std::vector<int>>()), cplx(re, im)});
    }
    return make_form(m, d, field, coeffs);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("form file: ") + e.what());
  }
}

inline SymmetricForm read_form(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open form file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("form file '" + path + "': " + e.what());
  }
  return form_from_json(j);
}

inline void write_form(const SymmetricForm& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << form_json(f).dump(2) << '\n';
}

// ---- records ----

inline json space_json(const SpaceSpec& s) {
  return json{{"p", number(s.p)}, {"dim", s.dim}, {"field", to_string(s.field)}};
}

inline json estimate_json(const NormEstimate& e) {
  json w = json::array();
  for (const auto& x : e.witnesses) w.push_back(vector_json(x, e.field));
  return json{{"value", number(e.value)},
              {"method", to_string(e.method)},
              {"starts", e.starts},
              {"starts_converged", e.starts_converged},
              {"witnesses", w}};
}

inline json bound_json(const bounds::BoundRecord& r) {
  json j{{"name", r.name},
         {"value", number(r.value)},
         {"log_value", number(r.log_value)},
         {"scope", bounds::to_string(r.scope)},
         {"p_lo", number(r.p_range.lo)},
         {"p_hi", number(r.p_range.hi)},
         {"applicable", r.applicable},
         {"pattern", r.pattern ? json(r.pattern->str()) : json(nullptr)},
         {"sharp", r.sharp},
         {"proven", r.proven},
         {"disjoint_support_only", r.disjoint_support_only},
         {"known_exact", optional_number(r.known_exact)},
         {"source", r.source},
         {"citation", r.citation},
         {"note", r.note}};
  return j;
}

inline json ratio_report_json(const RatioReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(json{{"bound", c.bound.name}, {"value", number(c.bound.value)}, {"pass", c.pass}});
  return json{{"pattern", r.pattern.str()},
              {"space", space_json(r.space)},
              {"poly", estimate_json(r.poly)},
              {"mixed", estimate_json(r.mixed)},
              {"ratio", number(r.ratio)},
              {"slack", number(r.slack)},
              {"known_exact", optional_number(r.known_exact)},
              {"checks", checks},
              {"pass", r.pass}};
}

inline json instance_json(const ExtremalInstance& inst) {
  json w = json::array();
  for (const auto& x : inst.witnesses) w.push_back(vector_json(x, Field::real));
  return json{{"name", inst.name},
              {"space", space_json(inst.space)},
              {"pattern", inst.pattern.str()},
              {"witnesses", w},
              {"exact_poly_norm", optional_number(inst.exact_poly_norm)},
              {"exact_ratio", optional_number(inst.exact_ratio)},
              {"exact_mixed", optional_number(inst.exact_mixed)},
              {"ratio_tolerance", number(inst.ratio_tolerance)},
              {"citation", inst.citation}};
}

/// Writes `<stem>.form.json` and `<stem>.instance.json`.
inline void write_instance(const ExtremalInstance& inst, const std::string& stem) {
  write_form(inst.form, stem + ".form.json");
  std::ofstream out(stem + ".instance.json");
  if (!out) throw std::runtime_error("cannot write '" + stem + ".instance.json'");
  out << instance_json(inst).dump(2) << '\n';
}

inline json instance_report_json(const InstanceReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(json{{"quantity", c.quantity},
                          {"measured", number(c.measured)},
                          {"expected", number(c.expected)},
                          {"tolerance", number(c.tolerance)},
                          {"pass", c.pass}});
  return json{{"name", r.name},
              {"poly", estimate_json(r.poly)},
              {"mixed", estimate_json(r.mixed)},
              {"ratio", number(r.ratio)},
              {"witness_value", number(r.witness_value)},
              {"checks", checks},
              {"pass", r.pass}};
}

// ---- flat output ----

/// Leaves of `j` as (dotted path, dumped value); strings are emitted unquoted.
inline void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    if (j.empty()) out.emplace_back(prefix, "");
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

/// Long-format CSV: one row per leaf of each result.
inline std::string to_csv(const json& report) {
  std::ostringstream os;
  os << "result,key,value\n";
  const auto& results = report.at("results");
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(results[i], "", rows);
    for (const auto& [k, v] : rows) os << i << ',' << csv_field(k) << ',' << csv_field(v) << '\n';
  }
  os << "summary,pass," << (report.at("pass").get<bool>() ? "true" : "false") << '\n';
  return os.str();
}

/// Aligned key/value listing per result, witnesses omitted.
inline std::string to_table(const json& report) {
  std::ostringstream os;
  const auto& results = report.at("results");
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(results[i], "", rows);
    std::size_t w = 0;
    for (const auto& r : rows)
      if (r.first.find("witnesses") == std::string::npos) w = std::max(w, r.first.size());
    os << "[" << i << "]\n";
    for (const auto& [k, v] : rows) {
      if (k.find("witnesses") != std::string::npos) continue;
      os << "  " << k << std::string(w - k.size() + 2, ' ') << v << '\n';
    }
  }
  os << "pass: " << (report.at("pass").get<bool>() ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace polar::io
