#include "kdon/json_io.hpp"

#include <sstream>

#include <json.hpp>

namespace kdon {

namespace {

using nlohmann::json;

constexpr i64 kClampWindow = 1000000000;

i64 emit_window(i64 w) { return w >= kInfWindow ? kClampWindow : w; }
i64 parse_window(i64 w) { return w >= kClampWindow ? kInfWindow : w; }

json coeff_obj(i64 key, const char* key_name, const GaussianRational& c) {
  return json{{key_name, key}, {"re", rat_str(c.re)}, {"im", rat_str(c.im)}};
}

GaussianRational coeff_from(const json& j) {
  return {rat_parse(j.at("re").get<std::string>()), rat_parse(j.at("im").get<std::string>())};
}

json row_to_json(i64 d, const QLaurent& row) {
  json coeffs = json::array();
  for (i64 k = row.stored_begin(); k < row.stored_end(); ++k)
    if (!row.stored(k).is_zero()) coeffs.push_back(coeff_obj(k, "k", row.stored(k)));
  i64 min_order = row.known_zero() ? emit_window(row.max_valid()) + 1 : row.min_order();
  return json{{"d", d},
              {"min_order", min_order},
              {"max_valid", emit_window(row.max_valid())},
              {"coeffs", std::move(coeffs)}};
}

QLaurent row_from_json(const json& j) {
  i64 w = parse_window(j.at("max_valid").get<i64>());
  const json& coeffs = j.at("coeffs");
  if (coeffs.empty()) return QLaurent::zero_through(w == kInfWindow ? kInfWindow : w);
  i64 lo = coeffs.front().at("k").get<i64>();
  i64 hi = coeffs.back().at("k").get<i64>();
  std::vector<GaussianRational> dense(static_cast<size_t>(hi - lo + 1));
  for (const json& c : coeffs) dense[static_cast<size_t>(c.at("k").get<i64>() - lo)] = coeff_from(c);
  return QLaurent::from_coeffs(std::move(dense), lo, w);
}

json poly_to_json_value(const LambdaPoly& p) {
  json arr = json::array();
  for (const auto& [d, c] : p.terms()) arr.push_back(coeff_obj(d, "d", c));
  return arr;
}

std::string dump(const json& j, int indent) { return indent > 0 ? j.dump(indent) : j.dump(); }

}  // namespace

std::string biseries_to_json(const BiSeries& s, int indent) {
  json rows = json::array();
  for (i64 d = s.lambda_min(); d <= s.lambda_trunc(); ++d) rows.push_back(row_to_json(d, s.row(d)));
  return dump(json{{"lambda_truncation", s.lambda_trunc()}, {"rows", std::move(rows)}}, indent);
}

BiSeries biseries_from_json(const std::string& text) {
  json j = json::parse(text);
  i64 trunc = j.at("lambda_truncation").get<i64>();
  const json& rows = j.at("rows");
  i64 lmin = 0;
  for (const json& r : rows) lmin = std::min(lmin, r.at("d").get<i64>());
  BiSeries s(trunc, lmin);
  for (const json& r : rows) s.set_row(r.at("d").get<i64>(), row_from_json(r));
  return s;
}

std::string lambda_poly_to_json(const LambdaPoly& p, int indent) {
  return dump(poly_to_json_value(p), indent);
}

LambdaPoly lambda_poly_from_json(const std::string& text) {
  json j = json::parse(text);
  LambdaPoly p;
  for (const json& c : j) p.set(c.at("d").get<i64>(), coeff_from(c));
  return p;
}

std::string delta_to_json(const std::string& xi_label, const LambdaPoly& p, int indent) {
  json arr = json::array();
  for (const auto& [d, c] : p.terms()) {
    json term{{"d", d}, {"c", rat_str(c.re)}};
    if (!c.is_real()) term["im"] = rat_str(c.im);
    arr.push_back(std::move(term));
  }
  return dump(json{{"xi", xi_label}, {"delta", std::move(arr)}}, indent);
}

std::string genfun_to_json(const Surface& s, const GenFun& g, int indent) {
  return dump(json{{"surface", g.surface},
                   {"c1", class_str(s, g.c1)},
                   {"L", class_str(s, g.L)},
                   {"pol", polspec_str(s, g.pol)},
                   {"lambda_truncation", g.lambda_truncation},
                   {"conventioned", g.conventioned},
                   {"series", poly_to_json_value(g.series)}},
              indent);
}

std::string report_to_json(const VerifyReport& r, int indent) {
  json checks = json::array();
  for (const CheckResult& c : r.checks)
    checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return dump(json{{"suite", r.suite},
                   {"pass", r.pass},
                   {"retried", r.retried},
                   {"checks", std::move(checks)}},
              indent);
}

std::string lambda_poly_table(const LambdaPoly& p) {
  std::ostringstream os;
  os << "  d  coefficient\n";
  for (const auto& [d, c] : p.terms()) os << "  " << d << "  " << c.str() << "\n";
  if (p.is_zero()) os << "  (zero)\n";
  return os.str();
}

namespace {

std::string row_str(const QLaurent& row) {
  if (row.exact_zero()) return "0";
  std::ostringstream os;
  bool any = false;
  for (i64 k = row.stored_begin(); k < row.stored_end(); ++k) {
    if (row.stored(k).is_zero()) continue;
    if (any) os << " + ";
    os << "(" << row.stored(k).str() << ")*q^" << k;
    any = true;
  }
  if (!any) os << "0";
  if (row.max_valid() < kInfWindow) os << "  [valid through q^" << row.max_valid() << "]";
  return os.str();
}

}  // namespace

std::string biseries_table(const BiSeries& s) {
  std::ostringstream os;
  for (i64 d = s.lambda_min(); d <= s.lambda_trunc(); ++d) {
    const QLaurent& row = s.row(d);
    if (row.known_zero() && d != 0) continue;
    os << "  L^" << d << ": " << row_str(row) << "\n";
  }
  return os.str();
}

std::string genfun_table(const Surface& s, const GenFun& g) {
  std::ostringstream os;
  os << "surface " << g.surface << ", c1 = " << class_str(s, g.c1) << ", L = " << class_str(s, g.L)
     << ", polarization " << polspec_str(s, g.pol) << ", through L^" << g.lambda_truncation;
  if (g.conventioned) os << " (degree-4 convention applied)";
  os << "\n" << lambda_poly_table(g.series);
  return os.str();
}

std::string report_table(const VerifyReport& r) {
  std::ostringstream os;
  int failed = 0;
  for (const CheckResult& c : r.checks) {
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
    if (!c.pass) ++failed;
  }
  os << (r.pass ? "PASS" : "FAIL") << "  suite " << r.suite << ": "
     << (r.checks.size() - static_cast<size_t>(failed)) << "/" << r.checks.size() << " checks";
  if (r.retried) os << " (rerun with a wider q-window)";
  os << "\n";
  return os.str();
}

}  // namespace kdon
