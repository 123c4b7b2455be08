#include "lpnorm/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace lpnorm {

namespace {

constexpr std::size_t kFullTrace = 1000;

std::string_view constraint_name(MuConstraint c) { return c == MuConstraint::floor ? "floor" : "ceiling"; }

}  // namespace

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json index_or_null(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

std::string format_double(double v) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json to_json(const FactorableSpec& spec) {
  Json a = Json::array();
  Json b = Json::array();
  for (double v : spec.row_factors()) a.push_back(number(v));
  for (double v : spec.column_factors()) b.push_back(number(v));
  return Json{{"kind", spec.kind()}, {"a", a}, {"b", b}, {"N", spec.size()}};
}

Json to_json(const NormEstimate& est) {
  return Json{{"method", "power"},
              {"p", number(est.p)},
              {"N", est.n},
              {"lower_bound", number(est.lower_bound)},
              {"iterations", est.iterations},
              {"residual", number(est.residual)},
              {"converged", est.converged}};
}

Json to_json(const CertificateReport& r) {
  return Json{{"method", r.method},
              {"p", number(r.params.p)},
              {"q", number(r.params.q)},
              {"L", number(r.params.L)},
              {"lambda_p", number(r.params.lambda_p)},
              {"U_p", number(r.params.U_p)},
              {"N", r.n},
              {"pass", r.pass},
              {"first_fail", index_or_null(r.first_fail)},
              {"worst_margin", number(r.worst_margin)},
              {"worst_index", r.worst_index},
              {"bound", number(r.bound)},
              {"note", r.note}};
}

std::vector<std::size_t> decimated_indices(std::size_t n, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= std::min(n, kFullTrace); ++i) out.push_back(i);
  if (n > kFullTrace) {
    for (std::size_t i = 1024; i <= n; i *= 2) out.push_back(i);
    out.push_back(n);
    for (auto k : keep) {
      if (k >= 1 && k <= n) out.push_back(k);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

Json to_json(const MuTrace& t) {
  std::vector<std::size_t> keep;
  if (t.first_violation) keep.push_back(*t.first_violation);
  if (t.first_target_violation) keep.push_back(*t.first_target_violation);
  Json rows = Json::array();
  for (auto n : decimated_indices(t.values.size(), keep)) {
    Json row{{"n", n}, {"mu", number(t.values[n - 1])}, {"margin", number(t.margins[n - 1])}};
    if (!t.target_margins.empty()) row["target_margin"] = number(t.target_margins[n - 1]);
    rows.push_back(std::move(row));
  }
  return Json{{"name", t.name},
              {"constraint", constraint_name(t.constraint)},
              {"requested", t.requested},
              {"computed", t.values.size()},
              {"pass", t.pass()},
              {"first_violation", index_or_null(t.first_violation)},
              {"min_margin", number(t.min_margin())},
              {"target", t.target_name},
              {"target_pass", t.target_pass()},
              {"first_target_violation", index_or_null(t.first_target_violation)},
              {"min_target_margin", number(t.min_target_margin())},
              {"note", t.note},
              {"decimated", t.values.size() > kFullTrace},
              {"trace", rows}};
}

Json to_json(const RootResult& r) {
  return Json{{"c_p", number(r.c_p)}, {"residual", number(r.residual)}, {"iterations", r.iterations}};
}

Json to_json(const Ineq36Report& r) {
  return Json{{"p", number(r.p)},       {"c", number(r.c)},           {"grid", r.grid},
              {"pass", r.pass},         {"min_margin", number(r.min_margin)}, {"argmin", number(r.argmin)}};
}

Json to_json(const CopsonReport& r) {
  return Json{{"branch", r.branch},
              {"p", number(r.p)},
              {"c_or_alpha", number(r.c_or_alpha)},
              {"N", r.n},
              {"trials", r.trials},
              {"max_ratio", number(r.max_ratio)},
              {"min_margin", number(r.min_margin)},
              {"argmin", r.argmin},
              {"pass", r.pass}};
}

Json to_json(const StrengthenedReport& r) {
  return Json{{"which", r.which},
              {"p", number(r.p)},
              {"c", number(r.c)},
              {"L", number(r.L)},
              {"constant", number(r.constant)},
              {"N", r.n},
              {"trials", r.trials},
              {"max_ratio", number(r.max_ratio)},
              {"max_holder_ratio", number(r.max_holder_ratio)},
              {"min_margin", number(r.min_margin)},
              {"worst", r.worst},
              {"pass", r.pass},
              {"holder_pass", r.holder_pass}};
}

Json to_json(const MuChoiceReport& r) {
  return Json{{"which", r.which},
              {"p", number(r.p)},
              {"param", number(r.param)},
              {"N", r.n},
              {"required", number(r.required)},
              {"min_lhs", number(r.min_lhs)},
              {"min_margin", number(r.min_margin)},
              {"rounding", number(r.rounding)},
              {"argmin", r.argmin},
              {"feasible", r.feasible},
              {"first_infeasible", r.feasible ? Json(nullptr) : Json(r.first_infeasible)},
              {"identity_error", number(r.identity_error)},
              {"pass", r.pass()}};
}

Json to_json(const Thm114Result& r) {
  return Json{{"p", number(r.p)},
              {"certified", r.n0.has_value()},
              {"method", "thm114"},
              {"n0", index_or_null(r.n0)},
              {"c", nullptr},
              {"margins", Json{{"threshold", number(r.margin)}}},
              {"N_max", r.n_max},
              {"domain_failure", index_or_null(r.domain_failure)}};
}

Json to_json(const Thm115Report& r) {
  return Json{{"p", number(r.p)},
              {"n0", r.n0},
              {"c", number(r.c)},
              {"feasible", r.feasible},
              {"domain_ok", r.domain_ok},
              {"margins", Json{{"mu", number(r.margin_mu)}, {"c", number(r.margin_c)}, {"f", number(r.margin_f)}}}};
}

Json to_json(const SearchCResult& r) {
  Json j{{"p", number(r.p)},
         {"certified", r.n0.has_value()},
         {"method", "thm115"},
         {"n0", index_or_null(r.n0)},
         {"c", number(r.c)},
         {"c_min", number(r.c_min)},
         {"N_max", r.n0_max}};
  j["margins"] = r.n0 ? to_json(r.report)["margins"] : Json(nullptr);
  return j;
}

Json to_json(const DualTrialReport& r) {
  return Json{{"p", number(r.p)},
              {"N", r.n},
              {"trials", r.trials},
              {"max_ratio", number(r.max_ratio)},
              {"argmax", r.argmax},
              {"pass", r.pass}};
}

std::string csv_header() { return "method,p,L,c,alpha,N,pass,first_fail,worst_margin,bound"; }

std::string csv_line(const CsvRow& row) {
  std::string s = row.method;
  for (double v : {row.p, row.L, row.c, row.alpha}) s += "," + format_double(v);
  s += "," + std::to_string(row.n);
  s += row.pass ? ",true," : ",false,";
  if (row.first_fail) s += std::to_string(*row.first_fail);
  s += "," + format_double(row.worst_margin);
  s += "," + format_double(row.bound);
  return s;
}

CsvRow csv_row(const CertificateReport& r) {
  CsvRow row;
  row.method = r.method;
  row.p = r.params.p;
  row.L = r.params.L;
  row.n = r.n;
  row.pass = r.pass;
  row.first_fail = r.first_fail;
  row.worst_margin = r.worst_margin;
  row.bound = r.bound;
  return row;
}

}  // namespace lpnorm
