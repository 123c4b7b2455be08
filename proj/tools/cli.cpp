#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lpnorm/certificates.hpp"
#include "lpnorm/copson.hpp"
#include "lpnorm/corpus.hpp"
#include "lpnorm/factorable.hpp"
#include "lpnorm/hlp.hpp"
#include "lpnorm/norm_probe.hpp"
#include "lpnorm/report.hpp"
#include "lpnorm/strengthened.hpp"
#include "lpnorm/weights.hpp"

namespace lpnorm::cli {

namespace {

struct Config {
  std::string weights = "constant";
  double p = 2.0;
  std::optional<double> L;
  std::optional<double> c;
  std::optional<double> alpha;
  std::optional<std::size_t> N;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 1;
  double tol = kConditionTol;
  std::string out;
  std::string format = "json";
  bool serial = false;

  // subcommand options
  std::string matrix = "weighted_mean";
  std::string method;
  bool search_L = false;
  std::string branch = "1.1'";
  double offset = 0.01;
  std::size_t start = 1000;
  std::string route = "dual";
  std::string which;
  std::string choice;
  std::size_t nmax = 100000;
  std::size_t n0 = 1;
  double lo = 0.346;
  double hi = 0.35;
  double width = 1e-4;
  std::vector<double> s_values;
  std::vector<std::size_t> n_values;
  std::string trace_kind = "direct";
  std::vector<std::string> methods;
  std::vector<std::string> files;
  std::size_t count = 44;
  std::vector<double> fractions{0.6, 0.7, 0.8, 0.9, 1.0};
};

struct Outcome {
  Json json;
  std::vector<CsvRow> rows;
  bool pass = true;
};

Execution exec_of(const Config& cfg) { return cfg.serial ? Execution::serial : Execution::parallel; }
CheckOptions check_options(const Config& cfg) { return {cfg.tol, exec_of(cfg)}; }

double need(const std::optional<double>& v, const char* flag) {
  require(v.has_value(), std::string("missing required option ") + flag);
  return *v;
}

WeightSequence load_weights(const Config& cfg, std::size_t default_n) {
  const auto spec = WeightSpec::parse(cfg.weights);
  std::size_t n = default_n;
  if (cfg.N) {
    n = *cfg.N;
  } else if (spec.kind == WeightKind::explicit_list) {
    n = spec.values.size();
  }
  return build_weights(spec, n);
}

CsvRow summary_row(std::string method, const Config& cfg, std::size_t n, bool pass, double worst, double bound) {
  CsvRow row;
  row.method = std::move(method);
  row.p = cfg.p;
  row.L = cfg.L.value_or(kNaN);
  row.c = cfg.c.value_or(kNaN);
  row.alpha = cfg.alpha.value_or(kNaN);
  row.n = n;
  row.pass = pass;
  row.worst_margin = worst;
  row.bound = bound;
  return row;
}

CsvRow trace_row(const MuTrace& t, const Config& cfg) {
  auto row = summary_row(t.name, cfg, t.requested, t.pass(), t.min_margin(), kNaN);
  row.first_fail = t.first_violation;
  return row;
}

// norm ---------------------------------------------------------------------

Outcome cmd_norm(const Config& cfg) {
  const auto w = load_weights(cfg, 1000);
  FactorableSpec spec = cfg.matrix == "weighted_mean" ? weighted_mean(w)
                        : cfg.matrix == "copson"      ? copson_matrix(w, cfg.p, need(cfg.c, "--c"))
                        : cfg.matrix == "bge"         ? bge_matrix(w, cfg.p, need(cfg.alpha, "--alpha"))
                                                      : throw DomainError("unknown matrix '" + cfg.matrix + "'");
  const auto est = power_lower_bound(spec, cfg.p);
  Outcome o;
  o.json = Json{{"matrix", cfg.matrix}, {"weights", cfg.weights}};
  const Json est_json = to_json(est);
  for (const auto& [k, v] : est_json.items()) o.json[k] = v;
  o.rows.push_back(summary_row("norm:" + cfg.matrix, cfg, est.n, est.converged, kNaN, est.lower_bound));
  return o;
}

// certify ------------------------------------------------------------------

Outcome cmd_certify(Config cfg) {
  const auto w = load_weights(cfg, 1000);
  const auto method = parse_method(cfg.method);
  const auto opt = check_options(cfg);
  Outcome o;

  if (cfg.search_L) {
    // Bisection for the smallest L in (0, p) the method accepts; assumes
    // acceptance is monotone in L, which is not checked.
    double lo = 0.0;
    double hi = cfg.p * (1.0 - 1e-9);
    const bool ok_hi = run_method(method, w, cfg.p, hi, opt).pass;
    std::optional<double> best;
    if (ok_hi) {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mid > 0.0 && run_method(method, w, cfg.p, mid, opt).pass ? hi : lo) = mid;
      }
      best = hi;
    }
    o.json = Json{{"method", cfg.method}, {"weights", cfg.weights}, {"p", number(cfg.p)}, {"N", w.size()},
                  {"found", best.has_value()}, {"L_min", best ? number(*best) : Json(nullptr)},
                  {"bound", best ? number(cfg.p / (cfg.p - *best)) : Json(nullptr)}};
    cfg.L = best;
    o.rows.push_back(summary_row(cfg.method + ":search_L", cfg, w.size(), ok_hi, kNaN,
                                 best ? cfg.p / (cfg.p - *best) : kNaN));
    o.pass = ok_hi;
    return o;
  }

  CertificateReport rep;
  std::optional<MuTrace> trace;
  if (method == Method::cartlidge && !cfg.L) {
    rep = check_cartlidge(w, cfg.p);
  } else {
    const double L = cfg.L ? *cfg.L : cartlidge_L(w);
    if (method == Method::mu_primal || method == Method::mu_dual) {
      const auto params = make_bound_params(cfg.p, L);
      const auto spec = weighted_mean(w);
      trace = method == Method::mu_primal ? mu_primal(spec, cfg.p, params.lambda_p, w.size())
                                          : mu_dual(spec, cfg.p, params.U_p, w.size());
    }
    rep = run_method(method, w, cfg.p, L, opt);
  }
  o.json = to_json(rep);
  o.json["weights"] = cfg.weights;
  if (trace) o.json["trace"] = to_json(*trace);
  o.rows.push_back(csv_row(rep));
  o.pass = rep.pass;
  return o;
}

// copson -------------------------------------------------------------------

Outcome cmd_cp_root(const Config& cfg) {
  const auto r = solve_cp(cfg.p);
  Outcome o;
  o.json = to_json(r);
  o.json["p"] = number(cfg.p);
  o.json["threshold"] = number(thm15_threshold(cfg.p));
  o.rows.push_back(summary_row("copson:cp-root", cfg, 0, true, r.residual, r.c_p));
  return o;
}

Outcome cmd_copson_admissible(const Config& cfg) {
  const double c = need(cfg.c, "--c");
  const bool ok = thm15_admissible(cfg.p, c);
  const double t = thm15_threshold(cfg.p);
  Outcome o;
  o.json = Json{{"p", number(cfg.p)}, {"c", number(c)}, {"threshold", number(t)}, {"admissible", ok}};
  o.rows.push_back(summary_row("copson:admissible", cfg, 0, ok, t - c, t));
  o.pass = ok;
  return o;
}

Outcome cmd_ineq36(const Config& cfg) {
  const auto r = check_ineq_36prime(cfg.p, need(cfg.c, "--c"));
  Outcome o;
  o.json = to_json(r);
  o.rows.push_back(summary_row("copson:ineq36", cfg, r.grid, r.pass, r.min_margin, kNaN));
  o.pass = r.pass;
  return o;
}

TrialOptions trial_options(const Config& cfg) {
  TrialOptions t;
  t.trials = cfg.trials.value_or(1000);
  t.seed = cfg.seed;
  t.exec = exec_of(cfg);
  return t;
}

Outcome from_copson(const CopsonReport& r, const Config& cfg, const std::string& label) {
  Outcome o;
  o.json = to_json(r);
  o.json["weights"] = cfg.weights;
  o.rows.push_back(summary_row(label, cfg, r.n, r.pass, r.min_margin, kNaN));
  o.pass = r.pass;
  return o;
}

Outcome cmd_copson_numeric(const Config& cfg) {
  const auto w = load_weights(cfg, 1000);
  const auto branch = parse_copson_branch(cfg.branch);
  const auto r = check_copson_numeric(w, cfg.p, need(cfg.c, "--c"), branch, trial_options(cfg));
  return from_copson(r, cfg, "copson:" + std::string(to_string(branch)));
}

Outcome from_trace(const MuTrace& t, const Config& cfg) {
  Outcome o;
  o.json = to_json(t);
  o.json["weights"] = cfg.weights;
  o.json["p"] = number(cfg.p);
  o.rows.push_back(trace_row(t, cfg));
  o.pass = t.pass();
  return o;
}

Outcome cmd_copson_mu(const Config& cfg) {
  const auto w = load_weights(cfg, 1000);
  return from_trace(mu_dual_copson(w, cfg.p, need(cfg.c, "--c"), w.size()), cfg);
}

Outcome cmd_copson_probe(const Config& cfg) {
  const auto w = load_weights(cfg, 100000);
  const double c = need(cfg.c, "--c");
  const auto pts = copson_probe_schedule(w, cfg.p, c, std::min(cfg.start, w.size()), cfg.offset);
  Outcome o;
  Json arr = Json::array();
  for (const auto& pt : pts) {
    arr.push_back(Json{{"N", pt.n}, {"ratio", number(pt.ratio)}});
    o.rows.push_back(summary_row("copson:probe", cfg, pt.n, pt.ratio <= 1.0 + kRatioTol, 1.0 - pt.ratio, kNaN));
    o.pass = o.pass && pt.ratio <= 1.0 + kRatioTol;
  }
  o.json = Json{{"p", number(cfg.p)}, {"c", number(c)}, {"offset", number(cfg.offset)}, {"weights", cfg.weights},
                {"points", arr}};
  return o;
}

// bge ----------------------------------------------------------------------

Outcome cmd_bge_trials(const Config& cfg) {
  const auto w = load_weights(cfg, 1000);
  return from_copson(check_bge(w, cfg.p, need(cfg.alpha, "--alpha"), trial_options(cfg)), cfg, "bge");
}

Outcome cmd_bge_mu(const Config& cfg) {
  const auto w = load_weights(cfg, 1000);
  require(cfg.route == "dual" || cfg.route == "primal", "--route must be dual or primal");
  const auto route = cfg.route == "dual" ? BgeRoute::dual : BgeRoute::primal;
  return from_trace(mu_bge(w, cfg.p, need(cfg.alpha, "--alpha"), w.size(), route), cfg);
}

Outcome cmd_bge_admissible(const Config& cfg) {
  const double alpha = need(cfg.alpha, "--alpha");
  const bool ok = thm16_admissible(cfg.p, alpha);
  const double t = 1.0 - 1.0 / (2.0 * cfg.p);
  Outcome o;
  o.json = Json{{"p", number(cfg.p)}, {"alpha", number(alpha)}, {"threshold", number(t)}, {"admissible", ok}};
  o.rows.push_back(summary_row("bge:admissible", cfg, 0, ok, alpha - t, t));
  o.pass = ok;
  return o;
}

// strengthened -------------------------------------------------------------

Outcome cmd_strengthened_check(const Config& cfg) {
  const auto w = load_weights(cfg, 1000);
  StrengthenedCase sc;
  sc.which = parse_strengthened_kind(cfg.which);
  sc.p = cfg.p;
  sc.c = cfg.c.value_or(kNaN);
  sc.L = cfg.L.value_or(kNaN);
  StrengthenedOptions opt;
  opt.trials = cfg.trials.value_or(200);
  opt.seed = cfg.seed;
  opt.exec = exec_of(cfg);
  const auto r = check_strengthened(sc, w, opt);
  Outcome o;
  o.json = to_json(r);
  o.json["weights"] = cfg.weights;
  auto row = summary_row("strengthened:" + r.which, cfg, r.n, r.pass, r.min_margin, r.constant);
  row.L = r.L;
  o.rows.push_back(row);
  o.pass = r.pass;
  return o;
}

Outcome cmd_mu_choice(const Config& cfg) {
  const auto w = load_weights(cfg, 1000);
  const auto which = parse_mu_choice(cfg.choice);
  const bool by_L = which == MuChoice::cartlidge || which == MuChoice::dual_107;
  double param;
  if (by_L) {
    param = cfg.L ? *cfg.L : cartlidge_L(w);
  } else {
    param = need(cfg.c, "--c");
  }
  const auto r = verify_mu_choice(which, w, cfg.p, param);
  Outcome o;
  o.json = to_json(r);
  o.json["weights"] = cfg.weights;
  auto row = summary_row("mu-choice:" + r.which, cfg, r.n, r.pass(), r.min_margin, kNaN);
  if (by_L) row.L = param;
  if (!r.feasible) row.first_fail = r.first_infeasible;
  o.rows.push_back(row);
  o.pass = r.pass();
  return o;
}

// hlp ----------------------------------------------------------------------

Outcome cmd_hlp_certify(const Config& cfg) {
  const auto direct = thm114_certify(cfg.p, cfg.nmax);
  Outcome o;
  if (direct.n0) {
    o.json = to_json(direct);
    o.rows.push_back(summary_row("hlp:thm114", cfg, cfg.nmax, true, direct.margin, hlp_constant(cfg.p)));
    o.rows.back().first_fail = direct.n0;
    return o;
  }
  const auto sc = search_c(cfg.p, std::min<std::size_t>(cfg.nmax, 10000));
  o.json = to_json(sc);
  o.json["N_max"] = cfg.nmax;
  o.json["thm114_domain_failure"] = index_or_null(direct.domain_failure);
  o.pass = sc.n0.has_value();
  auto row = summary_row("hlp:thm115", cfg, cfg.nmax, o.pass, sc.n0 ? sc.report.margin_f : kNaN, hlp_constant(cfg.p));
  row.c = sc.c;
  o.rows.push_back(row);
  return o;
}

Outcome cmd_check146(const Config& cfg) {
  const double v = check_146(cfg.p);
  Outcome o;
  o.json = Json{{"p", number(cfg.p)}, {"value", number(v)}, {"holds", v >= 0.0}};
  o.rows.push_back(summary_row("hlp:check146", cfg, 0, v >= 0.0, v, kNaN));
  o.pass = v >= 0.0;
  return o;
}

Outcome cmd_bracket146(const Config& cfg) {
  const auto b = bracket_146(cfg.lo, cfg.hi, cfg.width);
  Outcome o;
  o.json = Json{{"lo", number(b.lo)}, {"hi", number(b.hi)}, {"width", number(b.hi - b.lo)}, {"iterations", b.iterations}};
  o.rows.push_back(summary_row("hlp:bracket146", cfg, b.iterations, true, b.hi - b.lo, b.lo));
  return o;
}

Outcome cmd_search_c(const Config& cfg) {
  const auto r = search_c(cfg.p, std::min<std::size_t>(cfg.nmax, 10000));
  Outcome o;
  o.json = to_json(r);
  auto row = summary_row("hlp:search-c", cfg, r.n0_max, r.n0.has_value(), r.n0 ? r.report.margin_f : kNaN, kNaN);
  row.c = r.c;
  o.rows.push_back(row);
  o.pass = r.n0.has_value();
  return o;
}

Outcome cmd_feasible(const Config& cfg) {
  const auto r = thm115_feasible(cfg.p, cfg.n0, need(cfg.c, "--c"));
  Outcome o;
  o.json = to_json(r);
  const double worst = std::min({r.margin_mu, r.margin_c, r.margin_f});
  o.rows.push_back(summary_row("hlp:feasible", cfg, r.n0, r.feasible, worst, kNaN));
  o.pass = r.feasible;
  return o;
}

Outcome cmd_hlp_probe(const Config& cfg) {
  auto s_values = cfg.s_values;
  if (s_values.empty()) s_values = {1.0 / cfg.p + 0.01, 1.0 / cfg.p + 0.1, 1.0 / cfg.p + 1.0};
  auto n_values = cfg.n_values;
  if (n_values.empty()) n_values = {cfg.N.value_or(100000)};
  const double C = hlp_constant(cfg.p);
  const auto grid = probe_hlp_grid(cfg.p, s_values, n_values, exec_of(cfg));
  Outcome o;
  Json arr = Json::array();
  for (const auto& g : grid) {
    const bool ok = g.ratio >= C - 1e-9;
    arr.push_back(Json{{"s", number(g.s)}, {"N", g.n}, {"ratio", number(g.ratio)}, {"above", ok}});
    o.rows.push_back(summary_row("hlp:probe", cfg, g.n, ok, g.ratio - C, C));
    o.pass = o.pass && ok;
  }
  o.json = Json{{"p", number(cfg.p)}, {"C_p", number(C)}, {"points", arr}};
  return o;
}

Outcome cmd_dual_trials(const Config& cfg) {
  const auto r = hlp_dual_trials(cfg.p, cfg.N.value_or(1000), cfg.trials.value_or(1000), cfg.seed, exec_of(cfg));
  Outcome o;
  o.json = to_json(r);
  o.rows.push_back(summary_row("hlp:dual-trials", cfg, r.n, r.pass, 1.0 - r.max_ratio, kNaN));
  o.pass = r.pass;
  return o;
}

Outcome cmd_hlp_trace(const Config& cfg) {
  require(cfg.trace_kind == "direct" || cfg.trace_kind == "dual", "--kind must be direct or dual");
  const std::size_t n = cfg.N.value_or(1000);
  const auto t = cfg.trace_kind == "direct" ? mu_direct(cfg.p, n) : mu_dual_hlp(cfg.p, n);
  return from_trace(t, cfg);
}

// compare ------------------------------------------------------------------

Json instance_json(const CompareInstance& inst) {
  return Json{{"weights", inst.label},
              {"L", number(inst.L)},
              {"a", Json{{"pass", inst.a.pass}, {"first_fail", index_or_null(inst.a.first_fail)},
                         {"worst_margin", number(inst.a.worst_margin)}}},
              {"b", Json{{"pass", inst.b.pass}, {"first_fail", index_or_null(inst.b.first_fail)},
                         {"worst_margin", number(inst.b.worst_margin)}}}};
}

Outcome cmd_compare(const Config& cfg) {
  require(cfg.methods.size() == 2, "--methods takes exactly two names, e.g. --methods cor18,cor12");
  const auto a = parse_method(cfg.methods[0]);
  const auto b = parse_method(cfg.methods[1]);
  const std::size_t n = cfg.N.value_or(200);
  auto corpus = standard_corpus(n, cfg.count, cfg.seed);
  for (const auto& f : cfg.files) {
    auto spec = WeightSpec::parse("file:" + f);
    const std::size_t len = std::min(n, spec.values.size());
    corpus.push_back({"file:" + f, build_weights(spec, len)});
  }
  const auto rep = compare_methods(a, b, corpus, cfg.p, cfg.L, cfg.fractions, check_options(cfg));

  Outcome o;
  Json all = Json::array();
  Json differing = Json::array();
  for (const auto& inst : rep.instances) {
    all.push_back(instance_json(inst));
    if (inst.differs()) differing.push_back(instance_json(inst));
    for (const auto* r : {&inst.a, &inst.b}) {
      auto row = csv_row(*r);
      row.method = std::string(r == &inst.a ? "a:" : "b:") + row.method + "@" + inst.label;
      o.rows.push_back(row);
    }
  }
  o.json = Json{{"methods", {rep.method_a, rep.method_b}},
                {"p", number(rep.p)},
                {"N", n},
                {"L", cfg.L ? number(*cfg.L) : Json("fractions of cartlidge_L")},
                {"instances_checked", rep.instances.size()},
                {"matrix", Json{{"pass_pass", rep.counts[0][0]},
                                {"pass_fail", rep.counts[0][1]},
                                {"fail_pass", rep.counts[1][0]},
                                {"fail_fail", rep.counts[1][1]}}},
                {"differing", differing},
                {"instances", all}};
  return o;
}

void emit(const Outcome& o, const Config& cfg, std::ostream& out) {
  if (cfg.format == "csv") {
    out << csv_header() << '\n';
    for (const auto& row : o.rows) out << csv_line(row) << '\n';
  } else {
    out << o.json.dump(2) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Certificates and probes for l^p norms of factorable and weighted mean matrices", "lpnorm"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--weights", cfg.weights, "constant | power:A | geometric:R | file:PATH");
  app.add_option("--p", cfg.p, "exponent p");
  app.add_option("--L", cfg.L, "L parameter (default: cartlidge_L of the weights)");
  app.add_option("--c", cfg.c, "c parameter");
  app.add_option("--alpha", cfg.alpha, "alpha parameter");
  app.add_option("--N", cfg.N, "truncation length")->check(CLI::PositiveNumber);
  app.add_option("--trials", cfg.trials, "random trials")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--tol", cfg.tol, "relative pass tolerance for per-index conditions")->check(CLI::NonNegativeNumber);
  app.add_option("--out", cfg.out, "report path (default stdout)");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--serial", cfg.serial, "use the serial reference kernels");

  std::function<Outcome()> handler;
  auto on = [&](CLI::App* sub, auto fn) { sub->parse_complete_callback([&handler, &cfg, fn] { handler = [&cfg, fn] { return fn(cfg); }; }); };

  auto* norm = app.add_subcommand("norm", "power-iteration lower bound for the truncated norm");
  norm->add_option("--matrix", cfg.matrix)->check(CLI::IsMember({"weighted_mean", "copson", "bge"}));
  on(norm, cmd_norm);

  auto* certify = app.add_subcommand("certify", "run one certificate");
  certify->add_option("--method", cfg.method)->required();
  certify->add_flag("--search-L", cfg.search_L, "bisect for the smallest accepted L");
  on(certify, cmd_certify);

  auto* copson = app.add_subcommand("copson", "Copson and Leindler inequalities");
  copson->require_subcommand(1);
  on(copson->add_subcommand("cp-root", "negative root c_p and the admissible-c threshold"), cmd_cp_root);
  on(copson->add_subcommand("admissible", "is c below the threshold"), cmd_copson_admissible);
  on(copson->add_subcommand("ineq36", "scalar inequality on (0,1]"), cmd_ineq36);
  auto* numeric = copson->add_subcommand("numeric", "random trials for one branch");
  numeric->add_option("--branch", cfg.branch, "1.1' | 1.2' | 1.3' | 1.4'");
  on(numeric, cmd_copson_numeric);
  on(copson->add_subcommand("mu-dual", "dual recurrence on the Copson matrix"), cmd_copson_mu);
  auto* probe = copson->add_subcommand("probe", "near-extremal probe x_n = n^{-1/p-offset}");
  probe->add_option("--offset", cfg.offset);
  probe->add_option("--start", cfg.start, "first truncation of the doubling schedule");
  on(probe, cmd_copson_probe);

  auto* bge = app.add_subcommand("bge", "Bennett / Grosse-Erdmann inequality");
  bge->require_subcommand(1);
  on(bge->add_subcommand("trials", "random trials"), cmd_bge_trials);
  auto* bge_mu = bge->add_subcommand("mu", "mu recurrence");
  bge_mu->add_option("--route", cfg.route)->check(CLI::IsMember({"dual", "primal"}));
  on(bge_mu, cmd_bge_mu);
  on(bge->add_subcommand("admissible", "alpha >= 1 - 1/(2p)"), cmd_bge_admissible);

  auto* st = app.add_subcommand("strengthened", "first-power forms and mu choices");
  st->require_subcommand(1);
  auto* st_check = st->add_subcommand("check", "evaluate one form");
  st_check->add_option("--case", cfg.which, "1.40 | 1.8' | 1.07 | 1.9' | 1.8 | 1.90 | 1.10 | 1.11")->required();
  on(st_check, cmd_strengthened_check);
  auto* st_mu = st->add_subcommand("mu-choice", "verify an explicit mu choice");
  st_mu->add_option("--choice", cfg.choice, "cartlidge | copson_1.8 | leindler_1.10 | dual_1.07")->required();
  on(st_mu, cmd_mu_choice);

  auto* hlp = app.add_subcommand("hlp", "Hardy-Littlewood-Polya inequality for 0 < p < 1");
  hlp->require_subcommand(1);
  auto* hcert = hlp->add_subcommand("certify", "thm114 search, then thm115");
  hcert->add_option("--nmax", cfg.nmax)->check(CLI::PositiveNumber);
  on(hcert, cmd_hlp_certify);
  on(hlp->add_subcommand("check146", "sign of the n0 = 2 condition"), cmd_check146);
  auto* br = hlp->add_subcommand("bracket146", "bisect the sign change of check146");
  br->add_option("--lo", cfg.lo);
  br->add_option("--hi", cfg.hi);
  br->add_option("--width", cfg.width)->check(CLI::PositiveNumber);
  on(br, cmd_bracket146);
  auto* sc = hlp->add_subcommand("search-c", "first n0 with a feasible c");
  sc->add_option("--nmax", cfg.nmax)->check(CLI::PositiveNumber);
  on(sc, cmd_search_c);
  auto* fe = hlp->add_subcommand("feasible", "check (n0, c)");
  fe->add_option("--n0", cfg.n0)->check(CLI::PositiveNumber);
  on(fe, cmd_feasible);
  auto* hp = hlp->add_subcommand("probe", "sum over n^{-s} profiles against C_p");
  hp->add_option("--s", cfg.s_values)->delimiter(',');
  hp->add_option("--sizes", cfg.n_values, "truncations (default --N or 100000)")->delimiter(',');
  on(hp, cmd_hlp_probe);
  on(hlp->add_subcommand("dual-trials", "random trials of the dual form"), cmd_dual_trials);
  auto* ht = hlp->add_subcommand("trace", "mu trace");
  ht->add_option("--kind", cfg.trace_kind)->check(CLI::IsMember({"direct", "dual"}));
  on(ht, cmd_hlp_trace);

  auto* cmp = app.add_subcommand("compare", "run two certificates over a weight corpus");
  cmp->add_option("--methods", cfg.methods, "A,B")->delimiter(',')->required();
  cmp->add_option("--count", cfg.count, "random-monotone sequences in the corpus");
  cmp->add_option("--files", cfg.files, "extra weight files")->delimiter(',');
  cmp->add_option("--fractions", cfg.fractions, "L = f * cartlidge_L when --L is absent")->delimiter(',');
  on(cmp, cmd_compare);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (!handler) {
    err << "error: no command given\n";
    return kUsage;
  }

  try {
    const auto outcome = handler();
    if (cfg.out.empty()) {
      emit(outcome, cfg, out);
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) {
        err << "error: cannot open " << cfg.out << '\n';
        return kUsage;
      }
      emit(outcome, cfg, f);
    }
    return outcome.pass ? kPass : kFail;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace lpnorm::cli
