#include "lpnorm/strengthened.hpp"

#include <cmath>
#include <functional>

#include "lpnorm/parallel.hpp"

namespace lpnorm {

namespace {

constexpr double kSpikeFloor = 1e-8;

double log_of(double v) { return v > 0.0 ? std::log(v) : -kInf; }

bool weighted_case(StrengthenedKind k) {
  return k == StrengthenedKind::s18 || k == StrengthenedKind::s190 || k == StrengthenedKind::s110 ||
         k == StrengthenedKind::s111;
}

bool upper_c_case(StrengthenedKind k) { return k == StrengthenedKind::s18 || k == StrengthenedKind::s111; }

double rel_err(double got, double want, double scale) {
  return std::abs(got - want) / std::max({1.0, std::abs(scale), std::abs(want)});
}

}  // namespace

std::string_view to_string(StrengthenedKind k) {
  switch (k) {
    case StrengthenedKind::s140: return "1.40";
    case StrengthenedKind::s8prime: return "1.8'";
    case StrengthenedKind::s107: return "1.07";
    case StrengthenedKind::s9prime: return "1.9'";
    case StrengthenedKind::s18: return "1.8";
    case StrengthenedKind::s190: return "1.90";
    case StrengthenedKind::s110: return "1.10";
    case StrengthenedKind::s111: return "1.11";
  }
  return "?";
}

StrengthenedKind parse_strengthened_kind(std::string_view text) {
  for (auto k : all_strengthened_kinds()) {
    if (text == to_string(k)) return k;
  }
  if (text == "1.8p") return StrengthenedKind::s8prime;
  if (text == "1.9p") return StrengthenedKind::s9prime;
  throw DomainError("unknown strengthened case '" + std::string(text) +
                    "' (expected 1.40, 1.8', 1.07, 1.9', 1.8, 1.90, 1.10 or 1.11)");
}

std::vector<StrengthenedKind> all_strengthened_kinds() {
  return {StrengthenedKind::s140, StrengthenedKind::s8prime, StrengthenedKind::s107, StrengthenedKind::s9prime,
          StrengthenedKind::s18,  StrengthenedKind::s190,    StrengthenedKind::s110, StrengthenedKind::s111};
}

bool uses_L(StrengthenedKind k) { return !weighted_case(k); }

bool uses_tail_L(StrengthenedKind k) { return k == StrengthenedKind::s8prime || k == StrengthenedKind::s9prime; }

StrengthenedCase resolve_case(const StrengthenedCase& sc, const WeightSequence& w) {
  require(sc.p > 1.0, "strengthened forms require p > 1");
  StrengthenedCase r = sc;
  const auto name = std::string(to_string(sc.which));
  if (uses_L(sc.which)) {
    if (std::isnan(r.L)) r.L = uses_tail_L(sc.which) ? tail_L_prime(w) : cartlidge_L(w);
    require(r.L > 0.0, name + " requires L > 0");
    const bool dual = sc.which == StrengthenedKind::s107 || sc.which == StrengthenedKind::s9prime;
    if (dual) {
      require(r.L < sc.p / (sc.p - 1.0), name + " requires L < p/(p-1)");
    } else {
      require(r.L < sc.p, name + " requires L < p");
    }
    r.c = kNaN;
  } else {
    require(!std::isnan(r.c), name + " requires c");
    if (upper_c_case(sc.which)) {
      require(r.c > 1.0 && r.c <= sc.p, name + " requires 1 < c <= p");
    } else {
      require(r.c >= 0.0 && r.c < 1.0, name + " requires 0 <= c < 1");
    }
    r.L = kNaN;
  }
  return r;
}

double strengthened_constant(const StrengthenedCase& sc) {
  const double p = sc.p;
  switch (sc.which) {
    case StrengthenedKind::s140:
    case StrengthenedKind::s8prime: return p / (p - sc.L);
    case StrengthenedKind::s107:
    case StrengthenedKind::s9prime: return p / (p - (p - 1.0) * sc.L);
    case StrengthenedKind::s18:
    case StrengthenedKind::s111: return p / (sc.c - 1.0);
    case StrengthenedKind::s190:
    case StrengthenedKind::s110: return p / (1.0 - sc.c);
  }
  return kNaN;
}

StrengthenedRatios strengthened_ratios(const StrengthenedCase& sc, const WeightSequence& w,
                                       const std::vector<double>& x) {
  const std::size_t n = w.size();
  require(x.size() == n, "strengthened_ratios: x length differs from N");
  for (double e : x) require(e > 0.0 && std::isfinite(e), "strengthened_ratios: x must be positive and finite");
  const double p = sc.p;
  const double log_k = std::log(strengthened_constant(sc));

  // Running sums: prefix when forward, suffix otherwise.
  std::vector<double> b(n);
  auto accumulate = [&](bool forward, auto&& term) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = forward ? i + 1 : n - i;
      acc.add(term(k));
      b[k - 1] = acc.value();
    }
  };
  auto lx = [&](std::size_t k) { return w.lambda(k) * x[k - 1]; };
  std::vector<double> log_w(n, 0.0);
  switch (sc.which) {
    case StrengthenedKind::s140:
    case StrengthenedKind::s18:
      accumulate(true, lx);
      for (std::size_t k = 1; k <= n; ++k) b[k - 1] /= w.partial(k);
      break;
    case StrengthenedKind::s8prime:
    case StrengthenedKind::s111:
      accumulate(false, lx);
      for (std::size_t k = 1; k <= n; ++k) b[k - 1] /= w.tail(k);
      break;
    case StrengthenedKind::s190:
      accumulate(false, lx);
      for (std::size_t k = 1; k <= n; ++k) b[k - 1] /= w.partial(k);
      break;
    case StrengthenedKind::s110:
      accumulate(true, lx);
      for (std::size_t k = 1; k <= n; ++k) b[k - 1] /= w.tail(k);
      break;
    case StrengthenedKind::s107:
      accumulate(false, [&](std::size_t k) { return x[k - 1] / w.partial(k); });
      for (std::size_t k = 1; k <= n; ++k) b[k - 1] *= w.lambda(k);
      break;
    case StrengthenedKind::s9prime:
      accumulate(true, [&](std::size_t k) { return x[k - 1] / w.tail(k); });
      for (std::size_t k = 1; k <= n; ++k) b[k - 1] *= w.lambda(k);
      break;
  }
  if (weighted_case(sc.which)) {
    const bool starred = sc.which == StrengthenedKind::s110 || sc.which == StrengthenedKind::s111;
    for (std::size_t k = 1; k <= n; ++k) {
      log_w[k - 1] = std::log(w.lambda(k)) + (p - sc.c) * std::log(starred ? w.tail(k) : w.partial(k));
    }
  }

  LogSumExp lhs;
  LogSumExp first;
  LogSumExp holder;
  for (std::size_t k = 0; k < n; ++k) {
    const double lb = log_of(b[k]);
    const double lxk = std::log(x[k]);
    lhs.add(log_w[k] + p * lb);
    first.add(log_w[k] + lxk + (p - 1.0) * lb);
    holder.add(log_w[k] + p * lxk);
  }
  return {std::exp(lhs.value() - first.value() - log_k), std::exp(lhs.value() - holder.value() - p * log_k)};
}

StrengthenedReport check_strengthened(const StrengthenedCase& sc, const WeightSequence& w,
                                      const StrengthenedOptions& opt) {
  const auto rc = resolve_case(sc, w);
  const std::size_t n = w.size();
  StrengthenedReport r;
  r.which = to_string(rc.which);
  r.p = rc.p;
  r.c = rc.c;
  r.L = rc.L;
  r.constant = strengthened_constant(rc);
  r.n = n;
  r.trials = opt.trials;

  auto consider = [&](const StrengthenedRatios& s, const std::string& label) {
    if (s.first_power > r.max_ratio || std::isnan(s.first_power)) {
      r.max_ratio = std::isnan(s.first_power) ? kInf : s.first_power;
      r.worst = label;
    }
    r.max_holder_ratio = std::max(r.max_holder_ratio, std::isnan(s.holder) ? kInf : s.holder);
  };

  consider(strengthened_ratios(rc, w, std::vector<double>(n, 1.0)), "flat");
  for (std::size_t at : {std::size_t{1}, std::max<std::size_t>(1, n / 2), n}) {
    std::vector<double> x(n, kSpikeFloor);
    x[at - 1] = 1.0;
    consider(strengthened_ratios(rc, w, x), "spike:" + std::to_string(at));
  }
  for (double s : {1.0 / rc.p, 1.0 / rc.p + 0.01, 2.0}) {
    std::vector<double> x(n);
    for (std::size_t k = 1; k <= n; ++k) x[k - 1] = std::pow(static_cast<double>(k), -s);
    consider(strengthened_ratios(rc, w, x), "power:" + std::to_string(s));
  }

  if (opt.trials > 0) {
    // Holder ratios are collected per trial so the parallel reduction only
    // carries the first-power maximum.
    std::vector<double> holder(opt.trials, 0.0);
    auto fn = [&](std::size_t t, TrialRng& rng) {
      const auto s = strengthened_ratios(rc, w, rng.log_uniform_vector(n, opt.lo, opt.hi));
      holder[t] = s.holder;
      return s.first_power;
    };
    const TrialMax m = opt.exec == Execution::parallel ? max_over_trials(opt.trials, opt.seed, fn)
                                                       : max_over_trials_serial(opt.trials, opt.seed, fn);
    if (m.value > r.max_ratio) {
      r.max_ratio = m.value;
      r.worst = "random:" + std::to_string(m.trial);
    }
    for (double h : holder) r.max_holder_ratio = std::max(r.max_holder_ratio, std::isnan(h) ? kInf : h);
  }
  r.min_margin = 1.0 - r.max_ratio;
  r.pass = r.max_ratio <= 1.0 + kRatioTol;
  r.holder_pass = r.max_holder_ratio <= 1.0 + kRatioTol;
  return r;
}

double tail_L_prime(const WeightSequence& w) {
  require(w.size() >= 2, "tail_L_prime requires N >= 2");
  double best = -kInf;
  for (std::size_t n = 1; n + 1 <= w.size(); ++n) best = std::max(best, w.tail_ratio(n) - w.tail_ratio(n + 1));
  return best;
}

std::string_view to_string(MuChoice m) {
  switch (m) {
    case MuChoice::cartlidge: return "cartlidge";
    case MuChoice::copson_18: return "copson_1.8";
    case MuChoice::leindler_110: return "leindler_1.10";
    case MuChoice::dual_107: return "dual_1.07";
  }
  return "?";
}

MuChoice parse_mu_choice(std::string_view text) {
  for (auto m : {MuChoice::cartlidge, MuChoice::copson_18, MuChoice::leindler_110, MuChoice::dual_107}) {
    if (text == to_string(m)) return m;
  }
  throw DomainError("unknown mu choice '" + std::string(text) +
                    "' (expected cartlidge, copson_1.8, leindler_1.10 or dual_1.07)");
}

MuChoiceReport verify_mu_choice(MuChoice which, const WeightSequence& w, double p, double param) {
  require(p > 1.0, "verify_mu_choice requires p > 1");
  require(w.size() >= 2, "verify_mu_choice requires N >= 2");
  MuChoiceReport r;
  r.which = to_string(which);
  r.p = p;
  r.param = param;
  r.n = w.size();
  const double g = std::pow(1.0 - 1.0 / p, p - 1.0);  // (1-1/p)^{p-1}

  std::function<double(std::size_t)> mu;
  switch (which) {
    case MuChoice::cartlidge:
      require(param > 0.0 && param < p, "cartlidge choice requires 0 < L < p");
      r.required = p - param;
      mu = [&](std::size_t k) { return 1.0 / p + (1.0 - 1.0 / p) * w.lambda(k) / w.partial(k); };
      break;
    case MuChoice::copson_18:
      require(param > 1.0 && param <= p, "copson_1.8 choice requires 1 < c <= p");
      r.required = param - 1.0;
      mu = [&](std::size_t k) {
        return 1.0 - (1.0 - 1.0 / p) * std::pow(1.0 - w.lambda(k) / w.partial(k), (param - 1.0) / (p - 1.0));
      };
      break;
    case MuChoice::leindler_110:
      require(param >= 0.0 && param < 1.0, "leindler_1.10 choice requires 0 <= c < 1");
      r.required = 1.0 - param;
      mu = [&](std::size_t) { return 1.0 / p; };
      break;
    case MuChoice::dual_107:
      require(param > 0.0 && param < p / (p - 1.0), "dual_1.07 choice requires 0 < L < p/(p-1)");
      r.required = p - (p - 1.0) * param;
      mu = [&](std::size_t k) { return 1.0 - (1.0 - 1.0 / p) * w.lambda(k) / w.lambda(k + 1); };
      break;
  }

  const std::size_t last = w.size() - 1;
  for (std::size_t n = 1; n <= last; ++n) {
    const double mu_n = mu(n);
    if (!(mu_n < 1.0) && !(n == 1 && mu_n <= 1.0) && r.feasible) {
      r.feasible = false;
      r.first_infeasible = n;
    }
    double lhs = 0.0;
    double err = 0.0;
    double scale = 0.0;  // size of the terms cancelling in lhs
    switch (which) {
      case MuChoice::cartlidge: {
        const double head = p * w.partial_ratio(n) * mu_n;
        const double tail = std::pow(1.0 - mu(n + 1), 1.0 - p) * g * std::pow(w.partial(n) / w.partial(n + 1), p) *
                            w.partial_ratio(n + 1);
        lhs = head - tail;
        scale = std::max(head, tail);
        err = rel_err(lhs, p - (w.partial_ratio(n + 1) - w.partial_ratio(n)), scale);
        break;
      }
      case MuChoice::copson_18: {
        const double c = param;
        const double head = p * w.partial_ratio(n) * mu_n;
        const double tail = std::pow(1.0 - mu(n + 1), 1.0 - p) * g * std::pow(w.partial(n) / w.partial(n + 1), c) *
                            w.partial(n + 1) / w.lambda(n);
        lhs = head - tail;
        scale = std::max(head, tail);
        err = rel_err(tail, w.partial_ratio(n), 0.0);
        break;
      }
      case MuChoice::leindler_110: {
        const double c = param;
        const double head = p * w.tail_ratio(n) * mu_n;
        const double tail = std::pow(1.0 - mu(n + 1), 1.0 - p) * g * std::pow(w.tail(n) / w.tail(n + 1), c) *
                            w.tail(n + 1) / w.lambda(n);
        lhs = head - tail;
        scale = std::max(head, tail);
        const double closed = w.tail_ratio(n) * (1.0 - std::pow(1.0 - w.lambda(n) / w.tail(n), 1.0 - c));
        err = rel_err(lhs, closed, scale);
        break;
      }
      case MuChoice::dual_107: {
        const double head = p * w.partial_ratio(n) * mu_n;
        if (n == 1) {
          lhs = head;
        } else {
          const double tail = std::pow(1.0 - mu(n - 1), 1.0 - p) * g *
                              std::pow(w.lambda(n - 1) / w.lambda(n), p) * w.partial_ratio(n - 1);
          lhs = head - tail;
          scale = std::max(head, tail);
          err = rel_err(tail, w.partial(n - 1) / w.lambda(n), 0.0);
        }
        break;
      }
    }
    r.identity_error = std::max(r.identity_error, err);
    r.min_lhs = std::min(r.min_lhs, lhs);
    const double margin = lhs - r.required;
    const double rounding = kCancellationRel * scale;
    if (margin + rounding < r.min_margin + r.rounding) {
      r.min_margin = margin;
      r.rounding = rounding;
      r.argmin = n;
    }
  }
  return r;
}

}  // namespace lpnorm
