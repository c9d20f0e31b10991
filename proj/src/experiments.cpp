#include "erlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "erlab/format.hpp"
#include "erlab/oracle.hpp"
#include "json.hpp"

namespace erlab {

namespace {

constexpr double kWilsonZ = 1.959963984540054;

// r = 1 is the one case where the tree bound equals P(#C1 = r); the two
// routes may then disagree in the last few bits.
constexpr double kEqualityRounding = 1e-13;

bool bound_dominates(double log_bound, double exact, std::uint64_t r) {
  const double bound = std::exp(log_bound);
  if (r == 1) return bound >= exact * (1.0 - kEqualityRounding);
  return bound >= exact;
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kSupercriticalT1: return "supercritical-T1";
    case Regime::kSubcriticalT1: return "subcritical-T1";
    case Regime::kTheorem2: return "theorem2";
  }
  return "?";
}

Regime parse_regime(std::string_view text) {
  if (text == "supercritical-T1") return Regime::kSupercriticalT1;
  if (text == "subcritical-T1") return Regime::kSubcriticalT1;
  if (text == "theorem2") return Regime::kTheorem2;
  throw std::invalid_argument("unknown regime '" + std::string(text) +
                              "' (expected supercritical-T1, subcritical-T1 or theorem2)");
}

void ExperimentConfig::validate() const {
  if (n < 2) throw std::invalid_argument("config: n must be at least 2");
  if (!(c >= 0.0)) throw std::invalid_argument("config: C must be non-negative");
  if (c > static_cast<double>(n)) throw std::invalid_argument("config: C / n exceeds 1");
  if (trials < 1) throw std::invalid_argument("config: trials must be at least 1");
  if (!(theta > 0.5 && theta < 1.0)) throw std::invalid_argument("config: theta must lie in (1/2, 1)");
  if (!(target_exponent > 0.0)) throw std::invalid_argument("config: target_exponent must be positive");
  if (m && *m < 1) throw std::invalid_argument("config: M must be at least 1");
}

ExperimentConfig ExperimentConfig::from_json_text(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");

  auto lookup = [&](std::initializer_list<const char*> keys) -> const json* {
    for (const char* key : keys) {
      if (auto it = doc.find(key); it != doc.end()) return &*it;
    }
    return nullptr;
  };
  auto require = [&](std::initializer_list<const char*> keys) -> const json& {
    const json* value = lookup(keys);
    if (value == nullptr) throw std::invalid_argument(std::string("config: missing key '") + *keys.begin() + "'");
    return *value;
  };

  ExperimentConfig config;
  try {
    config.n = require({"n"}).get<Vertex>();
    config.c = require({"c", "C"}).get<double>();
    config.trials = require({"trials"}).get<std::uint64_t>();
    if (const json* seed = lookup({"master_seed"})) config.master_seed = seed->get<std::uint64_t>();
    if (const json* theta = lookup({"theta"})) config.theta = theta->get<double>();
    if (const json* policy = lookup({"m_policy", "M_policy"})) {
      if (policy->is_string()) {
        if (policy->get<std::string>() != "auto") {
          throw std::invalid_argument("config: m_policy must be \"auto\" or a positive integer");
        }
      } else {
        config.m = policy->get<std::uint32_t>();
      }
    }
    config.regime = parse_regime(require({"regime"}).get<std::string>());
    if (const json* target = lookup({"target_exponent"})) config.target_exponent = target->get<double>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  config.validate();
  return config;
}

std::string ExperimentConfig::to_json_text() const {
  nlohmann::ordered_json doc;
  doc["n"] = n;
  doc["c"] = c;
  doc["trials"] = trials;
  doc["master_seed"] = master_seed;
  doc["theta"] = theta;
  if (m) {
    doc["m_policy"] = *m;
  } else {
    doc["m_policy"] = "auto";
  }
  doc["regime"] = std::string(to_string(regime));
  doc["target_exponent"] = target_exponent;
  return doc.dump(2);
}

ExperimentPlan plan_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto n = config.n;

  // C = 0 has no finite decay rate; every M works, so "auto" picks 1.
  PhaseParams params;
  if (config.c > 0.0) {
    params = make_phase_params(config.c, config.theta, 1, 0.0);
  } else {
    params.c = 0.0;
    params.theta = config.theta;
    params.delta = std::numeric_limits<double>::infinity();
    params.delta1 = std::numeric_limits<double>::infinity();
  }

  ExperimentPlan plan;
  switch (config.regime) {
    case Regime::kSupercriticalT1: {
      if (params.gamma && *params.gamma < 1.0) {
        params.alpha = *params.gamma < 0.5 ? 1.0 : (1.0 / *params.gamma - 1.0) / 2.0;
      }
      if (!config.m && !(params.delta > 0.0)) {
        throw std::invalid_argument("config: m_policy auto needs delta > 0; give M explicitly");
      }
      params.m = config.m ? *config.m : min_m(params.delta, n, config.target_exponent);
      plan.giant_threshold = static_cast<double>(n) / 2.0;
      if (params.alpha > 0.0) plan.markov = markov_bound(*params.gamma, params.alpha, n);
      break;
    }
    case Regime::kSubcriticalT1: {
      if (!config.m && !params.delta1) {
        throw std::invalid_argument("config: m_policy auto needs C < 1/e; give M explicitly");
      }
      params.m = config.m ? *config.m : min_m(*params.delta1, n, config.target_exponent);
      plan.giant_threshold = static_cast<double>(n) / 2.0;
      break;
    }
    case Regime::kTheorem2: {
      const Theorem2Constants k = theorem2_constants(config.c, n);
      params.alpha = k.alpha;
      params.m = config.m ? *config.m : min_m(params.delta, n, config.target_exponent);
      plan.giant_threshold = k.giant_lower;
      plan.markov = markov_bound(k.gamma_bound, k.alpha, n);
      plan.theorem2 = k;
      break;
    }
  }
  plan.params = params;
  plan.small_cutoff = params.small_cutoff(n);
  return plan;
}

TrialOutcome run_trial(const ExperimentConfig& config, const ExperimentPlan& plan,
                       std::uint64_t trial_index) {
  const SampleSpec spec = SampleSpec::from_mean_degree(config.n, config.c, config.master_seed);
  Rng rng = Rng::for_substream(config.master_seed, trial_index);
  ComponentTracker tracker(config.n);
  for_each_gnp_edge(spec.n, spec.p, rng, [&](Edge e) { tracker.add_edge(e); });
  const ComponentProfile profile = component_profile(tracker);

  TrialOutcome out;
  out.trial_index = trial_index;
  out.flags = evaluate_events(
      profile, EventThresholds{config.theta, plan.small_cutoff, plan.giant_threshold});
  out.giant_size = out.flags.giant_size;
  out.second_size = out.flags.second_size;
  out.small_sum = out.flags.small_sum;
  out.markov_exceeded = plan.markov && static_cast<double>(out.small_sum) > plan.markov->threshold;

  const double theta_n = config.theta * static_cast<double>(config.n);
  if (out.flags.a_theta && !out.flags.b_theta && theta_n >= config.n / 2.0 + 10.0) {
    const EventFlags at_theta = evaluate_events(
        profile, EventThresholds{config.theta, plan.small_cutoff,
                                 static_cast<double>(ceil_fraction_of(config.theta, config.n))});
    out.step2_contradiction = !at_theta.e_m;
  }
  return out;
}

TrialOutcome run_trial(const ExperimentConfig& config, std::uint64_t trial_index) {
  return run_trial(config, plan_experiment(config), trial_index);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("wilson: trials must be positive");
  if (successes > trials) throw std::invalid_argument("wilson: successes exceed trials");
  const auto t = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / t;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / t;
  const double centre = (phat + z2 / (2.0 * t)) / denom;
  const double half = kWilsonZ * std::sqrt(phat * (1.0 - phat) / t + z2 / (4.0 * t * t)) / denom;
  Interval ci{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (successes == 0) ci.lo = 0.0;
  if (successes == trials) ci.hi = 1.0;
  return ci;
}

std::string_view to_string(BoundDirection direction) {
  switch (direction) {
    case BoundDirection::kLower: return "lower";
    case BoundDirection::kUpper: return "upper";
    case BoundDirection::kNone: return "none";
  }
  return "?";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kInconclusive: return "inconclusive";
    case Verdict::kNotApplicable: return "n/a";
  }
  return "?";
}

Verdict compare_with_bound(Interval ci, BoundDirection direction, double bound) {
  switch (direction) {
    case BoundDirection::kLower:
      if (ci.lo >= bound) return Verdict::kPass;
      return ci.hi < bound ? Verdict::kFail : Verdict::kInconclusive;
    case BoundDirection::kUpper:
      if (ci.hi <= bound) return Verdict::kPass;
      return ci.lo > bound ? Verdict::kFail : Verdict::kInconclusive;
    case BoundDirection::kNone:
      break;
  }
  return Verdict::kNotApplicable;
}

const EventRow& ExperimentReport::row(std::string_view event) const {
  for (const EventRow& r : rows) {
    if (r.event == event) return r;
  }
  throw std::out_of_range("report has no event '" + std::string(event) + "'");
}

bool ExperimentReport::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const EventRow& r) { return r.verdict == Verdict::kFail; });
}

namespace {

struct Claim {
  std::optional<double> bound;
  BoundDirection direction = BoundDirection::kNone;
};

Claim lower(double bound) { return Claim{bound, BoundDirection::kLower}; }
Claim upper(double bound) { return Claim{bound, BoundDirection::kUpper}; }

EventRow make_row(std::string event, std::uint64_t count, std::uint64_t trials, Claim claim) {
  EventRow row;
  row.event = std::move(event);
  row.count = count;
  row.empirical_freq = static_cast<double>(count) / static_cast<double>(trials);
  row.wilson = wilson_interval(count, trials);
  row.paper_bound = claim.bound;
  row.direction = claim.bound ? claim.direction : BoundDirection::kNone;
  row.verdict = claim.bound ? compare_with_bound(row.wilson, row.direction, *claim.bound)
                            : Verdict::kNotApplicable;
  return row;
}

}  // namespace

ExperimentReport aggregate(const ExperimentConfig& config, const ExperimentPlan& plan,
                           std::vector<TrialOutcome> outcomes) {
  std::sort(outcomes.begin(), outcomes.end(),
            [](const TrialOutcome& a, const TrialOutcome& b) { return a.trial_index < b.trial_index; });

  ExperimentReport report;
  report.config = config;
  report.plan = plan;

  std::uint64_t e = 0, f = 0, a = 0, b = 0, h = 0, markov = 0;
  std::uint64_t small_total = 0, small_max = 0;
  for (const TrialOutcome& o : outcomes) {
    e += o.flags.e_m;
    f += o.flags.f_m;
    a += o.flags.a_theta;
    b += o.flags.b_theta;
    h += o.flags.h_theta;
    markov += o.markov_exceeded;
    small_total += o.small_sum;
    small_max = std::max(small_max, o.small_sum);
    report.step2_contradictions += o.step2_contradiction;
  }
  const auto trials = static_cast<std::uint64_t>(outcomes.size());
  const auto nd = static_cast<double>(config.n);
  if (trials > 0) {
    report.mean_small_fraction = static_cast<double>(small_total) / static_cast<double>(trials) / nd;
    report.max_small_fraction = static_cast<double>(small_max) / nd;
  }

  const PhaseParams& params = plan.params;
  Claim claim_e, claim_f, claim_a, claim_b, claim_h, claim_markov;
  switch (config.regime) {
    case Regime::kSupercriticalT1:
      if (params.alpha > 0.0) {
        claim_e = lower(params.epsilon1());
        claim_a = lower(params.alpha / (1.0 + params.alpha));
      }
      claim_b = upper(std::pow(nd, -9.0));
      break;
    case Regime::kSubcriticalT1:
      claim_f = lower(1.0 - 1.0 / (nd * nd));
      claim_h = upper(std::pow(nd, -8.0));
      break;
    case Regime::kTheorem2:
      claim_e = lower(plan.theorem2->prob_lower);
      claim_a = lower(-std::expm1(-config.c / 8.0));
      claim_b = upper(std::pow(nd, -9.0));
      break;
  }
  if (plan.markov) claim_markov = upper(plan.markov->prob_bound);

  if (trials == 0) return report;
  report.rows.push_back(make_row("E_M", e, trials, claim_e));
  if (config.regime == Regime::kTheorem2) {
    report.rows.push_back(make_row("E_M_proof", e, trials, lower(plan.theorem2->proof_prob_lower)));
  }
  report.rows.push_back(make_row("F_M", f, trials, claim_f));
  report.rows.push_back(make_row("A_theta", a, trials, claim_a));
  report.rows.push_back(make_row("B_theta", b, trials, claim_b));
  report.rows.push_back(make_row("H_theta", h, trials, claim_h));
  report.rows.push_back(make_row("markov_small_sum", markov, trials, claim_markov));
  report.outcomes = std::move(outcomes);
  return report;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("ER_LAB_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

ExperimentReport run_experiment(const ExperimentConfig& config, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentPlan plan = plan_experiment(config);
  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, config.trials));

  std::vector<TrialOutcome> outcomes(config.trials);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::uint64_t t = next++; t < config.trials; t = next++) {
      try {
        outcomes[t] = run_trial(config, plan, t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.trials;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentReport report = aggregate(config, plan, std::move(outcomes));
  report.threads_used = threads;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
  out << "event,empirical_freq,wilson_lo,wilson_hi,paper_bound,bound_direction,pass\n";
  for (const EventRow& row : report.rows) {
    out << row.event << ',' << format_double(row.empirical_freq) << ','
        << format_double(row.wilson.lo) << ',' << format_double(row.wilson.hi) << ','
        << format_optional(row.paper_bound) << ',' << to_string(row.direction) << ','
        << to_string(row.verdict) << '\n';
  }
}

void write_trials_csv(std::ostream& out, const ExperimentReport& report) {
  out << "trial_index,giant_size,second_size,small_sum\n";
  for (const TrialOutcome& o : report.outcomes) {
    out << o.trial_index << ',' << o.giant_size << ',' << o.second_size << ',' << o.small_sum << '\n';
  }
}

BoundReport verify_bound_dominance(Vertex n_max, std::span<const double> p_grid) {
  if (n_max < 2 || n_max > 12) throw std::invalid_argument("verify: n_max must lie in [2, 12]");
  BoundReport report;
  for (Vertex n = 2; n <= n_max; ++n) {
    for (const double p : p_grid) {
      const ExactDistribution exact = exact_component_distribution(n, p);
      for (std::uint32_t r = 1; r <= n; ++r) {
        BoundRow row;
        row.n = n;
        row.p = p;
        row.r = r;
        row.log_tree_bound = tree_bound_log(n, p, r);
        row.exact_prob = exact.prob(r);
        row.tree_dominates_exact = bound_dominates(row.log_tree_bound, *row.exact_prob, r);
        report.rows.push_back(row);
      }
    }
  }
  return report;
}

BoundReport bounds_table(Vertex n, double c, std::uint64_t r_max) {
  if (n < 1) throw std::invalid_argument("bounds: n must be positive");
  if (!(c > 0.0) || c > static_cast<double>(n)) throw std::invalid_argument("bounds: C must lie in (0, n]");
  if (r_max < 1) throw std::invalid_argument("bounds: r_max must be at least 1");
  const double p = c / static_cast<double>(n);
  std::optional<ExactDistribution> exact;
  if (n >= 2 && n <= kMaxOracleN) exact = exact_component_distribution(n, p);

  BoundReport report;
  for (std::uint64_t r = 1; r <= std::min<std::uint64_t>(r_max, n); ++r) {
    BoundRow row;
    row.n = n;
    row.p = p;
    row.r = r;
    row.log_tree_bound = tree_bound_log(n, p, r);
    if (r >= 2) {
      row.log_simplified_bound = simplified_bound_log(n, c, r);
      row.simplified_dominates_tree = *row.log_simplified_bound >= row.log_tree_bound;
    }
    if (exact) {
      row.exact_prob = exact->prob(static_cast<std::uint32_t>(r));
      row.tree_dominates_exact = bound_dominates(row.log_tree_bound, *row.exact_prob, r);
    }
    report.rows.push_back(row);
  }
  return report;
}

void write_bounds_csv(std::ostream& out, const BoundReport& report) {
  out << "r,log_tree_bound,log_simplified_bound,exact_log_prob,dominance_ok\n";
  for (const BoundRow& row : report.rows) {
    std::optional<double> exact_log;
    if (row.exact_prob) exact_log = std::log(*row.exact_prob);
    out << row.r << ',' << format_double(row.log_tree_bound) << ','
        << format_optional(row.log_simplified_bound) << ',' << format_optional(exact_log) << ','
        << (row.ok() ? "true" : "false") << '\n';
  }
}

}  // namespace erlab
