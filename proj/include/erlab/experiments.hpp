#ifndef ERLAB_EXPERIMENTS_HPP
#define ERLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "erlab/bounds.hpp"
#include "erlab/components.hpp"
#include "erlab/sampler.hpp"

namespace erlab {

enum class Regime { kSupercriticalT1, kSubcriticalT1, kTheorem2 };

std::string_view to_string(Regime regime);
// Accepts "supercritical-T1", "subcritical-T1", "theorem2".
Regime parse_regime(std::string_view text);

struct ExperimentConfig {
  Vertex n = 0;
  double c = 0.0;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  double theta = kDefaultTheta;
  std::optional<std::uint32_t> m;  // nullopt is the "auto" policy
  Regime regime = Regime::kSupercriticalT1;
  double target_exponent = kDefaultTargetExponent;

  // Throws std::invalid_argument on n < 2, C < 0, C > n, trials == 0,
  // theta outside (1/2, 1) or a non-positive target exponent.
  void validate() const;

  // Keys: n, c, trials, master_seed, theta, m_policy, regime,
  // target_exponent. "C" and "M_policy" are accepted as aliases.
  static ExperimentConfig from_json_text(std::string_view text);
  std::string to_json_text() const;
};

// Everything a trial needs beyond the config: the resolved constants, the
// giant threshold of the regime and the Markov threshold, if one applies.
struct ExperimentPlan {
  PhaseParams params;
  double small_cutoff = 0.0;     // M log n
  double giant_threshold = 0.0;  // n/2, or n - n e^(-C/8) for theorem2
  std::optional<MarkovBound> markov;
  std::optional<Theorem2Constants> theorem2;
};

// Resolves M ("auto" uses min_m with delta, or delta1 when subcritical) and
// alpha. Supercritical: alpha = 1 if gamma < 1/2, else (1/gamma - 1)/2, so
// gamma (1 + alpha) < 1; alpha = 0 when gamma >= 1. Theorem 2:
// alpha = e^(C/8) - 1. Throws when "auto" has no positive rate to work with
// or when theorem2 is requested for C failing delta >= C/4.
ExperimentPlan plan_experiment(const ExperimentConfig& config);

struct TrialOutcome {
  std::uint64_t trial_index = 0;
  std::uint32_t giant_size = 0;
  std::uint32_t second_size = 0;
  std::uint64_t small_sum = 0;
  EventFlags flags;
  bool markov_exceeded = false;  // small_sum > Markov threshold
  // A and not B hold with theta n >= n/2 + 10, yet E(M) with the theta n
  // giant threshold fails. Never true for a correct profile.
  bool step2_contradiction = false;
};

TrialOutcome run_trial(const ExperimentConfig& config, const ExperimentPlan& plan,
                       std::uint64_t trial_index);
TrialOutcome run_trial(const ExperimentConfig& config, std::uint64_t trial_index);

struct Interval {
  double lo;
  double hi;
};

// 95% Wilson score interval for `successes` out of `trials`.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

enum class BoundDirection { kLower, kUpper, kNone };
enum class Verdict { kPass, kFail, kInconclusive, kNotApplicable };

std::string_view to_string(BoundDirection direction);
std::string_view to_string(Verdict verdict);

// Lower bound: pass iff wilson lo >= bound, fail iff wilson hi < bound.
// Upper bound: pass iff wilson hi <= bound, fail iff wilson lo > bound.
// Anything else is inconclusive at this trial count.
Verdict compare_with_bound(Interval interval, BoundDirection direction, double bound);

struct EventRow {
  std::string event;
  std::uint64_t count = 0;
  double empirical_freq = 0.0;
  Interval wilson{0.0, 0.0};
  std::optional<double> paper_bound;
  BoundDirection direction = BoundDirection::kNone;
  Verdict verdict = Verdict::kNotApplicable;
};

struct ExperimentReport {
  ExperimentConfig config;
  ExperimentPlan plan;
  std::vector<TrialOutcome> outcomes;  // sorted by trial_index
  std::vector<EventRow> rows;
  double mean_small_fraction = 0.0;  // mean of small_sum / n
  double max_small_fraction = 0.0;
  std::uint64_t step2_contradictions = 0;
  double wall_seconds = 0.0;
  unsigned threads_used = 1;

  const EventRow& row(std::string_view event) const;
  bool any_failed() const;
};

// Builds the report from completed outcomes. The result does not depend on
// the order of `outcomes`.
ExperimentReport aggregate(const ExperimentConfig& config, const ExperimentPlan& plan,
                           std::vector<TrialOutcome> outcomes);

// Worker count from ER_LAB_THREADS, else the hardware concurrency.
unsigned default_thread_count();

// Runs every trial on `threads` workers (0 picks default_thread_count()).
ExperimentReport run_experiment(const ExperimentConfig& config, unsigned threads = 0);

// Columns: event, empirical_freq, wilson_lo, wilson_hi, paper_bound,
// bound_direction, pass.
void write_report_csv(std::ostream& out, const ExperimentReport& report);
// Columns: trial_index, giant_size, second_size, small_sum.
void write_trials_csv(std::ostream& out, const ExperimentReport& report);

// Checks exp(tree_bound_log) >= P(#C1 = r) for 2 <= n <= n_max (n_max <= 12),
// every p in the grid and every r. Violations are report rows, not errors.
BoundReport verify_bound_dominance(Vertex n_max, std::span<const double> p_grid);

// Table for one (n, C): r = 1..min(r_max, n) with p = C/n. Exact values are
// attached when n <= kMaxOracleN.
BoundReport bounds_table(Vertex n, double c, std::uint64_t r_max);

// Columns: r, log_tree_bound, log_simplified_bound, exact_log_prob, dominance_ok.
void write_bounds_csv(std::ostream& out, const BoundReport& report);

}  // namespace erlab

#endif  // ERLAB_EXPERIMENTS_HPP
