#include "erlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

namespace erlab {
namespace {

ExperimentConfig make_config(Vertex n, double c, std::uint64_t trials, Regime regime,
                             std::uint64_t seed = 1) {
  ExperimentConfig config;
  config.n = n;
  config.c = c;
  config.trials = trials;
  config.regime = regime;
  config.master_seed = seed;
  return config;
}

std::string report_csv(const ExperimentReport& r) {
  std::ostringstream out;
  write_report_csv(out, r);
  return out.str();
}

std::string trials_csv(const ExperimentReport& r) {
  std::ostringstream out;
  write_trials_csv(out, r);
  return out.str();
}

TEST(WilsonTest, KnownValues) {
  const Interval all = wilson_interval(200, 200);
  EXPECT_NEAR(all.lo, 0.9811546736227335, 1e-14);
  EXPECT_EQ(all.hi, 1.0);
  const Interval none = wilson_interval(0, 1000);
  EXPECT_EQ(none.lo, 0.0);
  EXPECT_NEAR(none.hi, 0.0038267584855551234, 1e-15);
  const Interval mid = wilson_interval(37, 100);
  EXPECT_NEAR(mid.lo, 0.28182360534324524, 1e-14);
  EXPECT_NEAR(mid.hi, 0.4677947041905709, 1e-14);
  EXPECT_THROW(wilson_interval(1, 0), std::invalid_argument);
  EXPECT_THROW(wilson_interval(3, 2), std::invalid_argument);
}

TEST(CompareWithBoundTest, Verdicts) {
  EXPECT_EQ(compare_with_bound({0.5, 0.7}, BoundDirection::kLower, 0.4), Verdict::kPass);
  EXPECT_EQ(compare_with_bound({0.5, 0.7}, BoundDirection::kLower, 0.5), Verdict::kPass);
  EXPECT_EQ(compare_with_bound({0.5, 0.7}, BoundDirection::kLower, 0.6), Verdict::kInconclusive);
  EXPECT_EQ(compare_with_bound({0.5, 0.7}, BoundDirection::kLower, 0.8), Verdict::kFail);
  EXPECT_EQ(compare_with_bound({0.0, 0.01}, BoundDirection::kUpper, 0.05), Verdict::kPass);
  EXPECT_EQ(compare_with_bound({0.0, 0.01}, BoundDirection::kUpper, 1e-9), Verdict::kInconclusive);
  EXPECT_EQ(compare_with_bound({0.1, 0.2}, BoundDirection::kUpper, 0.05), Verdict::kFail);
  EXPECT_EQ(compare_with_bound({0.1, 0.2}, BoundDirection::kNone, 0.05), Verdict::kNotApplicable);
}

TEST(ConfigTest, ParsesJson) {
  const auto config = ExperimentConfig::from_json_text(
      R"({"n": 10000, "c": 0.3, "trials": 50, "master_seed": 18446744073709551615,
          "theta": 0.501, "m_policy": "auto", "regime": "subcritical-T1", "target_exponent": 10})");
  EXPECT_EQ(config.n, 10000u);
  EXPECT_DOUBLE_EQ(config.c, 0.3);
  EXPECT_EQ(config.master_seed, 18446744073709551615ULL);
  EXPECT_FALSE(config.m.has_value());
  EXPECT_EQ(config.regime, Regime::kSubcriticalT1);

  const auto explicit_m = ExperimentConfig::from_json_text(
      R"({"n": 100, "C": 2, "trials": 5, "M_policy": 7, "regime": "supercritical-T1"})");
  EXPECT_EQ(explicit_m.m, 7u);
  EXPECT_EQ(explicit_m.theta, kDefaultTheta);

  EXPECT_EQ(ExperimentConfig::from_json_text(config.to_json_text()).to_json_text(), config.to_json_text());
}

TEST(ConfigTest, RejectsInvalid) {
  for (const char* text : {
           R"({"n": 100, "c": 2, "trials": 5})",
           R"({"n": 100, "c": 200, "trials": 5, "regime": "theorem2"})",
           R"({"n": 100, "c": 2, "trials": 0, "regime": "theorem2"})",
           R"({"n": 100, "c": 2, "trials": 5, "regime": "critical"})",
           R"({"n": 100, "c": 2, "trials": 5, "regime": "theorem2", "theta": 0.4})",
           R"({"n": 100, "c": 2, "trials": 5, "regime": "theorem2", "m_policy": "big"})",
           R"({"n": "100", "c": 2, "trials": 5, "regime": "theorem2"})",
           R"([1, 2])",
           R"({"n": 100,)",
       }) {
    EXPECT_THROW(ExperimentConfig::from_json_text(text), std::invalid_argument) << text;
  }
}

TEST(PlanTest, PerRegimeConstants) {
  const ExperimentPlan sub = plan_experiment(make_config(10000, 0.3, 1, Regime::kSubcriticalT1));
  EXPECT_EQ(sub.params.m, 50u);
  EXPECT_FALSE(sub.markov.has_value());

  const ExperimentPlan sup = plan_experiment(make_config(100000, std::exp(3.0) * 1.05, 1, Regime::kSupercriticalT1));
  EXPECT_DOUBLE_EQ(sup.params.alpha, 1.0);
  EXPECT_DOUBLE_EQ(sup.params.epsilon1(), 0.25);
  EXPECT_DOUBLE_EQ(sup.giant_threshold, 50000.0);
  ASSERT_TRUE(sup.markov.has_value());
  EXPECT_LT(*sup.params.gamma * (1 + sup.params.alpha), 1.0);

  const ExperimentPlan t2 = plan_experiment(make_config(100000, 25.0, 1, Regime::kTheorem2));
  EXPECT_NEAR(t2.giant_threshold, 100000 - 100000 * std::exp(-25.0 / 8), 1e-8);
  EXPECT_NEAR(t2.markov->prob_bound, std::exp(-25.0 / 8), 1e-15);
  EXPECT_NEAR(t2.markov->threshold, 100000 * std::exp(-25.0 / 8), 1e-8);

  EXPECT_THROW(plan_experiment(make_config(1000, 10.0, 1, Regime::kTheorem2)), std::invalid_argument);
  EXPECT_THROW(plan_experiment(make_config(1000, 1.0, 1, Regime::kSubcriticalT1)), std::invalid_argument);
  EXPECT_THROW(plan_experiment(make_config(1000, 2.0, 1, Regime::kSupercriticalT1)), std::invalid_argument);
  auto explicit_m = make_config(1000, 1.0, 1, Regime::kSubcriticalT1);
  explicit_m.m = 5;
  EXPECT_EQ(plan_experiment(explicit_m).params.m, 5u);
}

TEST(RunTrialTest, ZeroMeanDegreeIsAllIsolated) {
  auto config = make_config(500, 0.0, 1, Regime::kSubcriticalT1);
  const TrialOutcome o = run_trial(config, 0);
  EXPECT_EQ(o.giant_size, 1u);
  EXPECT_EQ(o.small_sum, 500u);
  EXPECT_TRUE(o.flags.f_m);
}

TEST(RunTrialTest, SubcriticalComponentsStaySmall) {
  const auto config = make_config(10000, 0.3, 20, Regime::kSubcriticalT1, 5);
  const ExperimentPlan plan = plan_experiment(config);
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    const TrialOutcome o = run_trial(config, plan, t);
    EXPECT_TRUE(o.flags.f_m);
    EXPECT_GE(o.giant_size, o.second_size);
    EXPECT_EQ(o.small_sum, 10000u);
  }
}

TEST(RunTrialTest, LargeMeanDegreeGiant) {
  const auto config = make_config(20000, 100.0, 3, Regime::kTheorem2, 9);
  const ExperimentPlan plan = plan_experiment(config);
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    const TrialOutcome o = run_trial(config, plan, t);
    EXPECT_GE(o.giant_size, plan.giant_threshold);
    EXPECT_TRUE(o.flags.e_m);
    EXPECT_FALSE(o.step2_contradiction);
  }
}

TEST(RunExperimentTest, SingleTrial) {
  auto config = make_config(1000, 2.0, 1, Regime::kSupercriticalT1);
  config.m = 3;
  const ExperimentReport r = run_experiment(config, 1);
  ASSERT_EQ(r.outcomes.size(), 1u);
  for (const EventRow& row : r.rows) {
    EXPECT_TRUE(row.empirical_freq == 0.0 || row.empirical_freq == 1.0) << row.event;
  }
}

TEST(RunExperimentTest, ReproducibleAcrossRunsAndThreadCounts) {
  auto config = make_config(3000, 4.0, 40, Regime::kSupercriticalT1, 1234);
  config.m = 3;
  const ExperimentReport a = run_experiment(config, 1);
  const ExperimentReport b = run_experiment(config, 4);
  const ExperimentReport c = run_experiment(config, 3);
  EXPECT_EQ(report_csv(a), report_csv(b));
  EXPECT_EQ(trials_csv(a), trials_csv(b));
  EXPECT_EQ(trials_csv(a), trials_csv(c));
  auto other_seed = config;
  other_seed.master_seed = 4321;
  EXPECT_NE(trials_csv(a), trials_csv(run_experiment(other_seed, 2)));
}

TEST(RunExperimentTest, AggregationIgnoresCompletionOrder) {
  auto config = make_config(2000, 1.2, 60, Regime::kSupercriticalT1, 77);
  config.m = 2;
  const ExperimentPlan plan = plan_experiment(config);
  std::vector<TrialOutcome> outcomes;
  for (std::uint64_t t = 0; t < config.trials; ++t) outcomes.push_back(run_trial(config, plan, t));
  const ExperimentReport base = aggregate(config, plan, outcomes);
  std::mt19937 gen(5);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(outcomes.begin(), outcomes.end(), gen);
    const ExperimentReport shuffled = aggregate(config, plan, outcomes);
    EXPECT_EQ(report_csv(shuffled), report_csv(base));
    EXPECT_EQ(trials_csv(shuffled), trials_csv(base));
    EXPECT_EQ(shuffled.mean_small_fraction, base.mean_small_fraction);
  }
}

TEST(RunExperimentTest, ReportShape) {
  const ExperimentReport r = run_experiment(make_config(5000, 25.0, 8, Regime::kTheorem2, 3), 2);
  std::vector<std::string> events;
  for (const EventRow& row : r.rows) events.push_back(row.event);
  EXPECT_EQ(events, (std::vector<std::string>{"E_M", "E_M_proof", "F_M", "A_theta", "B_theta",
                                              "H_theta", "markov_small_sum"}));
  EXPECT_EQ(r.row("F_M").direction, BoundDirection::kNone);
  EXPECT_EQ(r.row("F_M").verdict, Verdict::kNotApplicable);
  EXPECT_EQ(r.row("markov_small_sum").direction, BoundDirection::kUpper);
  EXPECT_EQ(r.step2_contradictions, 0u);
  const std::string csv = report_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "event,empirical_freq,wilson_lo,wilson_hi,paper_bound,bound_direction,pass");
  EXPECT_THROW(r.row("nope"), std::out_of_range);
  for (const EventRow& row : r.rows) {
    EXPECT_GE(row.empirical_freq, 0.0);
    EXPECT_LE(row.empirical_freq, 1.0);
    if (row.paper_bound) {
      EXPECT_EQ(row.verdict, compare_with_bound(row.wilson, row.direction, *row.paper_bound));
    }
  }
}

// freq{small_sum > gamma(1+alpha)n} <= 1/(1+alpha) + 3 sigma where the Markov
// construction applies.
TEST(RunExperimentTest, MarkovConsistency) {
  for (double c : {21.0, 30.0}) {
    const auto config = make_config(5000, c, 200, Regime::kSupercriticalT1, 10);
    const ExperimentReport r = run_experiment(config, 2);
    const EventRow& row = r.row("markov_small_sum");
    const double bound = *row.paper_bound;
    EXPECT_LE(row.empirical_freq, bound + 3 * std::sqrt(bound * (1 - bound) / 200));
  }
}

TEST(RunExperimentTest, StepTwoNeverContradicted) {
  for (double c : {1.5, 3.0, 8.0, 22.0}) {
    auto config = make_config(4000, c, 30, Regime::kSupercriticalT1, 2);
    config.m = 4;
    const ExperimentReport r = run_experiment(config, 2);
    EXPECT_EQ(r.step2_contradictions, 0u) << c;
  }
}

TEST(VerifyDominanceTest, NoViolations) {
  const std::vector<double> half{0.5};
  const BoundReport small = verify_bound_dominance(6, half);
  EXPECT_TRUE(small.all_ok());
  EXPECT_EQ(small.rows.size(), 2u + 3 + 4 + 5 + 6);
  const auto& n2r2 = small.rows[1];
  EXPECT_EQ(n2r2.n, 2u);
  EXPECT_EQ(n2r2.r, 2u);
  EXPECT_NEAR(std::exp(n2r2.log_tree_bound), 1.0, 1e-15);
  EXPECT_NEAR(*n2r2.exact_prob, 0.5, 1e-15);

  std::vector<double> grid;
  for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
  EXPECT_TRUE(verify_bound_dominance(12, grid).violations().empty());
  EXPECT_THROW(verify_bound_dominance(13, grid), std::invalid_argument);
}

TEST(BoundsTableTest, RowsAndCsv) {
  const BoundReport table = bounds_table(12, 2.4, 20);
  ASSERT_EQ(table.rows.size(), 12u);
  EXPECT_FALSE(table.rows[0].log_simplified_bound.has_value());
  EXPECT_TRUE(table.all_ok());
  // n = 12, p = 0.2, r = 5: exact 0.010969544173488482 under tree 0.040159171015230394.
  EXPECT_NEAR(*table.rows[4].exact_prob, 0.010969544173488482, 1e-15);
  EXPECT_NEAR(std::exp(table.rows[4].log_tree_bound), 0.040159171015230394, 1e-14);

  const BoundReport big = bounds_table(100000, 25.0, 5);
  EXPECT_FALSE(big.rows[2].exact_prob.has_value());
  std::ostringstream out;
  write_bounds_csv(out, big);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "r,log_tree_bound,log_simplified_bound,exact_log_prob,dominance_ok");
  std::getline(lines, line);
  EXPECT_EQ(line.substr(0, 2), "1,");
  EXPECT_NE(line.find(",,,true"), std::string::npos);
}

}  // namespace
}  // namespace erlab
