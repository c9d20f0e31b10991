#include "erlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace erlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// k * log_base, with 0 * (-inf) taken as 0.
double power_log(double k, double log_base) { return k == 0.0 ? 0.0 : k * log_base; }

double log_binomial(std::uint64_t n, std::uint64_t k) {
  const auto nd = static_cast<double>(n);
  const auto kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

}  // namespace

double PhaseParams::small_cutoff(std::uint64_t n) const {
  return static_cast<double>(m) * std::log(static_cast<double>(n));
}

double PhaseParams::epsilon1() const { return alpha / (2.0 * (1.0 + alpha)); }

PhaseParams make_phase_params(double c, double theta, std::uint32_t m, double alpha) {
  if (!(c > 0.0)) throw std::invalid_argument("phase params: C must be positive");
  if (!(theta > 0.5 && theta < 1.0)) throw std::invalid_argument("phase params: theta must lie in (1/2, 1)");
  if (!(alpha >= 0.0)) throw std::invalid_argument("phase params: alpha must be non-negative");
  if (m < 1) throw std::invalid_argument("phase params: M must be at least 1");
  PhaseParams params;
  params.c = c;
  params.theta = theta;
  params.delta = delta(c, theta);
  if (params.delta > 0.0) params.gamma = gamma(c, params.delta);
  if (std::exp(1.0) * c < 1.0) params.delta1 = delta1(c);
  params.alpha = alpha;
  params.m = m;
  return params;
}

double tree_bound_log(std::uint64_t n, double p, std::uint64_t r) {
  if (r < 1 || r > n) throw std::invalid_argument("tree bound: r must lie in [1, n]");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("tree bound: p must lie in [0, 1]");
  const double log_p = p > 0.0 ? std::log(p) : kNegInf;
  const double log_q = p < 1.0 ? std::log1p(-p) : kNegInf;
  const auto rd = static_cast<double>(r);
  const auto nd = static_cast<double>(n);
  if (r == 1) return power_log(nd - 1.0, log_q);
  return log_binomial(n, r - 1) + power_log(rd - 1.0, log_p) + power_log(rd * (nd - rd), log_q) +
         (rd - 2.0) * std::log(rd);
}

double simplified_bound_log(std::uint64_t n, double c, std::uint64_t r) {
  if (r < 2) throw std::invalid_argument("simplified bound: r must be at least 2");
  if (!(c > 0.0)) throw std::invalid_argument("simplified bound: C must be positive");
  if (n < 1) throw std::invalid_argument("simplified bound: n must be positive");
  const auto rd = static_cast<double>(r);
  return -std::log(c * rd) - rd * (c - 1.0 - std::log(c) - c * rd / static_cast<double>(n));
}

double delta(double c, double theta) { return c * (1.0 - theta) - 1.0 - std::log(c); }

double gamma(double c, double delta_value) {
  if (!(delta_value > 0.0)) throw std::invalid_argument("gamma: delta must be positive");
  return 1.0 / (c * std::expm1(delta_value));
}

double delta1(double c) {
  if (!(c > 0.0 && std::exp(1.0) * c < 1.0)) {
    throw std::invalid_argument("delta1: requires 0 < C < 1/e");
  }
  return -1.0 - std::log(c);
}

std::uint32_t min_m(double rate, std::uint64_t n, double target_exponent) {
  if (!(rate > 0.0)) throw std::invalid_argument("min M: rate must be positive");
  if (n < 2) throw std::invalid_argument("min M: n must be at least 2");
  if (!(target_exponent > 0.0)) throw std::invalid_argument("min M: target exponent must be positive");
  double m = std::max(1.0, std::ceil(target_exponent / rate));
  // Correct the rounding of the quotient so that rate * m >= target holds
  // in floating point and rate * (m - 1) >= target does not.
  while (rate * m < target_exponent) m += 1.0;
  while (m > 1.0 && rate * (m - 1.0) >= target_exponent) m -= 1.0;
  if (m > static_cast<double>(std::numeric_limits<std::uint32_t>::max())) {
    throw std::invalid_argument("min M: rate too small");
  }
  return static_cast<std::uint32_t>(m);
}

MarkovBound markov_bound(double gamma_value, double alpha, std::uint64_t n) {
  if (!(gamma_value > 0.0)) throw std::invalid_argument("markov: gamma must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("markov: alpha must be positive");
  if (!(gamma_value * (1.0 + alpha) < 1.0)) {
    throw std::invalid_argument("markov: requires gamma (1 + alpha) < 1");
  }
  return MarkovBound{gamma_value * (1.0 + alpha) * static_cast<double>(n), 1.0 / (1.0 + alpha)};
}

bool large_c_condition_holds(double c, double theta) { return c > 0.0 && delta(c, theta) >= c / 4.0; }

Theorem2Constants theorem2_constants(double c, std::uint64_t n) {
  if (!large_c_condition_holds(c)) {
    throw std::invalid_argument("theorem 2 constants: delta(C) >= C/4 fails for this C");
  }
  const auto nd = static_cast<double>(n);
  const double tail = std::exp(-c / 8.0);
  Theorem2Constants k;
  k.giant_lower = nd - nd * tail;
  k.prob_lower = -std::expm1(-c / 100.0);
  k.proof_prob_lower = 1.0 - 2.0 * tail;
  k.small_sum_upper = nd * tail;
  k.gamma_bound = std::exp(-c / 4.0);
  k.alpha = std::expm1(c / 8.0);
  return k;
}

std::optional<double> large_c_onset(std::span<const double> grid, double theta) {
  std::optional<double> onset;
  for (const double c : grid) {
    if (large_c_condition_holds(c, theta)) {
      if (!onset) onset = c;
    } else {
      onset.reset();
    }
  }
  return onset;
}

double delta_margin_over_log2(double c, double theta) { return delta(c, theta) - std::log(2.0); }

std::vector<BoundRow> BoundReport::violations() const {
  std::vector<BoundRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
               [](const BoundRow& row) { return !row.ok(); });
  return out;
}

bool BoundReport::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const BoundRow& row) { return row.ok(); });
}

}  // namespace erlab
