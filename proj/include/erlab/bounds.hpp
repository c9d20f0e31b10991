#ifndef ERLAB_BOUNDS_HPP
#define ERLAB_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace erlab {

// Giant-fraction threshold 1/2 + 10^-3.
inline constexpr double kDefaultTheta = 0.5 + 1e-3;
// Default polynomial decay n^-10 demanded of the per-size bound.
inline constexpr double kDefaultTargetExponent = 10.0;

// Constants of the component-counting argument for a mean degree C.
struct PhaseParams {
  double c = 0.0;
  double theta = kDefaultTheta;
  double delta = 0.0;                  // C(1 - theta) - 1 - log C
  std::optional<double> gamma;         // 1 / (C(e^delta - 1)), when delta > 0
  double alpha = 0.0;                  // Markov slack
  std::optional<double> delta1;        // log(1 / (eC)), when eC < 1
  std::uint32_t m = 1;                 // cutoff multiplier in M log n

  double small_cutoff(std::uint64_t n) const;
  // alpha / (2(1 + alpha)).
  double epsilon1() const;
};

// Fills delta, gamma and delta1 from C and theta. Throws unless C > 0,
// theta in (1/2, 1), alpha >= 0 and m >= 1.
PhaseParams make_phase_params(double c, double theta, std::uint32_t m, double alpha);

// log of binom(n, r-1) p^(r-1) (1-p)^(r(n-r)) r^(r-2), the spanning-tree
// bound on P(#C1 = r). For r = 1 this is log (1-p)^(n-1). p = 0 and p = 1
// are taken as limits; a zero exponent contributes a factor of one.
double tree_bound_log(std::uint64_t n, double p, std::uint64_t r);

// log(1/(Cr)) - r(C - 1 - log C - Cr/n). Requires r >= 2, C > 0.
double simplified_bound_log(std::uint64_t n, double c, std::uint64_t r);

// C(1 - theta) - 1 - log C.
double delta(double c, double theta = kDefaultTheta);

// 1 / (C(e^delta - 1)). Throws unless delta > 0.
double gamma(double c, double delta_value);

// -1 - log C. Throws unless C < 1/e.
double delta1(double c);

// Smallest M >= 1 with rate * M >= target_exponent, i.e. the smallest M for
// which exp(-rate M log n) <= n^-target_exponent. Throws unless rate > 0 and n >= 2.
std::uint32_t min_m(double rate, std::uint64_t n, double target_exponent = kDefaultTargetExponent);

struct MarkovBound {
  double threshold;   // gamma (1 + alpha) n
  double prob_bound;  // 1 / (1 + alpha)
};

// Throws unless gamma > 0, alpha > 0 and gamma (1 + alpha) < 1.
MarkovBound markov_bound(double gamma_value, double alpha, std::uint64_t n);

// Largest-C estimates: delta >= C/4 gives E X_i <= e^(-C/4), and
// alpha = e^(C/8) - 1 turns the Markov step into the giant-size bound.
struct Theorem2Constants {
  double giant_lower;       // n - n e^(-C/8)
  double prob_lower;        // 1 - e^(-C/100), as stated
  double proof_prob_lower;  // 1 - 2 e^(-C/8), as reached by the argument
  double small_sum_upper;   // n e^(-C/8)
  double gamma_bound;       // e^(-C/4)
  double alpha;             // e^(C/8) - 1
};

// True when delta(C, theta) >= C/4.
bool large_c_condition_holds(double c, double theta = kDefaultTheta);

// Throws std::invalid_argument when large_c_condition_holds(C) is false.
Theorem2Constants theorem2_constants(double c, std::uint64_t n);

// First C of an ascending grid at which delta(C, theta) >= C/4 holds and keeps
// holding for every later grid point.
std::optional<double> large_c_onset(std::span<const double> grid, double theta = kDefaultTheta);

// delta(C, theta) - log 2.
double delta_margin_over_log2(double c, double theta = kDefaultTheta);

// Per-(n, p, r) comparison of the bounds with an exact value.
struct BoundRow {
  std::uint64_t n = 0;
  double p = 0.0;
  std::uint64_t r = 0;
  double log_tree_bound = 0.0;
  std::optional<double> log_simplified_bound;  // r >= 2 only
  std::optional<double> exact_prob;
  bool tree_dominates_exact = true;    // exp(log_tree_bound) >= exact_prob
  bool simplified_dominates_tree = true;

  bool ok() const { return tree_dominates_exact && simplified_dominates_tree; }
};

struct BoundReport {
  std::vector<BoundRow> rows;

  std::vector<BoundRow> violations() const;
  bool all_ok() const;
};

}  // namespace erlab

#endif  // ERLAB_BOUNDS_HPP
