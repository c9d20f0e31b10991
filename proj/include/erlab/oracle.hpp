#ifndef ERLAB_ORACLE_HPP
#define ERLAB_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "erlab/sampler.hpp"

namespace erlab {

using Rational = boost::multiprecision::cpp_rational;

// Exact edge probability num/den; throws unless 0 <= num <= den, den > 0.
Rational rational_probability(std::int64_t num, std::int64_t den);

// Exact law of #C1, the size of the component containing vertex 1.
struct ExactDistribution {
  Vertex n = 0;
  double p = 0.0;
  std::optional<Rational> exact_p;   // set on the rational path
  std::vector<double> probs;         // probs[r - 1] = P(#C1 = r)
  std::vector<Rational> exact_probs; // rational path only, same indexing

  double prob(std::uint32_t r) const { return probs.at(r - 1); }
};

inline constexpr Vertex kMaxOracleN = 64;
inline constexpr Vertex kMaxRationalOracleN = 20;
inline constexpr Vertex kMaxBruteForceN = 6;

// P(G(k, p) is connected) from
//   P(1) = 1,  P(k) = 1 - sum_{j<k} binom(k-1, j-1) P(j) (1-p)^(j(k-j)).
// The floating overload evaluates in 100-digit binary floating point.
double connectivity_probability(std::uint32_t k, double p);
Rational connectivity_probability(std::uint32_t k, const Rational& p);

// P(#C1 = r) = binom(n-1, r-1) P_conn(r) (1-p)^(r(n-r)).
// Floating path: 2 <= n <= 64. Rational path: 2 <= n <= 20.
ExactDistribution exact_component_distribution(Vertex n, double p);
ExactDistribution exact_component_distribution(Vertex n, const Rational& p);

// Enumerates all 2^(n(n-1)/2) graphs on n <= 6 vertices and tallies the size
// of the component containing `vertex`.
ExactDistribution brute_force_distribution(Vertex n, double p, Vertex vertex = 1);
ExactDistribution brute_force_distribution(Vertex n, const Rational& p, Vertex vertex = 1);

}  // namespace erlab

#endif  // ERLAB_ORACLE_HPP
