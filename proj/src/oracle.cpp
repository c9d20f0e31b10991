#include "erlab/oracle.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "erlab/components.hpp"

namespace erlab {

namespace {

using Float = boost::multiprecision::cpp_bin_float_100;

template <typename T>
T power(const T& base, std::uint64_t exponent) {
  T result = 1;
  T b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

// Pascal rows 0..n as T.
template <typename T>
std::vector<std::vector<T>> binomial_table(std::uint32_t n) {
  std::vector<std::vector<T>> rows(n + 1);
  for (std::uint32_t i = 0; i <= n; ++i) {
    rows[i].assign(i + 1, T(1));
    for (std::uint32_t j = 1; j < i; ++j) rows[i][j] = rows[i - 1][j - 1] + rows[i - 1][j];
  }
  return rows;
}

// conn[k] = P(G(k, p) connected) for k = 0..max_k (conn[0] unused).
template <typename T>
std::vector<T> connectivity_table(std::uint32_t max_k, const T& p) {
  const T q = T(1) - p;
  const auto binom = binomial_table<T>(max_k);
  std::vector<T> q_pow(max_k / 2 * (max_k - max_k / 2) + 1);
  q_pow[0] = 1;
  for (std::size_t e = 1; e < q_pow.size(); ++e) q_pow[e] = q_pow[e - 1] * q;

  std::vector<T> conn(max_k + 1, T(0));
  if (max_k >= 1) conn[1] = 1;
  for (std::uint32_t k = 2; k <= max_k; ++k) {
    T disconnected = 0;
    for (std::uint32_t j = 1; j < k; ++j) {
      disconnected += binom[k - 1][j - 1] * conn[j] * q_pow[static_cast<std::size_t>(j) * (k - j)];
    }
    conn[k] = T(1) - disconnected;
  }
  return conn;
}

template <typename T>
std::vector<T> component_law(Vertex n, const T& p) {
  const auto conn = connectivity_table<T>(n, p);
  const auto binom = binomial_table<T>(n - 1);
  const T q = T(1) - p;
  std::vector<T> probs(n);
  for (std::uint32_t r = 1; r <= n; ++r) {
    probs[r - 1] = binom[n - 1][r - 1] * conn[r] * power(q, static_cast<std::uint64_t>(r) * (n - r));
  }
  return probs;
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("oracle: p must lie in [0, 1]");
}

void check_probability(const Rational& p) {
  if (p < 0 || p > 1) throw std::invalid_argument("oracle: p must lie in [0, 1]");
}

void check_range(Vertex n, Vertex max_n, const char* what) {
  if (n < 2 || n > max_n) {
    throw std::invalid_argument(std::string(what) + ": n must lie in [2, " + std::to_string(max_n) + "]");
  }
}

// counts[r - 1][k]: graphs with k open edges in which `vertex` lies in a
// component of size r.
std::vector<std::vector<std::uint64_t>> enumerate_component_sizes(Vertex n, Vertex vertex) {
  std::vector<Edge> pairs;
  for (Vertex v = 2; v <= n; ++v) {
    for (Vertex u = 1; u < v; ++u) pairs.push_back(Edge{u, v});
  }
  const auto pair_total = static_cast<std::uint32_t>(pairs.size());
  std::vector<std::vector<std::uint64_t>> counts(n, std::vector<std::uint64_t>(pair_total + 1, 0));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pair_total); ++mask) {
    ComponentTracker tracker(n);
    for (std::uint32_t e = 0; e < pair_total; ++e) {
      if (mask >> e & 1U) tracker.add_edge(pairs[e]);
    }
    ++counts[tracker.component_size(vertex) - 1][std::popcount(mask)];
  }
  return counts;
}

template <typename T>
std::vector<T> brute_force_law(Vertex n, const T& p, Vertex vertex) {
  const auto counts = enumerate_component_sizes(n, vertex);
  const auto pair_total = static_cast<std::uint32_t>(pair_count(n));
  const T q = T(1) - p;
  std::vector<T> weight(pair_total + 1);
  for (std::uint32_t k = 0; k <= pair_total; ++k) weight[k] = power(p, k) * power(q, pair_total - k);
  std::vector<T> probs(n, T(0));
  for (Vertex r = 1; r <= n; ++r) {
    for (std::uint32_t k = 0; k <= pair_total; ++k) {
      if (counts[r - 1][k] != 0) probs[r - 1] += T(counts[r - 1][k]) * weight[k];
    }
  }
  return probs;
}

ExactDistribution from_float(Vertex n, double p, const std::vector<Float>& law) {
  ExactDistribution d;
  d.n = n;
  d.p = p;
  d.probs.reserve(law.size());
  for (const Float& x : law) d.probs.push_back(x.convert_to<double>());
  return d;
}

ExactDistribution from_rational(Vertex n, const Rational& p, std::vector<Rational> law) {
  ExactDistribution d;
  d.n = n;
  d.p = p.convert_to<double>();
  d.exact_p = p;
  d.probs.reserve(law.size());
  for (const Rational& x : law) d.probs.push_back(x.convert_to<double>());
  d.exact_probs = std::move(law);
  return d;
}

}  // namespace

Rational rational_probability(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0 || num > den) {
    throw std::invalid_argument("rational probability must satisfy 0 <= num <= den, den > 0");
  }
  return Rational(num, den);
}

double connectivity_probability(std::uint32_t k, double p) {
  check_probability(p);
  if (k < 1) throw std::invalid_argument("connectivity: k must be at least 1");
  return connectivity_table<Float>(k, Float(p))[k].convert_to<double>();
}

Rational connectivity_probability(std::uint32_t k, const Rational& p) {
  check_probability(p);
  if (k < 1) throw std::invalid_argument("connectivity: k must be at least 1");
  return connectivity_table<Rational>(k, p)[k];
}

ExactDistribution exact_component_distribution(Vertex n, double p) {
  check_probability(p);
  check_range(n, kMaxOracleN, "exact distribution");
  return from_float(n, p, component_law<Float>(n, Float(p)));
}

ExactDistribution exact_component_distribution(Vertex n, const Rational& p) {
  check_probability(p);
  check_range(n, kMaxRationalOracleN, "exact rational distribution");
  return from_rational(n, p, component_law<Rational>(n, p));
}

ExactDistribution brute_force_distribution(Vertex n, double p, Vertex vertex) {
  check_probability(p);
  check_range(n, kMaxBruteForceN, "brute force");
  if (vertex < 1 || vertex > n) throw std::invalid_argument("brute force: vertex out of range");
  return from_float(n, p, brute_force_law<Float>(n, Float(p), vertex));
}

ExactDistribution brute_force_distribution(Vertex n, const Rational& p, Vertex vertex) {
  check_probability(p);
  check_range(n, kMaxBruteForceN, "brute force");
  if (vertex < 1 || vertex > n) throw std::invalid_argument("brute force: vertex out of range");
  return from_rational(n, p, brute_force_law<Rational>(n, p, vertex));
}

}  // namespace erlab
