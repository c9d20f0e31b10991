#ifndef ERLAB_SAMPLER_HPP
#define ERLAB_SAMPLER_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "erlab/rng.hpp"

namespace erlab {

using Vertex = std::uint32_t;

// Undirected edge between vertices labelled 1..n, stored with u < v.
struct Edge {
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Below this edge probability the sampler skips closed pairs geometrically
// instead of flipping a coin per pair.
inline constexpr double kSparseThreshold = 0.01;

inline std::uint64_t pair_count(std::uint64_t n) { return n * (n - 1) / 2; }

struct SampleSpec {
  Vertex n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;

  // p = C / n. Throws if C / n falls outside [0, 1].
  static SampleSpec from_mean_degree(Vertex n, double c, std::uint64_t seed);

  // Throws std::invalid_argument on n == 0 or p outside [0, 1].
  void validate() const;
};

// Immutable G(n, p) instance. Vertices are 1..n.
class GraphSample {
 public:
  // Validates endpoints, ordering and uniqueness of `edges`.
  GraphSample(Vertex n, std::vector<Edge> edges);

  Vertex n() const { return n_; }
  std::span<const Edge> edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  friend bool operator==(const GraphSample&, const GraphSample&) = default;

 private:
  struct Trusted {};
  GraphSample(Trusted, Vertex n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {}
  friend GraphSample sample_gnp(const SampleSpec&);
  friend GraphSample sample_gnp_naive(const SampleSpec&);

  Vertex n_;
  std::vector<Edge> edges_;
};

// Calls emit(Edge) for every open pair of G(n, p). Pairs are visited in
// order of the larger endpoint, then the smaller one. Uses geometric
// skipping when p < kSparseThreshold, one Bernoulli draw per pair otherwise.
template <typename EmitEdge>
void for_each_gnp_edge(Vertex n, double p, Rng& rng, EmitEdge&& emit);

// Per-pair Bernoulli enumeration regardless of p.
template <typename EmitEdge>
void for_each_gnp_edge_naive(Vertex n, double p, Rng& rng, EmitEdge&& emit) {
  if (p <= 0.0) return;
  for (Vertex v = 2; v <= n; ++v) {
    for (Vertex u = 1; u < v; ++u) {
      if (p >= 1.0 || rng.bernoulli(p)) emit(Edge{u, v});
    }
  }
}

// Batagelj-Brandes skipping over the pair sequence (1,2), (1,3), (2,3), ...
template <typename EmitEdge>
void for_each_gnp_edge_sparse(Vertex n, double p, Rng& rng, EmitEdge&& emit) {
  if (p <= 0.0 || n < 2) return;
  const double log_q = std::log1p(-p);
  // 0-based: current pair is (w, v) with w < v.
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  const double horizon = static_cast<double>(pair_count(n)) + 1.0;
  while (v < nn) {
    const double skip = std::floor(std::log(rng.uniform_open_closed()) / log_q);
    if (skip >= horizon) return;
    w += 1 + static_cast<std::int64_t>(skip);
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) emit(Edge{static_cast<Vertex>(w + 1), static_cast<Vertex>(v + 1)});
  }
}

template <typename EmitEdge>
void for_each_gnp_edge(Vertex n, double p, Rng& rng, EmitEdge&& emit) {
  if (p > 0.0 && p < kSparseThreshold) {
    for_each_gnp_edge_sparse(n, p, rng, emit);
  } else {
    for_each_gnp_edge_naive(n, p, rng, emit);
  }
}

// Draws G(n, p) from an Rng seeded with spec.seed. Deterministic in spec.
GraphSample sample_gnp(const SampleSpec& spec);

// Reference sampler: one Bernoulli draw per pair for every p.
GraphSample sample_gnp_naive(const SampleSpec& spec);

// Edge-list text format: "n m" then m lines "i j", 1 <= i < j <= n.
void write_edge_list(std::ostream& out, const GraphSample& g);
GraphSample read_edge_list(std::istream& in);

}  // namespace erlab

#endif  // ERLAB_SAMPLER_HPP
