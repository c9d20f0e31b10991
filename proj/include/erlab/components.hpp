#ifndef ERLAB_COMPONENTS_HPP
#define ERLAB_COMPONENTS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "erlab/bounds.hpp"
#include "erlab/sampler.hpp"

namespace erlab {

// Union-find over vertices 1..n with union by rank and path halving.
class ComponentTracker {
 public:
  explicit ComponentTracker(Vertex n);

  void add_edge(Edge e) { unite(e.u, e.v); }
  // Returns true when the two vertices were in different components.
  bool unite(Vertex a, Vertex b);
  Vertex find(Vertex v);
  std::uint32_t component_size(Vertex v) { return size_[find(v) - 1]; }
  Vertex vertex_count() const { return static_cast<Vertex>(parent_.size()); }
  Vertex component_count() const { return components_; }

  // Sizes of all components, largest first.
  std::vector<std::uint32_t> sizes();

 private:
  std::vector<Vertex> parent_;  // parent_[v - 1] is the parent label of v
  std::vector<std::uint8_t> rank_;
  std::vector<std::uint32_t> size_;
  Vertex components_;
};

// Component sizes of a graph on n vertices, sorted non-increasing.
class ComponentProfile {
 public:
  // Throws std::invalid_argument unless sizes are positive, sum to n and
  // are sorted non-increasing.
  ComponentProfile(Vertex n, std::vector<std::uint32_t> sizes);

  Vertex n() const { return n_; }
  std::span<const std::uint32_t> sizes() const { return sizes_; }
  std::uint32_t largest() const { return sizes_.front(); }
  // 0 when the graph is connected.
  std::uint32_t second_largest() const { return sizes_.size() > 1 ? sizes_[1] : 0; }

 private:
  Vertex n_;
  std::vector<std::uint32_t> sizes_;
};

ComponentProfile component_profile(const GraphSample& g);
ComponentProfile component_profile(ComponentTracker& tracker);

// ceil(theta * n) and floor(theta * n). Products within 1e-9 relative of an
// integer snap to it, so a decimal theta such as 0.501 gives 501 at n = 1000.
std::uint64_t ceil_fraction_of(double theta, std::uint64_t n);
std::uint64_t floor_fraction_of(double theta, std::uint64_t n);

struct EventThresholds {
  double theta = kDefaultTheta;
  // M log n, compared without rounding.
  double small_cutoff = 0.0;
  // Minimum giant size for E(M); sizes are compared as size >= threshold.
  double giant_threshold = 0.0;
};

struct EventFlags {
  bool a_theta = false;  // some size >= ceil(theta n)
  bool b_theta = false;  // some size in [M log n, theta n]
  bool h_theta = false;  // some size >= M log n
  bool e_m = false;      // largest >= giant threshold and second < M log n
  bool f_m = false;      // every size < M log n
  std::uint32_t giant_size = 0;
  std::uint32_t second_size = 0;
  std::uint64_t small_sum = 0;  // sum of sizes in [1, theta n]
};

// Throws std::invalid_argument unless theta lies in (0, 1).
EventFlags evaluate_events(const ComponentProfile& profile, const EventThresholds& thresholds);

// Uses params.theta and small_cutoff = params.M * log(n).
EventFlags evaluate_events(const ComponentProfile& profile, const PhaseParams& params,
                           double giant_threshold);

}  // namespace erlab

#endif  // ERLAB_COMPONENTS_HPP
