#include "erlab/components.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace erlab {

ComponentTracker::ComponentTracker(Vertex n)
    : parent_(n), rank_(n, 0), size_(n, 1), components_(n) {
  std::iota(parent_.begin(), parent_.end(), Vertex{1});
}

Vertex ComponentTracker::find(Vertex v) {
  while (parent_[v - 1] != v) {
    Vertex& up = parent_[v - 1];
    up = parent_[up - 1];
    v = up;
  }
  return v;
}

bool ComponentTracker::unite(Vertex a, Vertex b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a - 1] < rank_[b - 1]) std::swap(a, b);
  parent_[b - 1] = a;
  size_[a - 1] += size_[b - 1];
  if (rank_[a - 1] == rank_[b - 1]) ++rank_[a - 1];
  --components_;
  return true;
}

std::vector<std::uint32_t> ComponentTracker::sizes() {
  std::vector<std::uint32_t> out;
  out.reserve(components_);
  for (Vertex v = 1; v <= vertex_count(); ++v) {
    if (parent_[v - 1] == v) out.push_back(size_[v - 1]);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

ComponentProfile::ComponentProfile(Vertex n, std::vector<std::uint32_t> sizes)
    : n_(n), sizes_(std::move(sizes)) {
  if (n_ == 0 || sizes_.empty()) throw std::invalid_argument("profile: empty graph");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] == 0) throw std::invalid_argument("profile: zero component size");
    if (i > 0 && sizes_[i] > sizes_[i - 1]) throw std::invalid_argument("profile: sizes not sorted");
    total += sizes_[i];
  }
  if (total != n_) throw std::invalid_argument("profile: sizes do not sum to n");
}

ComponentProfile component_profile(ComponentTracker& tracker) {
  return ComponentProfile(tracker.vertex_count(), tracker.sizes());
}

ComponentProfile component_profile(const GraphSample& g) {
  ComponentTracker tracker(g.n());
  for (const Edge& e : g.edges()) tracker.add_edge(e);
  return component_profile(tracker);
}

namespace {

double snapped_product(double theta, std::uint64_t n) {
  const double x = theta * static_cast<double>(n);
  const double nearest = std::round(x);
  return std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x)) ? nearest : x;
}

}  // namespace

std::uint64_t ceil_fraction_of(double theta, std::uint64_t n) {
  return static_cast<std::uint64_t>(std::ceil(snapped_product(theta, n)));
}

std::uint64_t floor_fraction_of(double theta, std::uint64_t n) {
  return static_cast<std::uint64_t>(std::floor(snapped_product(theta, n)));
}

EventFlags evaluate_events(const ComponentProfile& profile, const EventThresholds& t) {
  if (!(t.theta > 0.0 && t.theta < 1.0)) throw std::invalid_argument("events: theta must lie in (0, 1)");
  const std::uint64_t big_from = ceil_fraction_of(t.theta, profile.n());
  const std::uint64_t small_to = floor_fraction_of(t.theta, profile.n());

  EventFlags f;
  f.giant_size = profile.largest();
  f.second_size = profile.second_largest();
  for (const std::uint32_t s : profile.sizes()) {
    const auto size = static_cast<double>(s);
    if (s >= big_from) f.a_theta = true;
    if (size >= t.small_cutoff) {
      f.h_theta = true;
      if (s <= small_to) f.b_theta = true;
    }
    if (s <= small_to) f.small_sum += s;
  }
  f.f_m = static_cast<double>(f.giant_size) < t.small_cutoff;
  f.e_m = static_cast<double>(f.giant_size) >= t.giant_threshold &&
          static_cast<double>(f.second_size) < t.small_cutoff;
  return f;
}

EventFlags evaluate_events(const ComponentProfile& profile, const PhaseParams& params,
                           double giant_threshold) {
  return evaluate_events(
      profile, EventThresholds{params.theta, params.small_cutoff(profile.n()), giant_threshold});
}

}  // namespace erlab
