#include "erlab/sampler.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace erlab {

SampleSpec SampleSpec::from_mean_degree(Vertex n, double c, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample: n must be positive");
  if (!(c >= 0.0)) throw std::invalid_argument("sample: C must be non-negative");
  const double p = c / static_cast<double>(n);
  if (p > 1.0) throw std::invalid_argument("sample: C / n exceeds 1");
  return SampleSpec{n, p, seed};
}

void SampleSpec::validate() const {
  if (n == 0) throw std::invalid_argument("sample: n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample: p must lie in [0, 1]");
}

GraphSample::GraphSample(Vertex n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ == 0) throw std::invalid_argument("graph: n must be positive");
  if (edges_.size() > pair_count(n_)) throw std::invalid_argument("graph: too many edges");
  for (const Edge& e : edges_) {
    if (e.u < 1 || e.v > n_ || e.u >= e.v) {
      throw std::invalid_argument("graph: edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ") is not 1 <= i < j <= n");
    }
  }
  std::vector<Edge> sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("graph: duplicate edge");
  }
}

GraphSample sample_gnp(const SampleSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(spec.p * static_cast<double>(pair_count(spec.n)) * 1.1) + 16);
  for_each_gnp_edge(spec.n, spec.p, rng, [&](Edge e) { edges.push_back(e); });
  return GraphSample(GraphSample::Trusted{}, spec.n, std::move(edges));
}

GraphSample sample_gnp_naive(const SampleSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<Edge> edges;
  for_each_gnp_edge_naive(spec.n, spec.p, rng, [&](Edge e) { edges.push_back(e); });
  return GraphSample(GraphSample::Trusted{}, spec.n, std::move(edges));
}

void write_edge_list(std::ostream& out, const GraphSample& g) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

namespace {

std::string next_data_line(std::istream& in, std::size_t& line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
  }
  throw std::runtime_error("edge list: unexpected end of input after line " +
                           std::to_string(line_no));
}

template <typename T>
T parse_field(std::istringstream& fields, std::size_t line_no) {
  long long value = 0;
  if (!(fields >> value) || value < 0 ||
      static_cast<unsigned long long>(value) > std::numeric_limits<T>::max()) {
    throw std::runtime_error("edge list: malformed number on line " + std::to_string(line_no));
  }
  return static_cast<T>(value);
}

}  // namespace

GraphSample read_edge_list(std::istream& in) {
  std::size_t line_no = 0;
  std::istringstream header(next_data_line(in, line_no));
  const auto n = parse_field<Vertex>(header, line_no);
  const auto m = parse_field<std::uint64_t>(header, line_no);
  if (n == 0) throw std::runtime_error("edge list: n must be positive");
  if (m > pair_count(n)) throw std::runtime_error("edge list: m exceeds n(n-1)/2");

  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t k = 0; k < m; ++k) {
    std::istringstream fields(next_data_line(in, line_no));
    const auto i = parse_field<Vertex>(fields, line_no);
    const auto j = parse_field<Vertex>(fields, line_no);
    edges.push_back(Edge{i, j});
  }
  try {
    return GraphSample(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("edge list: ") + e.what());
  }
}

}  // namespace erlab
