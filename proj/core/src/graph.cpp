#include "fpp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace fpp {

Graph::Graph(std::vector<EdgeIndex> offsets, std::vector<VertexId> adjacency,
             std::optional<std::vector<Weight>> weights, bool directed)
    : offsets_(std::move(offsets)),
      adjacency_(std::move(adjacency)),
      weights_(std::move(weights)),
      directed_(directed) {
  if (offsets_.empty() || offsets_.front() != 0) {
    throw GraphError("CSR offsets must start at 0");
  }
  if (!std::is_sorted(offsets_.begin(), offsets_.end())) {
    throw GraphError("CSR offsets must be non-decreasing");
  }
  if (offsets_.back() != adjacency_.size()) {
    throw GraphError("CSR offsets end at " + std::to_string(offsets_.back()) +
                     " but adjacency holds " + std::to_string(adjacency_.size()));
  }
  const auto n = vertex_count();
  for (VertexId t : adjacency_) {
    if (t >= n) throw GraphError("adjacency entry " + std::to_string(t) + " out of range");
  }
  if (weights_) {
    if (weights_->size() != adjacency_.size()) {
      throw GraphError("weights and adjacency differ in length");
    }
    for (Weight w : *weights_) {
      if (!std::isfinite(w) || w < 0) throw GraphError("edge weights must be finite and >= 0");
    }
  }
}

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges, bool weighted,
                        bool directed) {
  std::vector<EdgeIndex> offsets(vertex_count + 1, 0);
  for (const Edge& e : edges) {
    if (e.source >= vertex_count || e.target >= vertex_count) {
      throw GraphError("edge (" + std::to_string(e.source) + ", " + std::to_string(e.target) +
                       ") out of range");
    }
    ++offsets[e.source + 1];
    if (!directed && e.source != e.target) ++offsets[e.target + 1];
  }
  for (std::size_t v = 0; v < vertex_count; ++v) offsets[v + 1] += offsets[v];

  std::vector<VertexId> adjacency(offsets.back());
  std::vector<Weight> weights(weighted ? offsets.back() : 0);
  std::vector<EdgeIndex> cursor(offsets.begin(), offsets.end() - 1);
  auto place = [&](VertexId u, VertexId v, Weight w) {
    const EdgeIndex slot = cursor[u]++;
    adjacency[slot] = v;
    if (weighted) weights[slot] = w;
  };
  for (const Edge& e : edges) {
    place(e.source, e.target, e.weight);
    if (!directed && e.source != e.target) place(e.target, e.source, e.weight);
  }
  std::optional<std::vector<Weight>> w;
  if (weighted) w = std::move(weights);
  return Graph(std::move(offsets), std::move(adjacency), std::move(w), directed);
}

std::size_t Graph::byte_size() const {
  std::size_t bytes = offsets_.size() * sizeof(EdgeIndex) + adjacency_.size() * sizeof(VertexId);
  if (weights_) bytes += weights_->size() * sizeof(Weight);
  return bytes;
}

Graph Graph::symmetrized() const {
  if (!directed_) return *this;
  std::vector<Edge> pairs;
  pairs.reserve(edge_count());
  for (VertexId u = 0; u < vertex_count(); ++u) {
    for (EdgeIndex e = edge_begin(u); e < edge_end(u); ++e) {
      const VertexId v = adjacency_[e];
      pairs.push_back({std::min(u, v), std::max(u, v), weight_at(e)});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.source, a.target, a.weight) < std::tie(b.source, b.target, b.weight);
  });
  // sorted by weight within a pair, so unique() keeps the lightest edge
  auto last = std::unique(pairs.begin(), pairs.end(), [](const Edge& a, const Edge& b) {
    return a.source == b.source && a.target == b.target;
  });
  pairs.erase(last, pairs.end());
  return from_edges(vertex_count(), pairs, weighted(), /*directed=*/false);
}

Graph Graph::with_unit_weights() const {
  return Graph(offsets_, adjacency_, std::vector<Weight>(adjacency_.size(), 1.0), directed_);
}

}  // namespace fpp
