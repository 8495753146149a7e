#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fpp/types.hpp"

namespace fpp {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  VertexId source;
  VertexId target;
  Weight weight = 1.0;
};

/// Immutable CSR adjacency with optional non-negative edge weights.
///
/// `directed()` only records how the graph was built. Undirected graphs are
/// stored with both orientations of every edge, so out-degree is degree.
class Graph {
 public:
  Graph() : offsets_{0} {}

  /// Validates every CSR invariant and throws GraphError on violation.
  Graph(std::vector<EdgeIndex> offsets, std::vector<VertexId> adjacency,
        std::optional<std::vector<Weight>> weights, bool directed = true);

  /// Builds a CSR from an edge list. Edges keep their relative order per
  /// source. With `directed == false` each edge is inserted in both
  /// directions (self-loops once).
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                          bool weighted, bool directed = true);

  std::size_t vertex_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return adjacency_.size(); }
  bool weighted() const { return weights_.has_value(); }
  bool directed() const { return directed_; }

  std::size_t degree(VertexId v) const {
    return static_cast<std::size_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], degree(v)};
  }
  /// Unit weights when the graph is unweighted.
  Weight weight_at(EdgeIndex e) const { return weights_ ? (*weights_)[e] : 1.0; }
  EdgeIndex edge_begin(VertexId v) const { return offsets_[v]; }
  EdgeIndex edge_end(VertexId v) const { return offsets_[v + 1]; }
  VertexId target_at(EdgeIndex e) const { return adjacency_[e]; }

  const std::vector<EdgeIndex>& offsets() const { return offsets_; }
  const std::vector<VertexId>& adjacency() const { return adjacency_; }
  const std::optional<std::vector<Weight>>& weights() const { return weights_; }

  /// Bytes of the offsets, adjacency and weights arrays.
  std::size_t byte_size() const;

  /// Undirected view. Returns a copy when already undirected; otherwise each
  /// unordered pair {u, v} joined by any edge becomes one undirected edge
  /// carrying the smallest weight seen.
  Graph symmetrized() const;

  /// Copy with every weight replaced by 1.
  Graph with_unit_weights() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<EdgeIndex> offsets_;
  std::vector<VertexId> adjacency_;
  std::optional<std::vector<Weight>> weights_;
  bool directed_ = true;
};

}  // namespace fpp
