#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fpp/graph.hpp"
#include "fpp/types.hpp"

namespace fpp {

/// Vertex -> partition assignment forming a disjoint cover of V with no
/// empty part.
class PartitionPlan {
 public:
  PartitionPlan() = default;
  /// Throws GraphError if some id in [0, partition_count) is unused or an
  /// id is out of range.
  PartitionPlan(std::vector<PartitionId> partition_of, std::size_t partition_count);

  std::size_t partition_count() const { return partition_count_; }
  std::size_t vertex_count() const { return partition_of_.size(); }
  PartitionId operator[](VertexId v) const { return partition_of_[v]; }
  const std::vector<PartitionId>& partition_of() const { return partition_of_; }

  friend bool operator==(const PartitionPlan&, const PartitionPlan&) = default;

 private:
  std::vector<PartitionId> partition_of_;
  std::size_t partition_count_ = 0;
};

struct CutEdge {
  VertexId target;  // global id
  PartitionId target_partition;
  Weight weight;
};

/// An out-edge addressed in the original graph's adjacency order.
struct OrderedEdge {
  VertexId target;  // global id
  bool remote;
  PartitionId target_partition;
};

/// A partition's out-edges: intra-partition edges in a local-index CSR, and
/// edges leaving the partition as annotated cut edges.
class Partition {
 public:
  PartitionId id() const { return id_; }
  std::size_t vertex_count() const { return local_vertices_.size(); }
  const std::vector<VertexId>& local_vertices() const { return local_vertices_; }
  VertexId global_id(VertexId local) const { return local_vertices_[local]; }

  const Graph& local_csr() const { return local_csr_; }
  std::span<const CutEdge> cut_edges(VertexId local) const {
    return {cut_edges_.data() + cut_offsets_[local],
            static_cast<std::size_t>(cut_offsets_[local + 1] - cut_offsets_[local])};
  }
  std::size_t cut_edge_count() const { return cut_edges_.size(); }
  /// Whole-graph out-degree of a local vertex.
  std::size_t out_degree(VertexId local) const {
    return local_csr_.degree(local) + cut_edges(local).size();
  }
  /// i-th out-edge of `local` in the order of the source graph's adjacency.
  OrderedEdge out_edge(VertexId local, std::size_t i) const {
    const std::uint32_t code = edge_order_[local_csr_.edge_begin(local) + cut_offsets_[local] + i];
    if (code & kCutBit) {
      const CutEdge& c = cut_edges_[cut_offsets_[local] + (code & ~kCutBit)];
      return {c.target, true, c.target_partition};
    }
    return {global_id(local_csr_.target_at(local_csr_.edge_begin(local) + code)), false, id_};
  }
  std::size_t local_edge_count() const { return local_csr_.edge_count(); }
  /// |E_P|: every out-edge whose source lies in this partition.
  std::size_t edge_count() const { return local_edge_count() + cut_edge_count(); }

  bool contains(VertexId global) const {
    return global < plan_->vertex_count() && (*plan_)[global] == id_;
  }
  std::optional<VertexId> global_to_local(VertexId global) const {
    if (!contains(global)) return std::nullopt;
    return (*local_index_)[global];
  }
  /// Unchecked; `global` must be contained in this partition.
  VertexId local_index(VertexId global) const { return (*local_index_)[global]; }

  const PartitionPlan& plan() const { return *plan_; }

 private:
  friend std::vector<Partition> build_partitions(const Graph&, const PartitionPlan&);

  static constexpr std::uint32_t kCutBit = 0x80000000u;

  PartitionId id_ = 0;
  std::vector<VertexId> local_vertices_;
  // per out-edge in source order: index into the vertex's local edges, or
  // kCutBit | index into its cut edges
  std::vector<std::uint32_t> edge_order_;
  Graph local_csr_;
  std::vector<EdgeIndex> cut_offsets_;
  std::vector<CutEdge> cut_edges_;
  // Shared by all partitions of one plan; the local index of v is only
  // meaningful inside plan[v].
  std::shared_ptr<const std::vector<VertexId>> local_index_;
  std::shared_ptr<const PartitionPlan> plan_;
};

/// ceil(graph_bytes / cache_bytes), at least 1.
std::size_t partition_count_for_budget(std::uint64_t graph_bytes, std::uint64_t cache_bytes);

/// Seeded balanced random partitioning: part sizes differ by at most one.
PartitionPlan partition_random(const Graph& graph, std::size_t k, std::uint64_t seed);

/// Contiguous vertex-id ranges of (near) equal size.
PartitionPlan partition_contiguous(const Graph& graph, std::size_t k);

std::vector<Partition> build_partitions(const Graph& graph, const PartitionPlan& plan);

}  // namespace fpp
