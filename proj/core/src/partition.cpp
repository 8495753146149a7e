#include "fpp/partition.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace fpp {

PartitionPlan::PartitionPlan(std::vector<PartitionId> partition_of, std::size_t partition_count)
    : partition_of_(std::move(partition_of)), partition_count_(partition_count) {
  if (partition_count_ == 0 && !partition_of_.empty()) {
    throw GraphError("partition plan with vertices needs at least one partition");
  }
  std::vector<std::size_t> sizes(partition_count_, 0);
  for (std::size_t v = 0; v < partition_of_.size(); ++v) {
    const PartitionId p = partition_of_[v];
    if (p >= partition_count_) {
      throw GraphError("vertex " + std::to_string(v) + " assigned to partition " +
                       std::to_string(p) + " >= " + std::to_string(partition_count_));
    }
    ++sizes[p];
  }
  for (std::size_t p = 0; p < sizes.size(); ++p) {
    if (sizes[p] == 0) throw GraphError("partition " + std::to_string(p) + " is empty");
  }
}

std::size_t partition_count_for_budget(std::uint64_t graph_bytes, std::uint64_t cache_bytes) {
  if (graph_bytes == 0 || cache_bytes == 0) {
    throw std::invalid_argument("graph and cache byte counts must be positive");
  }
  return std::max<std::uint64_t>(1, (graph_bytes + cache_bytes - 1) / cache_bytes);
}

PartitionPlan partition_random(const Graph& graph, std::size_t k, std::uint64_t seed) {
  const std::size_t n = graph.vertex_count();
  if (k < 1 || k > n) {
    throw std::invalid_argument("partition count " + std::to_string(k) + " outside [1, " +
                                std::to_string(n) + "]");
  }
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  // Fisher-Yates with an explicit bounded draw; std::shuffle and the
  // std distributions are implementation-defined.
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  std::vector<PartitionId> part(n);
  for (std::size_t i = 0; i < n; ++i) part[order[i]] = static_cast<PartitionId>(i % k);
  return PartitionPlan(std::move(part), k);
}

PartitionPlan partition_contiguous(const Graph& graph, std::size_t k) {
  const std::size_t n = graph.vertex_count();
  if (k < 1 || k > n) {
    throw std::invalid_argument("partition count " + std::to_string(k) + " outside [1, " +
                                std::to_string(n) + "]");
  }
  std::vector<PartitionId> part(n);
  for (std::size_t v = 0; v < n; ++v) part[v] = static_cast<PartitionId>(v * k / n);
  return PartitionPlan(std::move(part), k);
}

std::vector<Partition> build_partitions(const Graph& graph, const PartitionPlan& plan) {
  if (plan.vertex_count() != graph.vertex_count()) {
    throw GraphError("partition plan covers " + std::to_string(plan.vertex_count()) +
                     " vertices, graph has " + std::to_string(graph.vertex_count()));
  }
  const std::size_t k = plan.partition_count();
  auto shared_plan = std::make_shared<const PartitionPlan>(plan);
  auto local_index = std::make_shared<std::vector<VertexId>>(graph.vertex_count());

  std::vector<Partition> parts(k);
  for (std::size_t p = 0; p < k; ++p) parts[p].id_ = static_cast<PartitionId>(p);
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    auto& part = parts[plan[v]];
    (*local_index)[v] = static_cast<VertexId>(part.local_vertices_.size());
    part.local_vertices_.push_back(v);
  }

  for (auto& part : parts) {
    std::vector<EdgeIndex> offsets{0};
    std::vector<VertexId> adjacency;
    std::vector<Weight> weights;
    part.cut_offsets_.assign(1, 0);
    for (VertexId u : part.local_vertices_) {
      if (graph.degree(u) >= Partition::kCutBit) throw GraphError("vertex degree too large");
      const std::size_t local_first = adjacency.size();
      const std::size_t cut_first = part.cut_edges_.size();
      for (EdgeIndex e = graph.edge_begin(u); e < graph.edge_end(u); ++e) {
        const VertexId v = graph.target_at(e);
        if (plan[v] == part.id_) {
          part.edge_order_.push_back(static_cast<std::uint32_t>(adjacency.size() - local_first));
          adjacency.push_back((*local_index)[v]);
          if (graph.weighted()) weights.push_back(graph.weight_at(e));
        } else {
          part.edge_order_.push_back(Partition::kCutBit |
                                     static_cast<std::uint32_t>(part.cut_edges_.size() - cut_first));
          part.cut_edges_.push_back({v, plan[v], graph.weight_at(e)});
        }
      }
      offsets.push_back(adjacency.size());
      part.cut_offsets_.push_back(part.cut_edges_.size());
    }
    std::optional<std::vector<Weight>> w;
    if (graph.weighted()) w = std::move(weights);
    part.local_csr_ = Graph(std::move(offsets), std::move(adjacency), std::move(w), graph.directed());
    part.local_index_ = local_index;
    part.plan_ = shared_plan;
  }
  return parts;
}

}  // namespace fpp
