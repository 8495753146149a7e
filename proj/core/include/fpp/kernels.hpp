#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fpp/graph.hpp"
#include "fpp/operation.hpp"
#include "fpp/partition.hpp"
#include "fpp/yield.hpp"

namespace fpp {

// ---------------------------------------------------------------------------
// Whole-graph sequential oracles. Each reports the number of edges it
// traversed, the baseline for work-efficiency ratios.
// ---------------------------------------------------------------------------

struct DistanceResult {
  std::vector<double> labels;  // kInfinity when unreachable
  std::uint64_t edges_processed = 0;
};

/// Binary-heap Dijkstra. Unweighted graphs use unit weights.
DistanceResult sssp_oracle(const Graph& graph, VertexId source);

/// Queue BFS; labels are hop levels.
DistanceResult bfs_oracle(const Graph& graph, VertexId source);

struct PprResult {
  std::vector<double> p;
  std::vector<double> r;
  std::uint64_t edges_processed = 0;
};

/// Andersen-Chung-Lang push, always pushing the largest residual first,
/// until r(v) < epsilon * deg(v) everywhere. Degree-0 vertices settle their
/// whole residual into p.
PprResult ppr_oracle(const Graph& graph, VertexId source, double alpha, double epsilon);

/// Walk of at most walk_length steps; stops early at a sink. Step i picks
/// out-edge bounded(counter_draw(seed, i), degree) in adjacency order.
std::vector<VertexId> rw_oracle(const Graph& graph, VertexId source, std::uint32_t walk_length,
                                std::uint64_t rng_seed);

/// Out-edge index chosen at step `step` of a walk with `rng_seed`.
std::size_t walk_choice(std::uint64_t rng_seed, std::uint64_t step, std::size_t degree);

// ---------------------------------------------------------------------------
// Per-query state and the in-partition kernel.
// ---------------------------------------------------------------------------

/// Everything one query owns. Labels are global (length |V|).
///  - SSSP/BFS: `labels` holds the best known tentative value, including
///    values carried by in-flight operations; `pending[v]` is set while an
///    operation carrying labels[v] has not yet been expanded.
///  - PPR: `labels` is the settled mass p, `residual` the residual r held
///    locally (mass in in-flight operations is in neither).
///  - RW: `walk` is the visited vertex sequence.
struct QueryState {
  QueryId id = 0;
  QuerySpec spec;
  VertexId source = 0;
  std::vector<double> labels;
  std::vector<double> residual;
  std::vector<std::uint8_t> pending;
  std::vector<VertexId> walk;
  std::uint64_t edges_processed = 0;
  bool done = false;

  static QueryState make(QueryId id, const QuerySpec& spec, VertexId source,
                         std::size_t vertex_count);
};

struct RoutedOperation {
  PartitionId target;
  Operation op;

  friend bool operator==(const RoutedOperation&, const RoutedOperation&) = default;
};

struct ComputeOutcome {
  std::vector<RoutedOperation> remote_ops;
  std::vector<Operation> residual_local_ops;
  std::uint64_t local_edges_processed = 0;
  std::uint64_t ops_accepted = 0;  // buffered ops that entered the kernel
  std::uint64_t ops_stale = 0;     // buffered ops discarded without work
  std::uint64_t expansions = 0;    // vertices expanded / pushed / walked
  bool yielded = false;
};

/// Runs the query's sequential kernel inside `partition`, seeded by `ops`.
///
/// `ops` must belong to `state.id`, target vertices of `partition`, and be in
/// the query kind's priority order. Edges leaving the partition produce
/// remote operations, filtered against the query's own labels so that only
/// improvements travel. The first expansion always runs; `yield_check` is
/// consulted before every later one, and on firing the unexpanded local
/// frontier is returned as `residual_local_ops`.
///
/// Throws std::invalid_argument for a foreign query or an out-of-partition
/// vertex.
ComputeOutcome compute_in_partition(QueryState& state, const Partition& partition,
                                    std::span<const Operation> ops, const YieldCheck& yield_check);

}  // namespace fpp
