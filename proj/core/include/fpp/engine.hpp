#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fpp/buffers.hpp"
#include "fpp/graph.hpp"
#include "fpp/kernels.hpp"
#include "fpp/partition.hpp"
#include "fpp/scheduler.hpp"
#include "fpp/yield.hpp"

namespace fpp {

struct EngineConfig {
  std::uint64_t cache_budget_bytes = 13'750'000;
  std::size_t bucket_count = 0;  // 0 = default_bucket_count()
  PriorityFunctor functor = PriorityFunctor::fifo();
  YieldPolicy yield = YieldPolicy::none();
  std::size_t worker_count = 1;
  std::uint64_t seed = 0;
  ConsolidationMethod consolidation = ConsolidationMethod::kSort;
  bool record_passes = false;

  void validate() const;
};

struct QueryMetrics {
  std::uint64_t edges_processed = 0;
  std::uint64_t ops_executed = 0;
  std::uint64_t ops_filtered_stale = 0;
  std::uint64_t partition_visits = 0;
  std::uint64_t yields = 0;

  friend bool operator==(const QueryMetrics&, const QueryMetrics&) = default;
};

struct PassRecord {
  PartitionId partition;
  std::uint64_t batch_digest;
  std::uint64_t ops_drained;

  friend bool operator==(const PassRecord&, const PassRecord&) = default;
};

struct RunMetrics {
  std::vector<QueryMetrics> per_query;
  std::uint64_t edges_processed = 0;
  std::uint64_t ops_executed = 0;
  std::uint64_t ops_appended = 0;
  std::uint64_t ops_discarded_by_consolidation = 0;
  std::uint64_t ops_filtered_stale = 0;
  std::uint64_t partition_visits = 0;  // query runs across all passes
  std::uint64_t yields = 0;
  std::uint64_t scheduling_steps = 0;  // passes
  std::uint64_t oracle_edges = 0;
  double work_ratio = 0.0;
  std::uint64_t run_digest = 0;  // chained batch digests of every pass
  std::vector<PassRecord> passes;  // when EngineConfig::record_passes

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

/// Remote operations produced during one pass, grouped by target partition.
struct Outboxes {
  explicit Outboxes(std::size_t partition_count = 0) : by_target(partition_count) {}
  std::vector<std::vector<Operation>> by_target;
  std::vector<PartitionId> touched;  // targets whose outbox became non-empty

  void push(PartitionId target, const Operation& op) {
    auto& box = by_target[target];
    if (box.empty()) touched.push_back(target);
    box.push_back(op);
  }
  bool empty() const;
};

struct PassMetrics {
  std::vector<QueryMetrics> per_query;  // aligned with the batch's runs
  std::vector<Operation> residual_ops;  // yielded, back to the active buffer
  std::uint64_t edges_processed = 0;
  std::uint64_t ops_executed = 0;
  std::uint64_t ops_filtered_stale = 0;
  std::uint64_t yields = 0;
};

/// Executes every run of `batch` inside `partition`, one task per query,
/// `worker_count` tasks at a time. `states` is indexed by query id. Remote
/// operations land in `outboxes` in query order.
PassMetrics process_partition_pass(const Partition& partition, const ConsolidatedBatch& batch,
                                   std::span<QueryState> states, const YieldPolicy& yield,
                                   std::size_t query_count, Outboxes& outboxes,
                                   std::size_t worker_count);

/// Appends every outbox batch to its target buffer and refreshes the
/// scheduler. Returns the number of operations appended.
std::uint64_t flush_outboxes(Outboxes& outboxes, BufferSet& buffers, SchedulerQueue& queue,
                             QueryKind kind);

/// Runs the buffered loop until every buffer is empty. `states[q].id` must
/// equal q and all queries must share one kind; `buffers` must come from
/// init_buffers. Throws std::invalid_argument on a mixed batch or invalid
/// configuration.
RunMetrics run_fpp(const Graph& graph, std::span<const Partition> partitions, BufferSet& buffers,
                   std::span<QueryState> states, const EngineConfig& config);

/// Total engine edges / oracle edges. Throws std::invalid_argument on a zero
/// baseline.
double compute_work_ratio(const RunMetrics& metrics, std::uint64_t oracle_edges);

struct FppRun {
  std::vector<QueryState> states;
  RunMetrics metrics;
};

/// Builds one query per source (query id = index), initializes buffers and
/// runs the loop.
FppRun run_queries(const Graph& graph, std::span<const Partition> partitions, const QuerySpec& spec,
                   std::span<const VertexId> sources, const EngineConfig& config);

}  // namespace fpp
