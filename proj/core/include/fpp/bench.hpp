#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fpp/engine.hpp"
#include "fpp/graph.hpp"
#include "fpp/kernels.hpp"
#include "fpp/partition.hpp"

namespace fpp {

/// Per-query sequential results and their summed edge counts.
struct OracleBaseline {
  std::vector<DistanceResult> distances;  // SSSP / BFS
  std::vector<PprResult> ppr;
  std::vector<std::vector<VertexId>> walks;
  std::uint64_t edges = 0;
};

OracleBaseline compute_baseline(const Graph& graph, const QuerySpec& spec,
                                std::span<const VertexId> sources, std::size_t worker_count = 1);

/// SSSP/BFS: labels bit-equal to the oracle. PPR: |sum p + sum r - 1| <= 1e-9
/// and r(v) < epsilon * deg(v) everywhere. RW: identical walk.
bool matches_oracle(const Graph& graph, std::span<const QueryState> states,
                    const OracleBaseline& baseline);

struct NaiveRun {
  std::vector<std::vector<double>> labels;  // per query (SSSP / BFS / PPR p)
  std::vector<std::vector<VertexId>> walks;
  std::uint64_t edges_processed = 0;
};

/// Uncoordinated baseline: every query runs its whole-graph sequential
/// kernel on its own worker.
NaiveRun run_naive_concurrent(const Graph& graph, const QuerySpec& spec,
                              std::span<const VertexId> sources, std::size_t worker_count);

struct BenchWorkload {
  std::string name;
  Graph graph;
  std::vector<Partition> partitions;
  QuerySpec spec;
  std::vector<VertexId> sources;
};

using WorkloadFactory = std::function<BenchWorkload(std::uint64_t seed)>;

struct BenchOptions {
  std::size_t bucket_count = 0;  // 0 = engine default
  std::size_t worker_count = 1;
  ConsolidationMethod consolidation = ConsolidationMethod::kSort;
};

struct BenchCell {
  std::string workload;
  std::string functor;
  std::string yield;
  std::size_t bucket_count = 0;
  std::size_t worker_count = 1;
  std::uint64_t seed = 0;
  RunMetrics metrics;
  std::uint64_t oracle_edges = 0;
  double work_ratio = 0.0;  // only meaningful when correct
  double wall_ms = 0.0;
  bool correct = false;
};

struct BenchReport {
  std::vector<BenchCell> cells;
};

/// Runs one configuration on a workload and checks it against `baseline`.
BenchCell run_cell(const BenchWorkload& workload, const OracleBaseline& baseline,
                   const EngineConfig& config, std::uint64_t seed);

/// Every functor on the identical workload, for every seed.
BenchReport bench_schedulers(const WorkloadFactory& make_workload, std::span<const std::uint64_t> seeds,
                             const YieldPolicy& yield, std::span<const PriorityFunctor> functors,
                             const BenchOptions& options = {});

/// Every yield policy (include YieldPolicy::none() for the reference cell)
/// under one functor, for every seed.
BenchReport bench_yield_sweep(const WorkloadFactory& make_workload, std::span<const std::uint64_t> seeds,
                              const PriorityFunctor& functor, std::span<const YieldPolicy> thresholds,
                              const BenchOptions& options = {});

struct SchedulerSummary {
  std::size_t seeds = 0;
  double priority_le_fifo = 0;         // fraction of seeds
  double priority_le_fifo_le_random = 0;
  double max_ops_unique_min = 0;
};

/// Fractions over seeds of ops_executed orderings between functors.
SchedulerSummary summarize_schedulers(const BenchReport& report);

struct ReportOptions {
  bool include_timing = true;
};

/// Columns: workload, functor, yield, K, workers, seed, ops_executed,
/// edges_processed, work_ratio, partition_visits, yields, correct[, wall_ms].
void write_report_csv(std::ostream& out, const BenchReport& report, const ReportOptions& options = {});
void write_report_json(std::ostream& out, const BenchReport& report, const ReportOptions& options = {});

}  // namespace fpp
