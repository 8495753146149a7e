#include "fpp/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace fpp {

namespace {

std::optional<double> best_value(std::span<const Operation> ops, QueryKind kind) {
  if (ops.empty()) return std::nullopt;
  double best = ops.front().value;
  for (const Operation& op : ops) {
    if (better_value(kind, op.value, best)) best = op.value;
  }
  return best;
}

std::optional<double> best_buffered_value(const PartitionBuffer& buffer, QueryKind kind) {
  std::optional<double> best;
  for (std::size_t b = 0; b < buffer.bucket_count(); ++b) {
    if (auto v = best_value(buffer.bucket(b), kind); v && (!best || better_value(kind, *v, *best))) {
      best = v;
    }
  }
  return best;
}

ConsolidatedBatch consolidate_buckets(std::vector<std::vector<Operation>>& buckets, QueryKind kind,
                                      ConsolidationMethod method, std::size_t query_count) {
  ConsolidatedBatch batch;
  const std::size_t k = buckets.size();
  for (std::size_t b = 0; b < k; ++b) {
    if (buckets[b].empty()) continue;
    ConsolidatedBatch part;
    if (method == ConsolidationMethod::kSort) {
      part = consolidate_sort(buckets[b], kind);
    } else {
      std::vector<QueryId> ids;
      for (std::size_t q = b; q < query_count; q += k) ids.push_back(static_cast<QueryId>(q));
      part = consolidate_scan(buckets[b], kind, ids);
    }
    batch.discarded += part.discarded;
    for (auto& run : part.runs) batch.runs.push_back(std::move(run));
  }
  std::sort(batch.runs.begin(), batch.runs.end(),
            [](const QueryRun& a, const QueryRun& b) { return a.query < b.query; });
  return batch;
}

// Guards the one-partition-at-a-time invariant of the loop.
class PassToken {
 public:
  explicit PassToken(std::atomic<bool>& flag) : flag_(flag) {
    if (flag_.exchange(true)) throw std::logic_error("two partitions drained concurrently");
  }
  ~PassToken() { flag_.store(false); }
  PassToken(const PassToken&) = delete;
  PassToken& operator=(const PassToken&) = delete;

 private:
  std::atomic<bool>& flag_;
};

}  // namespace

void EngineConfig::validate() const {
  if (worker_count < 1) throw std::invalid_argument("worker count must be >= 1");
  if (cache_budget_bytes == 0) throw std::invalid_argument("cache budget must be positive");
  yield.validate();
}

bool Outboxes::empty() const {
  return std::all_of(by_target.begin(), by_target.end(), [](const auto& v) { return v.empty(); });
}

PassMetrics process_partition_pass(const Partition& partition, const ConsolidatedBatch& batch,
                                   std::span<QueryState> states, const YieldPolicy& yield,
                                   std::size_t query_count, Outboxes& outboxes,
                                   std::size_t worker_count) {
  const std::size_t runs = batch.runs.size();
  std::vector<ComputeOutcome> outcomes(runs);
  std::vector<std::exception_ptr> errors(runs);

#pragma omp parallel for num_threads(static_cast<int>(worker_count)) schedule(dynamic, 1)
  for (std::size_t i = 0; i < runs; ++i) {
    try {
      const QueryRun& run = batch.runs[i];
      if (run.query >= states.size()) throw std::invalid_argument("run for unknown query");
      QueryState& state = states[run.query];
      const YieldCheck check = make_yield_check(yield, partition, query_count,
                                                run.ops.front().value, state.spec.kind);
      outcomes[i] = compute_in_partition(state, partition, run.ops, check);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  PassMetrics pass;
  pass.per_query.resize(runs);
  for (std::size_t i = 0; i < runs; ++i) {
    ComputeOutcome& out = outcomes[i];
    QueryMetrics& q = pass.per_query[i];
    q.edges_processed = out.local_edges_processed;
    q.ops_executed = out.ops_accepted;
    q.ops_filtered_stale = out.ops_stale;
    q.partition_visits = 1;
    q.yields = out.yielded ? 1 : 0;
    pass.edges_processed += q.edges_processed;
    pass.ops_executed += q.ops_executed;
    pass.ops_filtered_stale += q.ops_filtered_stale;
    pass.yields += q.yields;
    pass.residual_ops.insert(pass.residual_ops.end(), out.residual_local_ops.begin(),
                             out.residual_local_ops.end());
    for (const RoutedOperation& routed : out.remote_ops) {
      outboxes.push(routed.target, routed.op);
    }
  }
  return pass;
}

std::uint64_t flush_outboxes(Outboxes& outboxes, BufferSet& buffers, SchedulerQueue& queue,
                             QueryKind kind) {
  std::uint64_t appended = 0;
  std::sort(outboxes.touched.begin(), outboxes.touched.end());
  for (const PartitionId target : outboxes.touched) {
    auto& ops = outboxes.by_target[target];
    if (ops.empty()) continue;
    buffers[target].append(ops);
    queue.notify_append(target, *best_value(ops, kind), buffers[target].size());
    appended += ops.size();
    ops.clear();
  }
  outboxes.touched.clear();
  return appended;
}

RunMetrics run_fpp(const Graph& graph, std::span<const Partition> partitions, BufferSet& buffers,
                   std::span<QueryState> states, const EngineConfig& config) {
  config.validate();
  if (partitions.size() != buffers.size()) {
    throw std::invalid_argument("buffer set and partition list differ in size");
  }
  for (const Partition& part : partitions) {
    if (part.plan().vertex_count() != graph.vertex_count()) {
      throw std::invalid_argument("partitions were built for a different graph");
    }
  }
  const QueryKind kind = states.empty() ? QueryKind::kSssp : states.front().spec.kind;
  for (std::size_t q = 0; q < states.size(); ++q) {
    if (states[q].id != q) throw std::invalid_argument("query ids must equal their index");
    if (states[q].spec.kind != kind) {
      throw std::invalid_argument("mixed query kinds in one run (" +
                                  std::string(to_string(states[q].spec.kind)) + " vs " +
                                  std::string(to_string(kind)) + ")");
    }
  }
  const std::size_t query_count = std::max<std::size_t>(1, states.size());

  RunMetrics metrics;
  metrics.per_query.resize(states.size());
  metrics.run_digest = 0xcbf29ce484222325ULL;
  SchedulerQueue queue(partitions.size(), config.functor, kind);
  for (PartitionId p = 0; p < buffers.size(); ++p) {
    if (buffers[p].empty()) continue;
    metrics.ops_appended += buffers[p].size();
    queue.notify_append(p, *best_buffered_value(buffers[p], kind), buffers[p].size());
  }

  std::atomic<bool> pass_active{false};
  Outboxes outboxes(partitions.size());
  while (const auto next = queue.schedule_next()) {
    const PartitionId pid = *next;
    PassToken token(pass_active);
    auto buckets = buffers[pid].drain();
    std::uint64_t drained = 0;
    for (const auto& b : buckets) drained += b.size();
    const ConsolidatedBatch batch =
        consolidate_buckets(buckets, kind, config.consolidation, states.size());
    metrics.ops_discarded_by_consolidation += batch.discarded;
    metrics.run_digest = batch_digest(batch, metrics.run_digest);
    if (config.record_passes) metrics.passes.push_back({pid, batch_digest(batch), drained});

    PassMetrics pass = process_partition_pass(partitions[pid], batch, states, config.yield,
                                              query_count, outboxes, config.worker_count);
    for (std::size_t i = 0; i < batch.runs.size(); ++i) {
      QueryMetrics& q = metrics.per_query[batch.runs[i].query];
      const QueryMetrics& d = pass.per_query[i];
      q.edges_processed += d.edges_processed;
      q.ops_executed += d.ops_executed;
      q.ops_filtered_stale += d.ops_filtered_stale;
      q.partition_visits += d.partition_visits;
      q.yields += d.yields;
    }
    metrics.edges_processed += pass.edges_processed;
    metrics.ops_executed += pass.ops_executed;
    metrics.ops_filtered_stale += pass.ops_filtered_stale;
    metrics.yields += pass.yields;
    metrics.partition_visits += batch.runs.size();
    ++metrics.scheduling_steps;

    if (!pass.residual_ops.empty()) {
      buffers[pid].append(pass.residual_ops);
      queue.notify_append(pid, *best_value(pass.residual_ops, kind), buffers[pid].size());
      metrics.ops_appended += pass.residual_ops.size();
    }
    metrics.ops_appended += flush_outboxes(outboxes, buffers, queue, kind);
  }

  for (QueryState& state : states) {
    if (kind != QueryKind::kRw) state.done = true;
  }
  return metrics;
}

double compute_work_ratio(const RunMetrics& metrics, std::uint64_t oracle_edges) {
  if (oracle_edges == 0) throw std::invalid_argument("work ratio needs a non-zero baseline");
  return static_cast<double>(metrics.edges_processed) / static_cast<double>(oracle_edges);
}

FppRun run_queries(const Graph& graph, std::span<const Partition> partitions, const QuerySpec& spec,
                   std::span<const VertexId> sources, const EngineConfig& config) {
  if (partitions.empty()) throw std::invalid_argument("no partitions");
  FppRun run;
  run.states.reserve(sources.size());
  for (std::size_t q = 0; q < sources.size(); ++q) {
    run.states.push_back(
        QueryState::make(static_cast<QueryId>(q), spec, sources[q], graph.vertex_count()));
  }
  const std::size_t k = config.bucket_count > 0
                            ? config.bucket_count
                            : default_bucket_count(config.worker_count, sources.size());
  BufferSet buffers = init_buffers(partitions.front().plan(), run.states, k);
  run.metrics = run_fpp(graph, partitions, buffers, run.states, config);
  return run;
}

}  // namespace fpp
