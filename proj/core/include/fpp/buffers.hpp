#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <shared_mutex>
#include <span>
#include <vector>

#include "fpp/kernels.hpp"
#include "fpp/operation.hpp"
#include "fpp/partition.hpp"

namespace fpp {

/// One partition's operation buffer: K independent buckets, query q always
/// in bucket q mod K.
///
/// append() is safe for any number of concurrent callers. Each caller
/// reserves a disjoint index range with one fetch_add per bucket and copies
/// into it; a caller whose range overruns the capacity doubles the bucket
/// under an exclusive lock. drain() and the read accessors need exclusive
/// access.
class PartitionBuffer {
 public:
  PartitionBuffer(PartitionId id, std::shared_ptr<const PartitionPlan> plan, std::size_t bucket_count);
  PartitionBuffer(const PartitionBuffer&) = delete;
  PartitionBuffer& operator=(const PartitionBuffer&) = delete;

  PartitionId id() const { return id_; }
  std::size_t bucket_count() const { return buckets_.size(); }
  std::size_t bucket_of(QueryId query) const { return query % buckets_.size(); }

  /// Throws std::invalid_argument if an operation's vertex lies outside
  /// this partition; nothing is appended in that case.
  void append(std::span<const Operation> ops);

  /// Returns every bucket's operations and empties the buffer.
  std::vector<std::vector<Operation>> drain();

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::span<const Operation> bucket(std::size_t k) const;

 private:
  struct Bucket {
    std::atomic<std::size_t> size{0};
    std::size_t capacity = 0;
    std::unique_ptr<Operation[]> data;
    std::shared_mutex grow;
  };

  void append_to_bucket(Bucket& bucket, std::span<const Operation> ops);

  PartitionId id_;
  std::shared_ptr<const PartitionPlan> plan_;
  std::vector<std::unique_ptr<Bucket>> buckets_;
};

/// All partition buffers of one run.
class BufferSet {
 public:
  BufferSet() = default;
  BufferSet(std::shared_ptr<const PartitionPlan> plan, std::size_t bucket_count);

  std::size_t size() const { return buffers_.size(); }
  PartitionBuffer& operator[](PartitionId p) { return *buffers_[p]; }
  const PartitionBuffer& operator[](PartitionId p) const { return *buffers_[p]; }
  std::size_t bucket_count() const { return bucket_count_; }
  const PartitionPlan& plan() const { return *plan_; }
  std::size_t total_size() const;

 private:
  std::shared_ptr<const PartitionPlan> plan_;
  std::size_t bucket_count_ = 1;
  std::vector<std::unique_ptr<PartitionBuffer>> buffers_;
};

/// Places each query's seed operation in the buffer of its source's
/// partition. Throws std::invalid_argument if a source is unmapped.
BufferSet init_buffers(const PartitionPlan& plan, std::span<const QueryState> queries,
                       std::size_t bucket_count);

/// max(4 * workers, 1) capped at the query count (and at least 1).
std::size_t default_bucket_count(std::size_t worker_count, std::size_t query_count);

struct QueryRun {
  QueryId query;
  std::vector<Operation> ops;

  friend bool operator==(const QueryRun&, const QueryRun&) = default;
};

/// Per-query runs (ascending query id), each merged per vertex and in
/// priority order: SSSP/BFS keep the minimum value, PPR sums residuals, RW
/// keeps every walker.
struct ConsolidatedBatch {
  std::vector<QueryRun> runs;
  std::size_t discarded = 0;

  friend bool operator==(const ConsolidatedBatch&, const ConsolidatedBatch&) = default;
};

enum class ConsolidationMethod : std::uint8_t { kSort, kScan };

/// One sort of the whole bucket by (query, vertex, value), then a merge.
ConsolidatedBatch consolidate_sort(std::span<const Operation> bucket, QueryKind kind);

/// |Q_bucket| scans of the bucket, one query per round.
ConsolidatedBatch consolidate_scan(std::span<const Operation> bucket, QueryKind kind,
                                   std::span<const QueryId> query_ids_in_bucket);

/// 64-bit FNV-1a digest over a batch, for cross-run comparison.
std::uint64_t batch_digest(const ConsolidatedBatch& batch, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace fpp
