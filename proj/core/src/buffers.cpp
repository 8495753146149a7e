#include "fpp/buffers.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

namespace fpp {

PartitionBuffer::PartitionBuffer(PartitionId id, std::shared_ptr<const PartitionPlan> plan,
                                 std::size_t bucket_count)
    : id_(id), plan_(std::move(plan)) {
  if (bucket_count == 0) throw std::invalid_argument("bucket count must be >= 1");
  buckets_.reserve(bucket_count);
  for (std::size_t k = 0; k < bucket_count; ++k) buckets_.push_back(std::make_unique<Bucket>());
}

void PartitionBuffer::append(std::span<const Operation> ops) {
  if (ops.empty()) return;
  for (const Operation& op : ops) {
    if (op.vertex >= plan_->vertex_count() || (*plan_)[op.vertex] != id_) {
      throw std::invalid_argument("operation for vertex " + std::to_string(op.vertex) +
                                  " routed to partition " + std::to_string(id_));
    }
  }
  const std::size_t k = buckets_.size();
  if (k == 1) {
    append_to_bucket(*buckets_[0], ops);
    return;
  }
  // counting sort by bucket keeps each caller's order within a bucket
  std::vector<std::size_t> start(k + 1, 0);
  for (const Operation& op : ops) ++start[bucket_of(op.query) + 1];
  for (std::size_t b = 0; b < k; ++b) start[b + 1] += start[b];
  std::vector<Operation> grouped(ops.size());
  std::vector<std::size_t> cursor(start.begin(), start.end() - 1);
  for (const Operation& op : ops) grouped[cursor[bucket_of(op.query)]++] = op;
  for (std::size_t b = 0; b < k; ++b) {
    if (start[b + 1] > start[b]) {
      append_to_bucket(*buckets_[b], std::span(grouped).subspan(start[b], start[b + 1] - start[b]));
    }
  }
}

void PartitionBuffer::append_to_bucket(Bucket& bucket, std::span<const Operation> ops) {
  std::shared_lock shared(bucket.grow);
  const std::size_t first = bucket.size.fetch_add(ops.size(), std::memory_order_acq_rel);
  const std::size_t last = first + ops.size();
  if (last > bucket.capacity) {
    shared.unlock();
    {
      std::unique_lock exclusive(bucket.grow);
      if (last > bucket.capacity) {
        const std::size_t capacity = std::max({last, 2 * bucket.capacity, std::size_t{16}});
        auto data = std::make_unique<Operation[]>(capacity);
        if (bucket.capacity > 0) std::copy_n(bucket.data.get(), bucket.capacity, data.get());
        bucket.data = std::move(data);
        bucket.capacity = capacity;
      }
    }
    shared.lock();
  }
  std::copy(ops.begin(), ops.end(), bucket.data.get() + first);
}

std::vector<std::vector<Operation>> PartitionBuffer::drain() {
  std::vector<std::vector<Operation>> out(buckets_.size());
  for (std::size_t b = 0; b < buckets_.size(); ++b) {
    Bucket& bucket = *buckets_[b];
    const std::size_t n = bucket.size.exchange(0, std::memory_order_acq_rel);
    if (n > 0) out[b].assign(bucket.data.get(), bucket.data.get() + n);
  }
  return out;
}

std::size_t PartitionBuffer::size() const {
  std::size_t total = 0;
  for (const auto& bucket : buckets_) total += bucket->size.load(std::memory_order_acquire);
  return total;
}

std::span<const Operation> PartitionBuffer::bucket(std::size_t k) const {
  const Bucket& b = *buckets_.at(k);
  return {b.data.get(), b.size.load(std::memory_order_acquire)};
}

BufferSet::BufferSet(std::shared_ptr<const PartitionPlan> plan, std::size_t bucket_count)
    : plan_(std::move(plan)), bucket_count_(bucket_count) {
  buffers_.reserve(plan_->partition_count());
  for (std::size_t p = 0; p < plan_->partition_count(); ++p) {
    buffers_.push_back(
        std::make_unique<PartitionBuffer>(static_cast<PartitionId>(p), plan_, bucket_count));
  }
}

std::size_t BufferSet::total_size() const {
  std::size_t total = 0;
  for (const auto& b : buffers_) total += b->size();
  return total;
}

BufferSet init_buffers(const PartitionPlan& plan, std::span<const QueryState> queries,
                       std::size_t bucket_count) {
  BufferSet buffers(std::make_shared<const PartitionPlan>(plan), bucket_count);
  for (const QueryState& q : queries) {
    if (q.source >= plan.vertex_count()) {
      throw std::invalid_argument("query " + std::to_string(q.id) + " source " +
                                  std::to_string(q.source) + " is not in any partition");
    }
    const Operation seed = seed_operation(q.spec, q.id, q.source);
    buffers[plan[q.source]].append(std::span(&seed, 1));
  }
  return buffers;
}

std::size_t default_bucket_count(std::size_t worker_count, std::size_t query_count) {
  const std::size_t k = std::max<std::size_t>(4 * worker_count, 1);
  return std::max<std::size_t>(1, std::min(k, query_count));
}

namespace {

bool vertex_value_less(const Operation& a, const Operation& b) {
  return std::tie(a.vertex, a.value) < std::tie(b.vertex, b.value);
}

// `ops` holds one query's operations sorted by (vertex, value). Merges each
// vertex's group, orders by priority, and returns the number merged away.
std::size_t merge_run(std::vector<Operation>& ops, QueryKind kind) {
  if (kind == QueryKind::kRw) {
    std::sort(ops.begin(), ops.end(),
              [kind](const Operation& a, const Operation& b) { return runs_before(kind, a, b); });
    return 0;
  }
  std::size_t out = 0;
  for (std::size_t i = 0; i < ops.size();) {
    std::size_t j = i;
    Operation merged = ops[i];
    while (++j < ops.size() && ops[j].vertex == merged.vertex) {
      if (kind == QueryKind::kPpr) merged.value += ops[j].value;
      // SSSP/BFS: group is value-ascending, the first is the minimum
    }
    ops[out++] = merged;
    i = j;
  }
  const std::size_t discarded = ops.size() - out;
  ops.resize(out);
  std::sort(ops.begin(), ops.end(),
            [kind](const Operation& a, const Operation& b) { return runs_before(kind, a, b); });
  return discarded;
}

template <typename T>
void fnv_mix(std::uint64_t& h, const T& value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
}

}  // namespace

ConsolidatedBatch consolidate_sort(std::span<const Operation> bucket, QueryKind kind) {
  std::vector<Operation> ops(bucket.begin(), bucket.end());
  std::sort(ops.begin(), ops.end(), [](const Operation& a, const Operation& b) {
    return std::tie(a.query, a.vertex, a.value) < std::tie(b.query, b.vertex, b.value);
  });
  ConsolidatedBatch batch;
  for (std::size_t i = 0; i < ops.size();) {
    std::size_t j = i;
    while (j < ops.size() && ops[j].query == ops[i].query) ++j;
    QueryRun run{ops[i].query, std::vector<Operation>(ops.begin() + i, ops.begin() + j)};
    batch.discarded += merge_run(run.ops, kind);
    batch.runs.push_back(std::move(run));
    i = j;
  }
  return batch;
}

ConsolidatedBatch consolidate_scan(std::span<const Operation> bucket, QueryKind kind,
                                   std::span<const QueryId> query_ids_in_bucket) {
  std::vector<QueryId> queries(query_ids_in_bucket.begin(), query_ids_in_bucket.end());
  std::sort(queries.begin(), queries.end());
  queries.erase(std::unique(queries.begin(), queries.end()), queries.end());
  ConsolidatedBatch batch;
  std::size_t collected = 0;
  for (QueryId q : queries) {
    QueryRun run{q, {}};
    for (const Operation& op : bucket) {
      if (op.query == q) run.ops.push_back(op);
    }
    if (run.ops.empty()) continue;
    collected += run.ops.size();
    std::sort(run.ops.begin(), run.ops.end(), vertex_value_less);
    batch.discarded += merge_run(run.ops, kind);
    batch.runs.push_back(std::move(run));
  }
  if (collected != bucket.size()) {
    throw std::invalid_argument("bucket holds operations of queries not listed for the scan");
  }
  return batch;
}

std::uint64_t batch_digest(const ConsolidatedBatch& batch, std::uint64_t seed) {
  std::uint64_t h = seed;
  fnv_mix(h, batch.discarded);
  for (const QueryRun& run : batch.runs) {
    fnv_mix(h, run.query);
    fnv_mix(h, run.ops.size());
    for (const Operation& op : run.ops) {
      fnv_mix(h, op.vertex);
      fnv_mix(h, std::bit_cast<std::uint64_t>(op.value));
    }
  }
  return h;
}

}  // namespace fpp
