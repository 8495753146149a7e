#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "fpp/operation.hpp"
#include "fpp/rng.hpp"
#include "fpp/types.hpp"

namespace fpp {

/// How the next partition is chosen among those with buffered operations.
///  - kRandom: uniform among live partitions (seeded)
///  - kFifo: order in which partitions became non-empty
///  - kMaxOperations: most buffered operations
///  - kBest: extremal buffered value (smallest distance / largest residual)
/// Ties always go to the smaller partition id.
struct PriorityFunctor {
  enum class Policy : std::uint8_t { kRandom, kFifo, kMaxOperations, kBest };

  Policy policy = Policy::kFifo;
  std::uint64_t seed = 0;

  static PriorityFunctor random(std::uint64_t seed) { return {Policy::kRandom, seed}; }
  static PriorityFunctor fifo() { return {Policy::kFifo, 0}; }
  static PriorityFunctor max_operations() { return {Policy::kMaxOperations, 0}; }
  static PriorityFunctor best() { return {Policy::kBest, 0}; }

  /// Accepts random|fifo|max-ops|priority.
  static PriorityFunctor parse(std::string_view text, std::uint64_t seed = 0);
  std::string_view name() const;

  friend bool operator==(const PriorityFunctor&, const PriorityFunctor&) = default;
};

/// Value-based partition priority: kBest returns the extremal operation
/// value, kMaxOperations the operation count. Throws std::invalid_argument
/// on an empty buffer or for kFifo / kRandom, whose priorities come from
/// queue state.
double partition_priority(std::span<const Operation> ops, const PriorityFunctor& functor,
                          QueryKind kind);

/// Lazy-deletion priority queue over partitions with buffered operations.
/// Each partition has at most one live key; superseded heap entries are
/// skipped on pop.
class SchedulerQueue {
 public:
  SchedulerQueue(std::size_t partition_count, PriorityFunctor functor, QueryKind kind);

  /// Called after operations were appended to `partition`. `best_value` is
  /// the best value among the appended operations and `buffered_ops` the
  /// buffer's size after the append.
  void notify_append(PartitionId partition, double best_value, std::size_t buffered_ops);

  /// Removes and returns the partition to process next; nullopt once no
  /// partition is live.
  std::optional<PartitionId> schedule_next();

  bool live(PartitionId partition) const { return slots_[partition].live; }
  bool empty() const { return live_count_ == 0; }
  std::size_t live_count() const { return live_count_; }
  /// Current key of a live partition, in the functor's natural units
  /// (value, count, or arrival number).
  std::optional<double> priority(PartitionId partition) const;

  const PriorityFunctor& functor() const { return functor_; }

 private:
  struct Slot {
    bool live = false;
    double key = 0;  // smaller is better
    std::uint64_t version = 0;
  };
  using Entry = std::tuple<double, PartitionId, std::uint64_t>;

  void set_key(PartitionId partition, double key);

  PriorityFunctor functor_;
  QueryKind kind_;
  std::vector<Slot> slots_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
  std::size_t live_count_ = 0;
  std::uint64_t arrivals_ = 0;
  SplitMix64 rng_;
};

}  // namespace fpp
