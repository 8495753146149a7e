#include "fpp/scheduler.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fpp {

PriorityFunctor PriorityFunctor::parse(std::string_view text, std::uint64_t seed) {
  if (text == "random") return random(seed);
  if (text == "fifo") return fifo();
  if (text == "max-ops") return max_operations();
  if (text == "priority") return best();
  throw std::invalid_argument("unknown scheduler '" + std::string(text) +
                              "' (expected random|fifo|max-ops|priority)");
}

std::string_view PriorityFunctor::name() const {
  switch (policy) {
    case Policy::kRandom: return "random";
    case Policy::kFifo: return "fifo";
    case Policy::kMaxOperations: return "max-ops";
    case Policy::kBest: return "priority";
  }
  return "unknown";
}

double partition_priority(std::span<const Operation> ops, const PriorityFunctor& functor,
                          QueryKind kind) {
  if (ops.empty()) throw std::invalid_argument("partition priority of an empty buffer");
  switch (functor.policy) {
    case PriorityFunctor::Policy::kBest: {
      double best = ops.front().value;
      for (const Operation& op : ops) {
        if (better_value(kind, op.value, best)) best = op.value;
      }
      return best;
    }
    case PriorityFunctor::Policy::kMaxOperations:
      return static_cast<double>(ops.size());
    default:
      throw std::invalid_argument("scheduler '" + std::string(functor.name()) +
                                  "' has no value-based priority");
  }
}

SchedulerQueue::SchedulerQueue(std::size_t partition_count, PriorityFunctor functor, QueryKind kind)
    : functor_(functor), kind_(kind), slots_(partition_count), rng_(functor.seed) {}

void SchedulerQueue::set_key(PartitionId partition, double key) {
  Slot& slot = slots_[partition];
  if (!slot.live) {
    slot.live = true;
    ++live_count_;
  }
  slot.key = key;
  ++slot.version;
  if (functor_.policy != PriorityFunctor::Policy::kRandom) heap_.emplace(key, partition, slot.version);
}

void SchedulerQueue::notify_append(PartitionId partition, double best_value,
                                   std::size_t buffered_ops) {
  if (partition >= slots_.size()) throw std::out_of_range("partition id out of range");
  const Slot& slot = slots_[partition];
  switch (functor_.policy) {
    case PriorityFunctor::Policy::kBest: {
      const double key = prefers_smaller(kind_) ? best_value : -best_value;
      if (!slot.live || key < slot.key) set_key(partition, key);
      break;
    }
    case PriorityFunctor::Policy::kMaxOperations: {
      const double key = -static_cast<double>(buffered_ops);
      if (!slot.live || key != slot.key) set_key(partition, key);
      break;
    }
    case PriorityFunctor::Policy::kFifo:
      if (!slot.live) set_key(partition, static_cast<double>(arrivals_++));
      break;
    case PriorityFunctor::Policy::kRandom:
      if (!slot.live) set_key(partition, 0.0);
      break;
  }
}

std::optional<PartitionId> SchedulerQueue::schedule_next() {
  if (live_count_ == 0) return std::nullopt;
  PartitionId chosen = 0;
  if (functor_.policy == PriorityFunctor::Policy::kRandom) {
    std::uint64_t pick = rng_.below(live_count_);
    for (PartitionId p = 0; p < slots_.size(); ++p) {
      if (slots_[p].live && pick-- == 0) {
        chosen = p;
        break;
      }
    }
  } else {
    for (;;) {
      const auto [key, p, version] = heap_.top();
      heap_.pop();
      if (slots_[p].live && slots_[p].version == version) {
        chosen = p;
        break;
      }
    }
  }
  slots_[chosen].live = false;
  ++slots_[chosen].version;
  --live_count_;
  return chosen;
}

std::optional<double> SchedulerQueue::priority(PartitionId partition) const {
  const Slot& slot = slots_.at(partition);
  if (!slot.live) return std::nullopt;
  switch (functor_.policy) {
    case PriorityFunctor::Policy::kBest:
      return prefers_smaller(kind_) ? slot.key : -slot.key;
    case PriorityFunctor::Policy::kMaxOperations:
      return -slot.key;
    default:
      return slot.key;
  }
}

}  // namespace fpp
