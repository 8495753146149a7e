#include "fpp/kernels.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

#include "fpp/rng.hpp"

namespace fpp {

namespace {

using HeapEntry = std::pair<double, VertexId>;

// Binary heap over per-thread storage reused across kernel calls.
template <typename Compare>
class ScratchHeap {
 public:
  ScratchHeap() : c_(storage()) { c_.clear(); }
  bool empty() const { return c_.empty(); }
  const HeapEntry& top() const { return c_.front(); }
  void emplace(double value, VertexId v) {
    c_.emplace_back(value, v);
    std::push_heap(c_.begin(), c_.end(), Compare{});
  }
  void pop() {
    std::pop_heap(c_.begin(), c_.end(), Compare{});
    c_.pop_back();
  }

 private:
  static std::vector<HeapEntry>& storage() {
    thread_local std::vector<HeapEntry> c;
    return c;
  }
  std::vector<HeapEntry>& c_;
};

using MinHeap = ScratchHeap<std::greater<>>;

void check_source(const Graph& graph, VertexId source) {
  if (source >= graph.vertex_count()) {
    throw std::out_of_range("source vertex " + std::to_string(source) + " out of range");
  }
}

bool needs_push(double residual, std::size_t degree, double epsilon) {
  return residual > 0.0 && residual >= epsilon * static_cast<double>(degree);
}

// Max-heap on residual; ties go to the smaller vertex id.
struct ResidualOrder {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  }
};
using MaxHeap = ScratchHeap<ResidualOrder>;

// Per-thread vertex -> outbox slot map, cleared in O(1) by bumping the epoch.
struct VertexSlots {
  std::vector<std::uint32_t> stamp;
  std::vector<std::uint32_t> slot;
  std::uint32_t epoch = 0;

  static VertexSlots& begin(std::size_t vertex_count) {
    thread_local VertexSlots slots;
    if (slots.stamp.size() < vertex_count) {
      slots.stamp.resize(vertex_count, 0);
      slots.slot.resize(vertex_count);
    }
    if (++slots.epoch == 0) {
      std::fill(slots.stamp.begin(), slots.stamp.end(), 0);
      slots.epoch = 1;
    }
    return slots;
  }
};

// Remote operations emitted by one kernel call, one slot per target vertex.
class Outbox {
 public:
  explicit Outbox(std::size_t vertex_count) : slots_(VertexSlots::begin(vertex_count)) {}

  // SSSP/BFS: callers only send strict improvements, so the latest value wins.
  void put_min(PartitionId target, Operation op) {
    if (RoutedOperation* existing = find(op.vertex)) existing->op.value = op.value;
    else insert(target, op);
  }
  void add_mass(PartitionId target, Operation op) {
    if (RoutedOperation* existing = find(op.vertex)) existing->op.value += op.value;
    else insert(target, op);
  }
  void put(PartitionId target, Operation op) { ops_.push_back({target, op}); }
  std::vector<RoutedOperation> take() { return std::move(ops_); }

 private:
  RoutedOperation* find(VertexId v) {
    return slots_.stamp[v] == slots_.epoch ? &ops_[slots_.slot[v]] : nullptr;
  }
  void insert(PartitionId target, Operation op) {
    slots_.stamp[op.vertex] = slots_.epoch;
    slots_.slot[op.vertex] = static_cast<std::uint32_t>(ops_.size());
    ops_.push_back({target, op});
  }

  VertexSlots& slots_;
  std::vector<RoutedOperation> ops_;
};

void check_ops(const QueryState& state, const Partition& partition, std::span<const Operation> ops) {
  for (const Operation& op : ops) {
    if (op.query != state.id) {
      throw std::invalid_argument("operation for query " + std::to_string(op.query) +
                                  " passed to query " + std::to_string(state.id));
    }
    if (!partition.contains(op.vertex)) {
      throw std::invalid_argument("operation targets vertex " + std::to_string(op.vertex) +
                                  " outside partition " + std::to_string(partition.id()));
    }
  }
}

ComputeOutcome compute_distance(QueryState& state, const Partition& partition,
                                std::span<const Operation> ops, const YieldCheck& yield_check) {
  const bool unit = state.spec.kind == QueryKind::kBfs;
  const Graph& local = partition.local_csr();
  auto& label = state.labels;
  auto& pending = state.pending;
  ComputeOutcome out;
  Outbox outbox(label.size());
  MinHeap heap;

  for (const Operation& op : ops) {
    const VertexId v = op.vertex;
    if (op.value < label[v]) {
      label[v] = op.value;
      pending[v] = 1;
    } else if (!(op.value == label[v] && pending[v])) {
      ++out.ops_stale;
      continue;
    }
    ++out.ops_accepted;
    heap.emplace(op.value, v);
  }

  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    if (d != label[v] || !pending[v]) {
      heap.pop();
      continue;
    }
    if (out.expansions > 0 && yield_check(out.local_edges_processed, d)) {
      out.yielded = true;
      break;
    }
    heap.pop();
    pending[v] = 0;
    ++out.expansions;
    const VertexId lv = partition.local_index(v);
    for (EdgeIndex e = local.edge_begin(lv); e < local.edge_end(lv); ++e) {
      ++out.local_edges_processed;
      const VertexId w = partition.global_id(local.target_at(e));
      const double nd = d + (unit ? 1.0 : local.weight_at(e));
      if (nd < label[w]) {
        label[w] = nd;
        pending[w] = 1;
        heap.emplace(nd, w);
      }
    }
    for (const CutEdge& cut : partition.cut_edges(lv)) {
      ++out.local_edges_processed;
      const double nd = d + (unit ? 1.0 : cut.weight);
      if (nd < label[cut.target]) {
        label[cut.target] = nd;
        pending[cut.target] = 1;
        outbox.put_min(cut.target_partition, {state.id, cut.target, nd});
      }
    }
  }

  if (out.yielded) {
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d == label[v] && pending[v]) out.residual_local_ops.push_back({state.id, v, d});
    }
  }
  out.remote_ops = outbox.take();
  return out;
}

ComputeOutcome compute_ppr(QueryState& state, const Partition& partition,
                           std::span<const Operation> ops, const YieldCheck& yield_check) {
  const double alpha = state.spec.alpha;
  const double epsilon = state.spec.epsilon;
  const Graph& local = partition.local_csr();
  auto& p = state.labels;
  auto& r = state.residual;
  ComputeOutcome out;
  Outbox outbox(p.size());
  MaxHeap heap;

  for (const Operation& op : ops) {
    if (!(op.value > 0.0)) {
      ++out.ops_stale;
      continue;
    }
    ++out.ops_accepted;
    r[op.vertex] += op.value;
  }
  for (const Operation& op : ops) {
    const VertexId v = op.vertex;
    if (needs_push(r[v], partition.out_degree(partition.local_index(v)), epsilon)) {
      heap.emplace(r[v], v);
    }
  }

  while (!heap.empty()) {
    const auto [rv, v] = heap.top();
    const VertexId lv = partition.local_index(v);
    const std::size_t degree = partition.out_degree(lv);
    if (rv != r[v] || !needs_push(r[v], degree, epsilon)) {
      heap.pop();
      continue;
    }
    if (out.expansions > 0 && yield_check(out.local_edges_processed, rv)) {
      out.yielded = true;
      break;
    }
    heap.pop();
    ++out.expansions;
    const double mass = r[v];
    r[v] = 0.0;
    if (degree == 0) {
      p[v] += mass;
      continue;
    }
    p[v] += alpha * mass;
    const double share = (1.0 - alpha) * mass / static_cast<double>(degree);
    for (EdgeIndex e = local.edge_begin(lv); e < local.edge_end(lv); ++e) {
      ++out.local_edges_processed;
      const VertexId w = partition.global_id(local.target_at(e));
      r[w] += share;
      if (needs_push(r[w], partition.out_degree(local.target_at(e)), epsilon)) {
        heap.emplace(r[w], w);
      }
    }
    for (const CutEdge& cut : partition.cut_edges(lv)) {
      ++out.local_edges_processed;
      outbox.add_mass(cut.target_partition, {state.id, cut.target, share});
    }
  }

  if (out.yielded) {
    // Move the unpushed residuals into operations; r[v] = 0 afterwards makes
    // duplicate heap entries fail the rv == r[v] test.
    while (!heap.empty()) {
      const auto [rv, v] = heap.top();
      heap.pop();
      if (rv == r[v] && rv > 0.0) {
        out.residual_local_ops.push_back({state.id, v, rv});
        r[v] = 0.0;
      }
    }
  }
  out.remote_ops = outbox.take();
  return out;
}

ComputeOutcome compute_walk(QueryState& state, const Partition& partition,
                            std::span<const Operation> ops) {
  ComputeOutcome out;
  Outbox outbox(0);
  const std::uint32_t length = state.spec.walk_length;
  for (const Operation& op : ops) {
    ++out.ops_accepted;
    VertexId v = op.vertex;
    auto remaining = static_cast<std::uint32_t>(op.value);
    while (remaining > 0) {
      const VertexId lv = partition.local_index(v);
      const std::size_t degree = partition.out_degree(lv);
      if (degree == 0) {
        remaining = 0;
        break;
      }
      const std::uint64_t step = length - remaining;
      const OrderedEdge edge = partition.out_edge(lv, walk_choice(state.spec.rng_seed, step, degree));
      ++out.local_edges_processed;
      ++out.expansions;
      --remaining;
      state.walk.push_back(edge.target);
      v = edge.target;
      if (edge.remote) {
        if (remaining > 0) {
          outbox.put(edge.target_partition, {state.id, v, static_cast<double>(remaining)});
        }
        break;
      }
    }
    if (remaining == 0) state.done = true;
  }
  out.remote_ops = outbox.take();
  return out;
}

}  // namespace

DistanceResult sssp_oracle(const Graph& graph, VertexId source) {
  check_source(graph, source);
  DistanceResult result;
  auto& dist = result.labels;
  dist.assign(graph.vertex_count(), kInfinity);
  std::vector<std::uint8_t> settled(graph.vertex_count(), 0);
  MinHeap heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u] || d != dist[u]) continue;
    settled[u] = 1;
    for (EdgeIndex e = graph.edge_begin(u); e < graph.edge_end(u); ++e) {
      ++result.edges_processed;
      const VertexId v = graph.target_at(e);
      const double nd = d + graph.weight_at(e);
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.emplace(nd, v);
      }
    }
  }
  return result;
}

DistanceResult bfs_oracle(const Graph& graph, VertexId source) {
  check_source(graph, source);
  DistanceResult result;
  auto& level = result.labels;
  level.assign(graph.vertex_count(), kInfinity);
  std::deque<VertexId> frontier{source};
  level[source] = 0.0;
  while (!frontier.empty()) {
    const VertexId u = frontier.front();
    frontier.pop_front();
    for (VertexId v : graph.neighbors(u)) {
      ++result.edges_processed;
      if (level[v] == kInfinity) {
        level[v] = level[u] + 1.0;
        frontier.push_back(v);
      }
    }
  }
  return result;
}

PprResult ppr_oracle(const Graph& graph, VertexId source, double alpha, double epsilon) {
  check_source(graph, source);
  QuerySpec::ppr(alpha, epsilon).validate();
  PprResult result;
  result.p.assign(graph.vertex_count(), 0.0);
  result.r.assign(graph.vertex_count(), 0.0);
  auto& p = result.p;
  auto& r = result.r;
  r[source] = 1.0;
  MaxHeap heap;
  heap.emplace(1.0, source);
  while (!heap.empty()) {
    const auto [rv, v] = heap.top();
    heap.pop();
    const std::size_t degree = graph.degree(v);
    if (rv != r[v] || !needs_push(rv, degree, epsilon)) continue;
    r[v] = 0.0;
    if (degree == 0) {
      p[v] += rv;
      continue;
    }
    p[v] += alpha * rv;
    const double share = (1.0 - alpha) * rv / static_cast<double>(degree);
    for (VertexId u : graph.neighbors(v)) {
      ++result.edges_processed;
      r[u] += share;
      if (needs_push(r[u], graph.degree(u), epsilon)) heap.emplace(r[u], u);
    }
  }
  return result;
}

std::size_t walk_choice(std::uint64_t rng_seed, std::uint64_t step, std::size_t degree) {
  return static_cast<std::size_t>(bounded(counter_draw(rng_seed, step), degree));
}

std::vector<VertexId> rw_oracle(const Graph& graph, VertexId source, std::uint32_t walk_length,
                                std::uint64_t rng_seed) {
  check_source(graph, source);
  std::vector<VertexId> walk{source};
  VertexId v = source;
  for (std::uint32_t step = 0; step < walk_length; ++step) {
    const std::size_t degree = graph.degree(v);
    if (degree == 0) break;
    v = graph.neighbors(v)[walk_choice(rng_seed, step, degree)];
    walk.push_back(v);
  }
  return walk;
}

QueryState QueryState::make(QueryId id, const QuerySpec& spec, VertexId source,
                            std::size_t vertex_count) {
  spec.validate();
  if (source >= vertex_count) {
    throw std::out_of_range("source vertex " + std::to_string(source) + " out of range");
  }
  QueryState state;
  state.id = id;
  state.spec = spec;
  state.source = source;
  switch (spec.kind) {
    case QueryKind::kSssp:
    case QueryKind::kBfs:
      state.labels.assign(vertex_count, kInfinity);
      state.pending.assign(vertex_count, 0);
      break;
    case QueryKind::kPpr:
      state.labels.assign(vertex_count, 0.0);
      state.residual.assign(vertex_count, 0.0);
      break;
    case QueryKind::kRw:
      state.walk.push_back(source);
      state.done = spec.walk_length == 0;
      break;
  }
  return state;
}

ComputeOutcome compute_in_partition(QueryState& state, const Partition& partition,
                                    std::span<const Operation> ops, const YieldCheck& yield_check) {
  check_ops(state, partition, ops);
  ComputeOutcome out;
  switch (state.spec.kind) {
    case QueryKind::kSssp:
    case QueryKind::kBfs:
      out = compute_distance(state, partition, ops, yield_check);
      break;
    case QueryKind::kPpr:
      out = compute_ppr(state, partition, ops, yield_check);
      break;
    case QueryKind::kRw:
      out = compute_walk(state, partition, ops);
      break;
  }
  state.edges_processed += out.local_edges_processed;
  return out;
}

}  // namespace fpp
