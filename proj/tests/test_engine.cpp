#include <gtest/gtest.h>

#include <numeric>

#include "fpp/apps.hpp"
#include "fpp/bench.hpp"
#include "fpp/engine.hpp"
#include "fpp/generators.hpp"
#include "oracles.hpp"

namespace fpp {
namespace {

EngineConfig config_with(PriorityFunctor functor, YieldPolicy yield, std::size_t workers = 1) {
  EngineConfig c;
  c.functor = functor;
  c.yield = yield;
  c.worker_count = workers;
  return c;
}

TEST(Engine, SingleQuerySinglePartition) {
  const Graph g = generate_random(200, 1600, 11);
  const auto parts = build_partitions(g, PartitionPlan(std::vector<PartitionId>(200, 0), 1));
  const std::vector<VertexId> sources{17};
  const auto run = run_queries(g, parts, QuerySpec::sssp(), sources, EngineConfig{});
  EXPECT_EQ(run.states[0].labels, oracle::bellman_ford(g, 17));
  EXPECT_EQ(run.metrics.partition_visits, 1u);
  EXPECT_EQ(run.metrics.scheduling_steps, 1u);
  EXPECT_TRUE(run.states[0].done);
}

// Eight vertices in four partitions of two. Sources sit in P1 and P3, and
// processing P3 first sends both of its cut edges to P0.
class FourPartitions : public ::testing::Test {
 protected:
  FourPartitions() {
    const std::vector<Edge> edges{{2, 3, 1}, {6, 7, 1}, {6, 0, 2}, {7, 1, 5}, {3, 6, 4}, {0, 4, 1}};
    graph = Graph::from_edges(8, edges, true);
    plan = PartitionPlan({0, 0, 1, 1, 2, 2, 3, 3}, 4);
    parts = build_partitions(graph, plan);
    states = {QueryState::make(0, QuerySpec::sssp(), 2, 8), QueryState::make(1, QuerySpec::sssp(), 6, 8)};
  }
  Graph graph;
  PartitionPlan plan;
  std::vector<Partition> parts;
  std::vector<QueryState> states;
};

TEST_F(FourPartitions, SeedsAndFirstPassRouting) {
  BufferSet buffers = init_buffers(plan, states, 2);
  EXPECT_EQ(buffers[1].size(), 1u);
  EXPECT_EQ(buffers[3].size(), 1u);
  EXPECT_EQ(buffers[0].size() + buffers[2].size(), 0u);

  SchedulerQueue queue(4, PriorityFunctor::fifo(), QueryKind::kSssp);
  auto buckets = buffers[3].drain();
  const auto batch = consolidate_sort(buckets[1], QueryKind::kSssp);
  Outboxes outboxes(4);
  const auto pass = process_partition_pass(parts[3], batch, states, YieldPolicy::none(), 2,
                                           outboxes, 1);
  EXPECT_EQ(pass.edges_processed, 3u);  // 6->7, 6->0, 7->1
  EXPECT_EQ(outboxes.by_target[0],
            (std::vector<Operation>{{1, 0, 2.0}, {1, 1, 6.0}}));
  EXPECT_TRUE(outboxes.by_target[1].empty());
  EXPECT_EQ(flush_outboxes(outboxes, buffers, queue, QueryKind::kSssp), 2u);
  EXPECT_TRUE(outboxes.empty());
  EXPECT_EQ(buffers[0].size(), 2u);
  EXPECT_EQ(queue.schedule_next(), 0u);
}

TEST_F(FourPartitions, FullRunMatchesOracle) {
  BufferSet buffers = init_buffers(plan, states, 1);
  const auto metrics = run_fpp(graph, parts, buffers, states, EngineConfig{});
  EXPECT_EQ(states[0].labels, oracle::bellman_ford(graph, 2));
  EXPECT_EQ(states[1].labels, oracle::bellman_ford(graph, 6));
  EXPECT_EQ(buffers.total_size(), 0u);
  EXPECT_EQ(metrics.ops_appended, metrics.ops_discarded_by_consolidation +
                                      metrics.ops_filtered_stale + metrics.ops_executed);
}

TEST(Engine, FlushOrderIndependentOfPushOrder) {
  auto plan = PartitionPlan({0, 1, 2}, 3);
  auto run_with = [&](bool reversed) {
    std::vector<QueryState> qs{QueryState::make(0, QuerySpec::sssp(), 0, 3)};
    BufferSet buffers = init_buffers(plan, qs, 1);
    buffers[0].drain();
    SchedulerQueue queue(3, PriorityFunctor::fifo(), QueryKind::kSssp);
    Outboxes outboxes(3);
    if (reversed) {
      outboxes.push(2, {0, 2, 1.0});
      outboxes.push(1, {0, 1, 1.0});
    } else {
      outboxes.push(1, {0, 1, 1.0});
      outboxes.push(2, {0, 2, 1.0});
    }
    flush_outboxes(outboxes, buffers, queue, QueryKind::kSssp);
    return std::vector<PartitionId>{*queue.schedule_next(), *queue.schedule_next()};
  };
  EXPECT_EQ(run_with(false), run_with(true));
  EXPECT_EQ(run_with(false), (std::vector<PartitionId>{1, 2}));
}

TEST(Engine, ManyQueriesEveryFunctorAndYieldMatchOracle) {
  const Graph g = generate_lattice(24, 24, 5);
  const auto parts = build_partitions(g, lattice_block_plan(24, 24, 4, 4));
  const auto sources = sample_vertices(g.vertex_count(), 64, 3);
  const auto baseline = compute_baseline(g, QuerySpec::sssp(), sources);
  for (const auto* functor : {"priority", "fifo", "random", "max-ops"}) {
    for (const auto* yield : {"none", "edges:0.25", "edges:2", "band:4"}) {
      const auto run = run_queries(g, parts, QuerySpec::sssp(), sources,
                                   config_with(PriorityFunctor::parse(functor, 9),
                                               YieldPolicy::parse(yield)));
      EXPECT_TRUE(matches_oracle(g, run.states, baseline)) << functor << " " << yield;
      const auto& m = run.metrics;
      EXPECT_EQ(m.ops_appended, m.ops_discarded_by_consolidation + m.ops_filtered_stale +
                                    m.ops_executed)
          << functor << " " << yield;
      std::uint64_t per_query_edges = 0;
      for (const auto& q : m.per_query) per_query_edges += q.edges_processed;
      EXPECT_EQ(per_query_edges, m.edges_processed);
      if (std::string(yield) == "none") EXPECT_EQ(m.yields, 0u);
    }
  }
}

TEST(Engine, PprAndRwMatchOracle) {
  const Graph g = generate_power_law(600, 3, 8);
  const auto parts = build_partitions(g, partition_random(g, 6, 1));
  const auto sources = sample_vertices(g.vertex_count(), 16, 4);
  for (const auto& spec : {QuerySpec::ppr(0.15, 1e-5), QuerySpec::rw(30, 12), QuerySpec::bfs()}) {
    const auto baseline = compute_baseline(g, spec, sources);
    for (const auto* yield : {"none", "edges:1"}) {
      const auto run = run_queries(g, parts, spec, sources,
                                   config_with(PriorityFunctor::best(), YieldPolicy::parse(yield)));
      EXPECT_TRUE(matches_oracle(g, run.states, baseline)) << to_string(spec.kind) << " " << yield;
    }
  }
}

TEST(Engine, YieldedRunStaysWithinBudgetSlack) {
  const Graph g = generate_lattice(30, 30, 2);
  const auto parts = build_partitions(g, lattice_block_plan(30, 30, 3, 3));
  const auto sources = sample_vertices(g.vertex_count(), 8, 1);
  const auto run = run_queries(g, parts, QuerySpec::sssp(), sources,
                               config_with(PriorityFunctor::best(), YieldPolicy::edge_budget(0.5)));
  EXPECT_GT(run.metrics.yields, 0u);
  EXPECT_EQ(run.states[0].labels, oracle::bellman_ford(g, sources[0]));
}

TEST(Engine, AllStaleOperationsDoNoWork) {
  const std::vector<Edge> edges{{0, 1, 1}};
  const Graph g = Graph::from_edges(2, edges, true);
  const PartitionPlan plan({0, 1}, 2);
  const auto parts = build_partitions(g, plan);
  std::vector<QueryState> qs{QueryState::make(0, QuerySpec::sssp(), 0, 2)};
  BufferSet buffers = init_buffers(plan, qs, 1);
  // a worse distance for vertex 1 is already known
  qs[0].labels[1] = 0.5;
  const auto m = run_fpp(g, parts, buffers, qs, EngineConfig{});
  EXPECT_EQ(qs[0].labels[1], 0.5);
  EXPECT_EQ(m.ops_executed, 1u);
  EXPECT_EQ(m.edges_processed, 1u);
  EXPECT_EQ(m.partition_visits, 1u);
}

TEST(Engine, WorkRatio) {
  RunMetrics m;
  m.edges_processed = 1000;
  EXPECT_DOUBLE_EQ(compute_work_ratio(m, 100), 10.0);
  EXPECT_THROW(compute_work_ratio(m, 0), std::invalid_argument);
}

TEST(Engine, RejectsMixedKindsAndBadIds) {
  const Graph g = generate_random(10, 30, 1);
  const PartitionPlan plan(std::vector<PartitionId>(10, 0), 1);
  const auto parts = build_partitions(g, plan);
  std::vector<QueryState> mixed{QueryState::make(0, QuerySpec::sssp(), 0, 10),
                                QueryState::make(1, QuerySpec::bfs(), 1, 10)};
  BufferSet buffers = init_buffers(plan, mixed, 1);
  EXPECT_THROW(run_fpp(g, parts, buffers, mixed, EngineConfig{}), std::invalid_argument);
  std::vector<QueryState> bad_id{QueryState::make(3, QuerySpec::sssp(), 0, 10)};
  BufferSet b2 = init_buffers(plan, bad_id, 1);
  EXPECT_THROW(run_fpp(g, parts, b2, bad_id, EngineConfig{}), std::invalid_argument);
  EngineConfig zero_workers;
  zero_workers.worker_count = 0;
  EXPECT_THROW(zero_workers.validate(), std::invalid_argument);
}

TEST(Engine, DeterministicAcrossWorkerCounts) {
  const Graph g = generate_random(2000, 16000, 21);
  const auto parts = build_partitions(g, partition_random(g, 8, 3));
  const auto sources = sample_vertices(g.vertex_count(), 32, 5);
  for (const auto& spec : {QuerySpec::sssp(), QuerySpec::ppr(0.15, 1e-5)}) {
    EngineConfig one = config_with(PriorityFunctor::best(), YieldPolicy::edge_budget(2.0), 1);
    one.bucket_count = 8;
    one.record_passes = true;
    EngineConfig eight = one;
    eight.worker_count = 8;
    const auto a = run_queries(g, parts, spec, sources, one);
    const auto b = run_queries(g, parts, spec, sources, eight);
    for (std::size_t q = 0; q < sources.size(); ++q) {
      EXPECT_EQ(a.states[q].labels, b.states[q].labels);
      EXPECT_EQ(a.states[q].residual, b.states[q].residual);
    }
    EXPECT_EQ(a.metrics.passes, b.metrics.passes);
    EXPECT_EQ(a.metrics.run_digest, b.metrics.run_digest);
    EXPECT_EQ(a.metrics.edges_processed, b.metrics.edges_processed);
  }
}

TEST(Engine, SortAndScanConsolidationRunIdentically) {
  const Graph g = generate_lattice(20, 20, 4);
  const auto parts = build_partitions(g, lattice_block_plan(20, 20, 4, 4));
  const auto sources = sample_vertices(g.vertex_count(), 12, 2);
  EngineConfig sort = config_with(PriorityFunctor::fifo(), YieldPolicy::none());
  sort.bucket_count = 3;
  EngineConfig scan = sort;
  scan.consolidation = ConsolidationMethod::kScan;
  const auto a = run_queries(g, parts, QuerySpec::sssp(), sources, sort);
  const auto b = run_queries(g, parts, QuerySpec::sssp(), sources, scan);
  EXPECT_EQ(a.metrics, b.metrics);
}

}  // namespace
}  // namespace fpp
