#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "fpp/apps.hpp"
#include "fpp/bench.hpp"
#include "fpp/generators.hpp"
#include "oracles.hpp"

namespace fpp {
namespace {

BenchWorkload small_lattice(std::uint64_t seed) {
  BenchWorkload w;
  w.name = "lattice16";
  w.graph = generate_lattice(16, 16, seed);
  w.partitions = build_partitions(w.graph, lattice_block_plan(16, 16, 4, 4));
  w.spec = QuerySpec::sssp();
  w.sources = sample_vertices(w.graph.vertex_count(), 16, seed);
  return w;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

TEST(Baseline, SsspEdgesSumOverQueries) {
  const Graph g = generate_random(300, 2400, 2);
  const auto sources = sample_vertices(300, 5, 1);
  const auto base = compute_baseline(g, QuerySpec::sssp(), sources, 2);
  ASSERT_EQ(base.distances.size(), 5u);
  std::uint64_t edges = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(base.distances[i].labels, oracle::bellman_ford(g, sources[i]));
    edges += base.distances[i].edges_processed;
  }
  EXPECT_EQ(base.edges, edges);
}

TEST(Baseline, MatchesOracleRejectsWrongLabels) {
  const Graph g = generate_random(100, 500, 3);
  const std::vector<VertexId> sources{4};
  const auto base = compute_baseline(g, QuerySpec::sssp(), sources);
  const auto parts = build_partitions(g, partition_random(g, 4, 1));
  auto run = run_queries(g, parts, QuerySpec::sssp(), sources, EngineConfig{});
  EXPECT_TRUE(matches_oracle(g, run.states, base));
  run.states[0].labels[7] += 1.0;
  EXPECT_FALSE(matches_oracle(g, run.states, base));
}

TEST(NaiveConcurrent, EqualsOracle) {
  const Graph g = generate_power_law(300, 3, 5, true);
  const auto sources = sample_vertices(300, 8, 2);
  const auto naive = run_naive_concurrent(g, QuerySpec::sssp(), sources, 4);
  const auto base = compute_baseline(g, QuerySpec::sssp(), sources);
  for (std::size_t i = 0; i < sources.size(); ++i) EXPECT_EQ(naive.labels[i], base.distances[i].labels);
  EXPECT_EQ(naive.edges_processed, base.edges);
  const auto walks = run_naive_concurrent(g, QuerySpec::rw(20, 3), sources, 2);
  for (std::size_t i = 0; i < sources.size(); ++i) EXPECT_EQ(walks.walks[i], rw_oracle(g, sources[i], 20, 3));
}

TEST(RunCell, CorrectAndRatio) {
  const auto w = small_lattice(1);
  const auto base = compute_baseline(w.graph, w.spec, w.sources);
  EngineConfig cfg;
  cfg.functor = PriorityFunctor::best();
  const auto cell = run_cell(w, base, cfg, 1);
  EXPECT_TRUE(cell.correct);
  EXPECT_EQ(cell.oracle_edges, base.edges);
  EXPECT_DOUBLE_EQ(cell.work_ratio, static_cast<double>(cell.metrics.edges_processed) /
                                        static_cast<double>(base.edges));
  EXPECT_EQ(cell.functor, "priority");
  EXPECT_EQ(cell.yield, "none");
}

TEST(SchedulerSweep, RowsPerSeedAndSummary) {
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const std::vector<PriorityFunctor> functors{PriorityFunctor::best(), PriorityFunctor::fifo(),
                                              PriorityFunctor::random(0),
                                              PriorityFunctor::max_operations()};
  const auto report = bench_schedulers(small_lattice, seeds, YieldPolicy::none(), functors);
  ASSERT_EQ(report.cells.size(), 12u);
  for (const auto& c : report.cells) EXPECT_TRUE(c.correct) << c.functor << " seed " << c.seed;
  const auto summary = summarize_schedulers(report);
  EXPECT_EQ(summary.seeds, 3u);
  // recompute the fractions directly from the cells
  double le = 0;
  for (std::uint64_t s : seeds) {
    std::uint64_t prio = 0, fifo = 0;
    for (const auto& c : report.cells) {
      if (c.seed != s) continue;
      if (c.functor == "priority") prio = c.metrics.ops_executed;
      if (c.functor == "fifo") fifo = c.metrics.ops_executed;
    }
    le += prio <= fifo ? 1 : 0;
  }
  EXPECT_DOUBLE_EQ(summary.priority_le_fifo, le / 3.0);
  const std::vector<PriorityFunctor> one{PriorityFunctor::fifo()};
  EXPECT_THROW(bench_schedulers(small_lattice, seeds, YieldPolicy::none(), one), std::invalid_argument);
}

TEST(YieldSweep, RowsPerSeed) {
  const std::vector<std::uint64_t> seeds{4};
  const std::vector<YieldPolicy> thresholds{YieldPolicy::none(), YieldPolicy::edge_budget(0.25),
                                            YieldPolicy::edge_budget(0.5), YieldPolicy::edge_budget(1),
                                            YieldPolicy::edge_budget(2), YieldPolicy::edge_budget(4)};
  const auto report = bench_yield_sweep(small_lattice, seeds, PriorityFunctor::best(), thresholds);
  ASSERT_EQ(report.cells.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(report.cells[i].yield, thresholds[i].to_string());
    EXPECT_TRUE(report.cells[i].correct);
  }
  EXPECT_EQ(report.cells[0].metrics.yields, 0u);
  EXPECT_THROW(bench_yield_sweep(small_lattice, seeds, PriorityFunctor::best(), {}),
               std::invalid_argument);
}

TEST(Reports, CsvAndJsonSchema) {
  const std::vector<std::uint64_t> seeds{1, 2};
  const std::vector<PriorityFunctor> functors{PriorityFunctor::best(), PriorityFunctor::fifo()};
  const auto report = bench_schedulers(small_lattice, seeds, YieldPolicy::none(), functors);

  std::ostringstream csv;
  write_report_csv(csv, report, {.include_timing = false});
  const auto lines = lines_of(csv.str());
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0],
            "workload,functor,yield,K,workers,seed,ops_executed,edges_processed,work_ratio,"
            "partition_visits,yields,correct");
  std::ostringstream timed;
  write_report_csv(timed, report);
  EXPECT_NE(lines_of(timed.str())[0].find(",wall_ms"), std::string::npos);

  std::ostringstream js;
  write_report_json(js, report, {.include_timing = false});
  const auto doc = nlohmann::json::parse(js.str());
  EXPECT_EQ(doc["schema_version"], 1);
  ASSERT_EQ(doc["rows"].size(), 4u);
  EXPECT_EQ(doc["rows"][0]["functor"], "priority");
  EXPECT_FALSE(doc["rows"][0].contains("wall_ms"));
  EXPECT_TRUE(doc.contains("summary"));

  // identical inputs give byte-identical timing-free reports
  const auto again = bench_schedulers(small_lattice, seeds, YieldPolicy::none(), functors);
  std::ostringstream csv2;
  write_report_csv(csv2, again, {.include_timing = false});
  EXPECT_EQ(csv.str(), csv2.str());
}

}  // namespace
}  // namespace fpp
