#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fpp/apps.hpp"
#include "fpp/generators.hpp"
#include "oracles.hpp"

namespace fpp {
namespace {

std::vector<Partition> split(const Graph& g, std::size_t k, std::uint64_t seed = 1) {
  return build_partitions(g, partition_random(g, k, seed));
}

std::vector<VertexId> all_vertices(const Graph& g) {
  std::vector<VertexId> v(g.vertex_count());
  for (VertexId i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

void expect_near_all(const std::vector<double>& got, const std::vector<double>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_NEAR(got[i], want[i], 1e-9 * std::max(1.0, std::abs(want[i]))) << "vertex " << i;
  }
}

TEST(SampleVertices, DistinctAndSeeded) {
  const auto a = sample_vertices(100, 30, 4);
  EXPECT_EQ(a, sample_vertices(100, 30, 4));
  EXPECT_NE(a, sample_vertices(100, 30, 5));
  EXPECT_EQ(std::set<VertexId>(a.begin(), a.end()).size(), 30u);
  EXPECT_THROW(sample_vertices(5, 9, 1), std::invalid_argument);
}

TEST(Betweenness, PathExact) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  const Graph g = Graph::from_edges(5, edges, false, false);
  const auto bc = run_bc_from(g, split(g, 2), all_vertices(g), EngineConfig{});
  // ordered pairs through each vertex
  expect_near_all(bc.centrality, {0, 6, 8, 6, 0});
}

TEST(Betweenness, StarAndIsolated) {
  const std::vector<Edge> edges{{0, 1}, {0, 2}, {0, 3}};
  const Graph g = Graph::from_edges(5, edges, false, false);
  const auto bc = run_bc_from(g, split(g, 2), all_vertices(g), EngineConfig{});
  expect_near_all(bc.centrality, {6, 0, 0, 0, 0});
}

TEST(Betweenness, MatchesBrandesOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const bool weighted = seed % 2 == 0;
    const Graph g = generate_random(120, 600, seed, weighted);
    const auto sources = sample_vertices(g.vertex_count(), 40, seed);
    EngineConfig cfg;
    cfg.functor = PriorityFunctor::best();
    const auto bc = run_bc_from(g, split(g, 4, seed), sources, cfg);
    expect_near_all(bc.centrality, oracle::brandes(g, sources));
  }
}

TEST(Betweenness, SampledRunUsesRequestedSources) {
  const Graph g = generate_power_law(150, 2, 3);
  const auto bc = run_bc(g, split(g, 3), 10, 7, EngineConfig{});
  EXPECT_EQ(bc.sample_sources, sample_vertices(150, 10, 7));
  expect_near_all(bc.centrality, oracle::brandes(g, bc.sample_sources));
}

TEST(Conductance, TwoTrianglesWithBridge) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}};
  const Graph g = Graph::from_edges(6, edges, false, false);
  const std::vector<VertexId> left{0, 1, 2};
  EXPECT_DOUBLE_EQ(conductance(g, left), 1.0 / 7.0);
  EXPECT_DOUBLE_EQ(oracle::conductance(g, left), 1.0 / 7.0);
  EXPECT_DOUBLE_EQ(oracle::best_conductance_containing(g, 0), 1.0 / 7.0);
  EXPECT_EQ(conductance(g, all_vertices(g)), 1.0);
  EXPECT_EQ(conductance(g, std::vector<VertexId>{}), 1.0);
}

TEST(Conductance, AgreesWithOracleOnRandomSets) {
  const Graph g = generate_power_law(60, 3, 9);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    std::vector<VertexId> set;
    for (VertexId v = 0; v < 60; ++v)
      if (rng() % 3 == 0) set.push_back(v);
    const double phi = conductance(g, set);
    EXPECT_NEAR(phi, oracle::conductance(g, set), 1e-12);
    EXPECT_GE(phi, 0.0);
    EXPECT_LE(phi, 1.0);
  }
}

TEST(Ncp, SweepFindsTheDenseSide) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}};
  const Graph g = Graph::from_edges(6, edges, false, false);
  const std::vector<VertexId> seeds{0};
  const auto ncp = run_ncp_from(g, split(g, 2), seeds, 0.15, 1e-6, EngineConfig{});
  ASSERT_EQ(ncp.per_query.size(), 1u);
  std::vector<VertexId> cluster = ncp.per_query[0].cluster;
  std::sort(cluster.begin(), cluster.end());
  EXPECT_EQ(cluster, (std::vector<VertexId>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(ncp.per_query[0].conductance, 1.0 / 7.0);
  EXPECT_LE(ncp.mass_error[0], 1e-9);
}

TEST(Ncp, PrefixConductancesAndCurve) {
  const Graph g = generate_power_law(400, 3, 2);
  const auto ncp = run_ncp(g, split(g, 4), 0.02, 0.15, 1e-5, 3, EngineConfig{});
  EXPECT_EQ(ncp.per_query.size(), 8u);  // ceil(0.02 * 400)
  for (const auto& cut : ncp.per_query) {
    EXPECT_NEAR(cut.conductance, oracle::conductance(g, cut.cluster), 1e-12);
    EXPECT_EQ(cut.size, cut.cluster.size());
  }
  for (double e : ncp.mass_error) EXPECT_LE(e, 1e-9);
  for (std::size_t i = 1; i < ncp.curve.size(); ++i) EXPECT_LT(ncp.curve[i - 1].first, ncp.curve[i].first);
}

TEST(Ncp, SweepCutOrdersByDegreeNormalizedMass) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}};
  const Graph g = Graph::from_edges(4, edges, false, false);
  const std::vector<double> p{0.5, 0.3, 0.1, 0.0};
  std::vector<double> prefixes;
  const auto cut = sweep_cut(g, p, 0, &prefixes);
  ASSERT_EQ(prefixes.size(), 3u);
  EXPECT_NEAR(prefixes[0], oracle::conductance(g, {0}), 1e-12);
  EXPECT_NEAR(prefixes[1], oracle::conductance(g, {0, 1}), 1e-12);
  EXPECT_NEAR(prefixes[2], oracle::conductance(g, {0, 1, 2}), 1e-12);
  EXPECT_DOUBLE_EQ(cut.conductance, *std::min_element(prefixes.begin(), prefixes.end()));
}

TEST(Landmarks, AllLandmarksGiveExactDistances) {
  const Graph g = generate_lattice(6, 6, 4);
  const auto ll = run_ll_from(g, split(g, 3), all_vertices(g), EngineConfig{});
  const auto fw = oracle::floyd_warshall(g);
  for (VertexId u = 0; u < 36; ++u) {
    EXPECT_EQ(ll.dist[u], fw[u]);
    for (VertexId v = 0; v < 36; ++v) EXPECT_EQ(ll_query_distance(ll, u, v), fw[u][v]);
  }
}

TEST(Landmarks, UpperBoundAndExactOnLandmarkPath) {
  const Graph g = generate_random(80, 400, 6).symmetrized();
  const auto ll = run_ll(g, split(g, 4), 5, 2, EngineConfig{});
  const auto fw = oracle::floyd_warshall(g);
  ASSERT_EQ(ll.landmarks.size(), 5u);
  for (VertexId u = 0; u < 80; ++u) {
    for (VertexId v = 0; v < 80; ++v) {
      const double est = ll_query_distance(ll, u, v);
      EXPECT_GE(est, fw[u][v]);
      for (VertexId l : ll.landmarks) {
        if (fw[u][l] + fw[l][v] == fw[u][v]) EXPECT_EQ(est, fw[u][v]);
      }
    }
  }
}

TEST(Landmarks, UnweightedNeedsFallback) {
  const Graph g = generate_power_law(50, 2, 1);
  EXPECT_THROW(run_ll(g, split(g, 2), 3, 1, EngineConfig{}), std::invalid_argument);
  const auto ll = run_ll(g, split(g, 2), 3, 1, EngineConfig{}, true);
  EXPECT_EQ(ll.dist[0], oracle::bfs_levels(g, ll.landmarks[0]));
}

}  // namespace
}  // namespace fpp
