#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fpp/engine.hpp"
#include "fpp/graph.hpp"
#include "fpp/partition.hpp"

namespace fpp {

/// `count` distinct vertices drawn uniformly with a seeded partial shuffle.
std::vector<VertexId> sample_vertices(std::size_t vertex_count, std::size_t count,
                                      std::uint64_t seed);

// --- Betweenness centrality -------------------------------------------------

struct BcResult {
  std::vector<double> centrality;
  std::vector<VertexId> sample_sources;
  RunMetrics metrics;
};

/// Approximate BC from `sample_count` random sources: one FPP run of BFS
/// (unweighted) or SSSP (weighted) queries, then per-source Brandes
/// dependency accumulation over the final labels. Scores are not halved on
/// undirected graphs. Requires positive weights.
BcResult run_bc(const Graph& graph, std::span<const Partition> partitions,
                std::size_t sample_count, std::uint64_t seed, const EngineConfig& config);

BcResult run_bc_from(const Graph& graph, std::span<const Partition> partitions,
                     std::span<const VertexId> sources, const EngineConfig& config);

/// Adds source's dependencies to `centrality`, recomputing shortest-path
/// counts from `labels` by scanning vertices in non-decreasing label order.
void accumulate_dependencies(const Graph& graph, VertexId source, std::span<const double> labels,
                             std::span<double> centrality);

// --- Network community profile ----------------------------------------------

struct SweepCut {
  VertexId seed = 0;
  std::vector<VertexId> cluster;
  double conductance = 1.0;
  std::size_t size = 0;
};

struct NcpResult {
  std::vector<SweepCut> per_query;
  /// (cluster size, smallest conductance seen at that size), ascending size.
  std::vector<std::pair<std::size_t, double>> curve;
  std::vector<double> mass_error;  // |sum p + sum r - 1| per query
  RunMetrics metrics;
};

/// cut(S) / min(vol(S), vol(V \ S)) on an undirected graph; 1 when the
/// denominator is 0.
double conductance(const Graph& graph, std::span<const VertexId> set);

/// Orders vertices with p > 0 by p(v) / deg(v) descending and returns the
/// minimum-conductance prefix. `prefix_conductance` (optional) receives the
/// conductance of every prefix.
SweepCut sweep_cut(const Graph& graph, std::span<const double> p, VertexId seed,
                   std::vector<double>* prefix_conductance = nullptr);

/// ceil(seed_fraction * |V|) PPR queries from random seeds, then a sweep cut
/// per query. Directed input is symmetrized (partitions rebuilt from the
/// same plan) with a warning on stderr.
NcpResult run_ncp(const Graph& graph, std::span<const Partition> partitions, double seed_fraction,
                  double alpha, double epsilon, std::uint64_t seed, const EngineConfig& config);

NcpResult run_ncp_from(const Graph& graph, std::span<const Partition> partitions,
                       std::span<const VertexId> seeds, double alpha, double epsilon,
                       const EngineConfig& config);

// --- Landmark labeling --------------------------------------------------------

struct LandmarkLabels {
  std::vector<VertexId> landmarks;
  std::vector<std::vector<double>> dist;  // landmark x vertex
  RunMetrics metrics;
};

/// `landmark_count` random landmarks, one SSSP query each. Unweighted graphs
/// are rejected unless `unit_weight_fallback` is set.
LandmarkLabels run_ll(const Graph& graph, std::span<const Partition> partitions,
                      std::size_t landmark_count, std::uint64_t seed, const EngineConfig& config,
                      bool unit_weight_fallback = false);

LandmarkLabels run_ll_from(const Graph& graph, std::span<const Partition> partitions,
                           std::span<const VertexId> landmarks, const EngineConfig& config,
                           bool unit_weight_fallback = false);

/// min over landmarks l of dist[l][u] + dist[l][v]; an upper bound on
/// d(u, v) for undirected graphs, infinity if no landmark reaches both.
double ll_query_distance(const LandmarkLabels& labels, VertexId u, VertexId v);

}  // namespace fpp
