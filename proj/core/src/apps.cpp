#include "fpp/apps.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fpp/rng.hpp"

namespace fpp {

namespace {

std::vector<std::vector<double>> dependencies_per_source(const Graph& graph,
                                                         std::span<const QueryState> states,
                                                         std::size_t worker_count) {
  std::vector<std::vector<double>> deltas(states.size());
#pragma omp parallel for num_threads(static_cast<int>(worker_count)) schedule(dynamic, 1)
  for (std::size_t q = 0; q < states.size(); ++q) {
    deltas[q].assign(graph.vertex_count(), 0.0);
    accumulate_dependencies(graph, states[q].source, states[q].labels, deltas[q]);
  }
  return deltas;
}

}  // namespace

std::vector<VertexId> sample_vertices(std::size_t vertex_count, std::size_t count,
                                      std::uint64_t seed) {
  if (count > vertex_count) {
    throw std::invalid_argument("cannot sample " + std::to_string(count) + " of " +
                                std::to_string(vertex_count) + " vertices");
  }
  std::vector<VertexId> ids(vertex_count);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(vertex_count - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(count);
  return ids;
}

void accumulate_dependencies(const Graph& graph, VertexId source, std::span<const double> labels,
                             std::span<double> centrality) {
  const std::size_t n = graph.vertex_count();
  std::vector<VertexId> order;
  for (VertexId v = 0; v < n; ++v) {
    if (labels[v] != kInfinity) order.push_back(v);
  }
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return labels[a] != labels[b] ? labels[a] < labels[b] : a < b;
  });
  std::vector<double> sigma(n, 0.0);
  std::vector<double> delta(n, 0.0);
  sigma[source] = 1.0;
  for (VertexId v : order) {
    for (EdgeIndex e = graph.edge_begin(v); e < graph.edge_end(v); ++e) {
      const VertexId w = graph.target_at(e);
      if (labels[v] + graph.weight_at(e) == labels[w]) sigma[w] += sigma[v];
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    for (EdgeIndex e = graph.edge_begin(v); e < graph.edge_end(v); ++e) {
      const VertexId w = graph.target_at(e);
      if (labels[v] + graph.weight_at(e) == labels[w]) {
        delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
    }
    if (v != source) centrality[v] += delta[v];
  }
}

BcResult run_bc_from(const Graph& graph, std::span<const Partition> partitions,
                     std::span<const VertexId> sources, const EngineConfig& config) {
  if (sources.empty()) throw std::invalid_argument("BC needs at least one source");
  if (graph.weighted()) {
    const auto& w = *graph.weights();
    if (std::any_of(w.begin(), w.end(), [](Weight x) { return x <= 0.0; })) {
      throw std::invalid_argument("BC requires positive edge weights");
    }
  }
  const QuerySpec spec = graph.weighted() ? QuerySpec::sssp() : QuerySpec::bfs();
  FppRun run = run_queries(graph, partitions, spec, sources, config);

  BcResult result;
  result.sample_sources.assign(sources.begin(), sources.end());
  result.centrality.assign(graph.vertex_count(), 0.0);
  const auto deltas = dependencies_per_source(graph, run.states, config.worker_count);
  for (const auto& delta : deltas) {
    for (std::size_t v = 0; v < delta.size(); ++v) result.centrality[v] += delta[v];
  }
  result.metrics = std::move(run.metrics);
  return result;
}

BcResult run_bc(const Graph& graph, std::span<const Partition> partitions,
                std::size_t sample_count, std::uint64_t seed, const EngineConfig& config) {
  if (sample_count < 1) throw std::invalid_argument("BC sample count must be >= 1");
  const auto sources = sample_vertices(graph.vertex_count(), sample_count, seed);
  return run_bc_from(graph, partitions, sources, config);
}

double conductance(const Graph& graph, std::span<const VertexId> set) {
  std::vector<std::uint8_t> in(graph.vertex_count(), 0);
  for (VertexId v : set) in.at(v) = 1;
  double vol = 0, cut = 0;
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    if (!in[v]) continue;
    vol += static_cast<double>(graph.degree(v));
    for (VertexId u : graph.neighbors(v)) {
      if (!in[u]) cut += 1.0;
    }
  }
  const double total = static_cast<double>(graph.edge_count());
  const double denom = std::min(vol, total - vol);
  return denom > 0.0 ? cut / denom : 1.0;
}

SweepCut sweep_cut(const Graph& graph, std::span<const double> p, VertexId seed,
                   std::vector<double>* prefix_conductance) {
  std::vector<VertexId> order;
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    if (p[v] > 0.0) order.push_back(v);
  }
  auto key = [&](VertexId v) {
    const auto d = graph.degree(v);
    return d == 0 ? kInfinity : p[v] / static_cast<double>(d);
  };
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    const double ka = key(a), kb = key(b);
    return ka != kb ? ka > kb : a < b;
  });

  const double total = static_cast<double>(graph.edge_count());
  std::vector<std::uint8_t> in(graph.vertex_count(), 0);
  double vol = 0, cut = 0;
  SweepCut best;
  best.seed = seed;
  std::size_t best_size = 0;
  if (prefix_conductance) prefix_conductance->clear();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const VertexId v = order[i];
    double inside = 0, self = 0;
    for (VertexId u : graph.neighbors(v)) {
      if (u == v) self += 1.0;
      else if (in[u]) inside += 1.0;
    }
    in[v] = 1;
    vol += static_cast<double>(graph.degree(v));
    cut += static_cast<double>(graph.degree(v)) - self - 2.0 * inside;
    const double denom = std::min(vol, total - vol);
    const double phi = denom > 0.0 ? cut / denom : 1.0;
    if (prefix_conductance) prefix_conductance->push_back(phi);
    if (best_size == 0 || phi < best.conductance) {
      best.conductance = phi;
      best_size = i + 1;
    }
  }
  best.cluster.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_size));
  best.size = best_size;
  return best;
}

NcpResult run_ncp_from(const Graph& graph, std::span<const Partition> partitions,
                       std::span<const VertexId> seeds, double alpha, double epsilon,
                       const EngineConfig& config) {
  if (seeds.empty()) throw std::invalid_argument("NCP needs at least one seed");
  const QuerySpec spec = QuerySpec::ppr(alpha, epsilon);
  spec.validate();

  Graph undirected;
  std::vector<Partition> rebuilt;
  const Graph* g = &graph;
  if (graph.directed()) {
    std::clog << "warning: NCP symmetrizes the directed input graph\n";
    undirected = graph.symmetrized();
    rebuilt = build_partitions(undirected, partitions.front().plan());
    g = &undirected;
    partitions = rebuilt;
  }

  FppRun run = run_queries(*g, partitions, spec, seeds, config);
  NcpResult result;
  result.per_query.resize(run.states.size());
  result.mass_error.resize(run.states.size());
  std::vector<std::vector<double>> prefixes(run.states.size());
#pragma omp parallel for num_threads(static_cast<int>(config.worker_count)) schedule(dynamic, 1)
  for (std::size_t q = 0; q < run.states.size(); ++q) {
    const QueryState& s = run.states[q];
    const double mass = std::accumulate(s.labels.begin(), s.labels.end(), 0.0) +
                        std::accumulate(s.residual.begin(), s.residual.end(), 0.0);
    result.mass_error[q] = std::abs(mass - 1.0);
    result.per_query[q] = sweep_cut(*g, s.labels, s.source, &prefixes[q]);
  }
  std::vector<double> curve;
  for (const auto& prefix : prefixes) {
    if (prefix.size() > curve.size()) curve.resize(prefix.size(), kInfinity);
    for (std::size_t i = 0; i < prefix.size(); ++i) curve[i] = std::min(curve[i], prefix[i]);
  }
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve[i] != kInfinity) result.curve.emplace_back(i + 1, curve[i]);
  }
  result.metrics = std::move(run.metrics);
  return result;
}

NcpResult run_ncp(const Graph& graph, std::span<const Partition> partitions, double seed_fraction,
                  double alpha, double epsilon, std::uint64_t seed, const EngineConfig& config) {
  if (!(seed_fraction > 0.0 && seed_fraction <= 1.0)) {
    throw std::invalid_argument("seed fraction must lie in (0, 1]");
  }
  const auto count = static_cast<std::size_t>(
      std::ceil(seed_fraction * static_cast<double>(graph.vertex_count())));
  const auto seeds = sample_vertices(graph.vertex_count(), std::max<std::size_t>(1, count), seed);
  return run_ncp_from(graph, partitions, seeds, alpha, epsilon, config);
}

LandmarkLabels run_ll_from(const Graph& graph, std::span<const Partition> partitions,
                           std::span<const VertexId> landmarks, const EngineConfig& config,
                           bool unit_weight_fallback) {
  if (landmarks.empty()) throw std::invalid_argument("LL needs at least one landmark");
  if (!graph.weighted() && !unit_weight_fallback) {
    throw std::invalid_argument("landmark labeling needs a weighted graph (or unit-weight fallback)");
  }
  FppRun run = run_queries(graph, partitions, QuerySpec::sssp(), landmarks, config);
  LandmarkLabels labels;
  labels.landmarks.assign(landmarks.begin(), landmarks.end());
  labels.dist.reserve(run.states.size());
  for (auto& s : run.states) labels.dist.push_back(std::move(s.labels));
  labels.metrics = std::move(run.metrics);
  return labels;
}

LandmarkLabels run_ll(const Graph& graph, std::span<const Partition> partitions,
                      std::size_t landmark_count, std::uint64_t seed, const EngineConfig& config,
                      bool unit_weight_fallback) {
  if (landmark_count < 1 || landmark_count > graph.vertex_count()) {
    throw std::invalid_argument("landmark count must lie in [1, |V|]");
  }
  const auto landmarks = sample_vertices(graph.vertex_count(), landmark_count, seed);
  return run_ll_from(graph, partitions, landmarks, config, unit_weight_fallback);
}

double ll_query_distance(const LandmarkLabels& labels, VertexId u, VertexId v) {
  if (labels.dist.empty()) throw std::invalid_argument("empty landmark labels");
  const std::size_t n = labels.dist.front().size();
  if (u >= n || v >= n) throw std::out_of_range("query vertex out of range");
  double best = kInfinity;
  for (const auto& row : labels.dist) best = std::min(best, row[u] + row[v]);
  return best;
}

}  // namespace fpp
