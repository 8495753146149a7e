#pragma once

// Brute-force reference implementations used only by tests. They read the
// graph through its raw CSR arrays and share no code with the library kernels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <queue>
#include <stack>
#include <vector>

#include "fpp/graph.hpp"

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::vector<double> bellman_ford(const fpp::Graph& g, fpp::VertexId source) {
  const std::size_t n = g.vertex_count();
  std::vector<double> dist(n, kInf);
  dist[source] = 0.0;
  for (std::size_t round = 0; round + 1 < n || round == 0; ++round) {
    bool changed = false;
    for (fpp::VertexId u = 0; u < n; ++u) {
      if (dist[u] == kInf) continue;
      for (auto e = g.offsets()[u]; e < g.offsets()[u + 1]; ++e) {
        const double w = g.weights() ? (*g.weights())[e] : 1.0;
        const fpp::VertexId v = g.adjacency()[e];
        if (dist[u] + w < dist[v]) {
          dist[v] = dist[u] + w;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return dist;
}

inline std::vector<double> bfs_levels(const fpp::Graph& g, fpp::VertexId source) {
  std::vector<double> level(g.vertex_count(), kInf);
  std::deque<fpp::VertexId> frontier{source};
  level[source] = 0.0;
  while (!frontier.empty()) {
    const fpp::VertexId u = frontier.front();
    frontier.pop_front();
    for (auto e = g.offsets()[u]; e < g.offsets()[u + 1]; ++e) {
      const fpp::VertexId v = g.adjacency()[e];
      if (level[v] == kInf) {
        level[v] = level[u] + 1.0;
        frontier.push_back(v);
      }
    }
  }
  return level;
}

inline std::vector<std::vector<double>> floyd_warshall(const fpp::Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (std::size_t u = 0; u < n; ++u) {
    d[u][u] = 0.0;
    for (auto e = g.offsets()[u]; e < g.offsets()[u + 1]; ++e) {
      const double w = g.weights() ? (*g.weights())[e] : 1.0;
      auto& slot = d[u][g.adjacency()[e]];
      slot = std::min(slot, w);
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

/// Textbook Brandes over every source in `sources` (Dijkstra-based when
/// weighted, BFS otherwise). No halving for undirected graphs.
inline std::vector<double> brandes(const fpp::Graph& g, const std::vector<fpp::VertexId>& sources) {
  const std::size_t n = g.vertex_count();
  std::vector<double> bc(n, 0.0);
  for (fpp::VertexId s : sources) {
    std::vector<std::vector<fpp::VertexId>> pred(n);
    std::vector<double> sigma(n, 0.0), dist(n, kInf), delta(n, 0.0);
    std::stack<fpp::VertexId> order;
    sigma[s] = 1.0;
    dist[s] = 0.0;
    using Item = std::pair<double, fpp::VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    std::vector<bool> done(n, false);
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (done[v]) continue;
      done[v] = true;
      order.push(v);
      for (auto e = g.offsets()[v]; e < g.offsets()[v + 1]; ++e) {
        const fpp::VertexId w = g.adjacency()[e];
        const double len = g.weights() ? (*g.weights())[e] : 1.0;
        if (d + len < dist[w]) {
          dist[w] = d + len;
          sigma[w] = 0.0;
          pred[w].clear();
          pq.push({dist[w], w});
        }
        if (d + len == dist[w]) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        }
      }
    }
    while (!order.empty()) {
      const fpp::VertexId w = order.top();
      order.pop();
      for (fpp::VertexId v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  return bc;
}

/// cut(S) / min(vol(S), vol(V \ S)) by direct enumeration; 1 when the
/// denominator is zero.
inline double conductance(const fpp::Graph& g, const std::vector<fpp::VertexId>& set) {
  std::vector<bool> in(g.vertex_count(), false);
  for (auto v : set) in[v] = true;
  double vol_in = 0, vol_out = 0, cut = 0;
  for (fpp::VertexId u = 0; u < g.vertex_count(); ++u) {
    for (auto e = g.offsets()[u]; e < g.offsets()[u + 1]; ++e) {
      (in[u] ? vol_in : vol_out) += 1.0;
      if (in[u] && !in[g.adjacency()[e]]) cut += 1.0;
    }
  }
  const double denom = std::min(vol_in, vol_out);
  return denom > 0 ? cut / denom : 1.0;
}

/// Minimum conductance over every non-empty subset containing `seed`
/// (n <= 20).
inline double best_conductance_containing(const fpp::Graph& g, fpp::VertexId seed,
                                          std::vector<fpp::VertexId>* best_set = nullptr) {
  const std::size_t n = g.vertex_count();
  double best = kInf;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & (1u << seed))) continue;
    std::vector<fpp::VertexId> set;
    for (fpp::VertexId v = 0; v < n; ++v)
      if (mask & (1u << v)) set.push_back(v);
    const double phi = conductance(g, set);
    if (phi < best) {
      best = phi;
      if (best_set) *best_set = set;
    }
  }
  return best;
}

/// Exact fixed point of the push recurrence p = alpha * sum_k ((1-alpha) W)^k e_s
/// by plain iteration, for graphs without dangling vertices.
inline std::vector<double> ppr_fixed_point(const fpp::Graph& g, fpp::VertexId source, double alpha,
                                           int iterations = 2000) {
  const std::size_t n = g.vertex_count();
  std::vector<double> p(n, 0.0), r(n, 0.0);
  r[source] = 1.0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> next(n, 0.0);
    for (fpp::VertexId u = 0; u < n; ++u) {
      if (r[u] == 0.0) continue;
      p[u] += alpha * r[u];
      const auto deg = g.offsets()[u + 1] - g.offsets()[u];
      for (auto e = g.offsets()[u]; e < g.offsets()[u + 1]; ++e) {
        next[g.adjacency()[e]] += (1.0 - alpha) * r[u] / static_cast<double>(deg);
      }
    }
    r.swap(next);
  }
  return p;
}

}  // namespace oracle
