#include "fpp/generators.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <vector>

#include "fpp/rng.hpp"

namespace fpp {

namespace {

std::uint64_t weight_bound(std::size_t n) {
  const std::uint64_t log2n = n > 1 ? std::bit_width(n) - 1 : 0;
  return std::max<std::uint64_t>(2, log2n);
}

Weight draw_weight(SplitMix64& rng, std::uint64_t bound) {
  return static_cast<Weight>(1 + rng.below(bound - 1));
}

}  // namespace

Graph generate_random(std::size_t n, std::size_t m, std::uint64_t seed, bool weighted) {
  if (n < 2) throw std::invalid_argument("random graph needs at least 2 vertices");
  SplitMix64 rng(seed);
  const auto bound = weight_bound(n);
  std::vector<Edge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    const auto u = static_cast<VertexId>(rng.below(n));
    const auto v = static_cast<VertexId>(rng.below(n));
    if (u == v) continue;
    edges.push_back({u, v, weighted ? draw_weight(rng, bound) : 1.0});
  }
  return Graph::from_edges(n, edges, weighted, /*directed=*/true);
}

Graph generate_lattice(std::size_t rows, std::size_t cols, std::uint64_t seed, bool weighted) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("lattice needs positive dimensions");
  SplitMix64 rng(seed);
  const std::size_t n = rows * cols;
  const auto bound = weight_bound(n);
  std::vector<Edge> edges;
  edges.reserve(2 * n);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = static_cast<VertexId>(r * cols + c);
      if (c + 1 < cols) edges.push_back({v, v + 1, weighted ? draw_weight(rng, bound) : 1.0});
      if (r + 1 < rows) {
        edges.push_back({v, static_cast<VertexId>(v + cols), weighted ? draw_weight(rng, bound) : 1.0});
      }
    }
  }
  return Graph::from_edges(n, edges, weighted, /*directed=*/false);
}

Graph generate_power_law(std::size_t n, std::size_t edges_per_vertex, std::uint64_t seed,
                         bool weighted) {
  if (edges_per_vertex == 0 || n <= edges_per_vertex) {
    throw std::invalid_argument("power-law graph needs n > edges_per_vertex > 0");
  }
  SplitMix64 rng(seed);
  const auto bound = weight_bound(n);
  std::vector<Edge> edges;
  // endpoint multiset: sampling from it is sampling proportional to degree
  std::vector<VertexId> endpoints;
  const std::size_t core = edges_per_vertex + 1;
  for (VertexId u = 0; u < core; ++u) {
    for (VertexId v = u + 1; v < core; ++v) {
      edges.push_back({u, v, weighted ? draw_weight(rng, bound) : 1.0});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<VertexId> chosen;
  for (auto u = static_cast<VertexId>(core); u < n; ++u) {
    chosen.clear();
    while (chosen.size() < edges_per_vertex) {
      const VertexId v = endpoints[rng.below(endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) chosen.push_back(v);
    }
    for (VertexId v : chosen) {
      edges.push_back({u, v, weighted ? draw_weight(rng, bound) : 1.0});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(n, edges, weighted, /*directed=*/false);
}

PartitionPlan lattice_block_plan(std::size_t rows, std::size_t cols, std::size_t block_rows,
                                 std::size_t block_cols) {
  if (block_rows == 0 || block_cols == 0 || block_rows > rows || block_cols > cols) {
    throw std::invalid_argument("block grid must fit inside the lattice");
  }
  std::vector<PartitionId> part(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t br = r * block_rows / rows;
      const std::size_t bc = c * block_cols / cols;
      part[r * cols + c] = static_cast<PartitionId>(br * block_cols + bc);
    }
  }
  return PartitionPlan(std::move(part), block_rows * block_cols);
}

}  // namespace fpp
