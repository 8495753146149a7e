#pragma once

#include <cstddef>
#include <cstdint>

#include "fpp/graph.hpp"
#include "fpp/partition.hpp"

namespace fpp {

/// Directed G(n, m): m edges with uniformly random endpoints (no self-loops),
/// integer weights uniform in [1, max(2, floor(log2 n))).
Graph generate_random(std::size_t n, std::size_t m, std::uint64_t seed, bool weighted = true);

/// rows x cols 4-neighbour lattice, undirected, integer weights drawn as in
/// generate_random. Vertex (r, c) has id r * cols + c.
Graph generate_lattice(std::size_t rows, std::size_t cols, std::uint64_t seed,
                       bool weighted = true);

/// Undirected preferential attachment: every new vertex links to
/// `edges_per_vertex` existing vertices chosen proportionally to degree.
Graph generate_power_law(std::size_t n, std::size_t edges_per_vertex, std::uint64_t seed,
                         bool weighted = false);

/// Rectangular tiling of a rows x cols lattice into a block_rows x block_cols
/// grid of tiles, one partition per tile.
PartitionPlan lattice_block_plan(std::size_t rows, std::size_t cols, std::size_t block_rows,
                                 std::size_t block_cols);

}  // namespace fpp
