#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "fpp/graph.hpp"
#include "fpp/partition.hpp"

namespace fpp {

struct EdgeListOptions {
  bool weighted = false;
  // false inserts every edge in both directions
  bool directed = true;
};

/// Text edge list: one "u v" or "u v w" per line, '#' / '%' comment lines.
/// vertex_count is 1 + the largest id seen. Errors carry the 1-based line.
Graph parse_edge_list(std::istream& in, const EdgeListOptions& options = {});
Graph load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options = {});

// Binary snapshot, little-endian:
//   "FPPG" | u8 version | u8 flags (bit0 weighted, bit1 directed)
//   | u64 vertex_count | u64 edge_count
//   | u64 offsets[vertex_count + 1] | u32 adjacency[edge_count]
//   | f64 weights[edge_count] (weighted only)
inline constexpr std::uint8_t kSnapshotVersion = 1;

void write_snapshot(std::ostream& out, const Graph& graph);
Graph read_snapshot(std::istream& in);
void save_snapshot(const std::filesystem::path& path, const Graph& graph);
Graph load_snapshot(const std::filesystem::path& path);

/// METIS-style partition file: exactly vertex_count lines, one id each.
PartitionPlan parse_partition(std::istream& in, const Graph& graph);
PartitionPlan partition_import(const std::filesystem::path& path, const Graph& graph);
void write_partition(std::ostream& out, const PartitionPlan& plan);

}  // namespace fpp
