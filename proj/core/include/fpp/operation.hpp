#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fpp/types.hpp"

namespace fpp {

enum class QueryKind : std::uint8_t { kSssp, kBfs, kPpr, kRw };

std::string_view to_string(QueryKind kind);

/// Query type plus its parameters. Only the fields of the active kind are
/// read.
struct QuerySpec {
  QueryKind kind = QueryKind::kSssp;
  double alpha = 0.15;    // PPR teleport probability, in (0, 1)
  double epsilon = 1e-6;  // PPR push tolerance, > 0
  std::uint32_t walk_length = 0;
  std::uint64_t rng_seed = 0;

  static QuerySpec sssp() { return {QueryKind::kSssp}; }
  static QuerySpec bfs() { return {QueryKind::kBfs}; }
  static QuerySpec ppr(double alpha, double epsilon) {
    return {QueryKind::kPpr, alpha, epsilon};
  }
  static QuerySpec rw(std::uint32_t walk_length, std::uint64_t rng_seed) {
    return {QueryKind::kRw, 0.15, 1e-6, walk_length, rng_seed};
  }

  /// Throws std::invalid_argument when parameters are out of range.
  void validate() const;
};

/// One unit of buffered work: <query, vertex, value>. The value is a
/// tentative distance / level (SSSP, BFS), residual mass (PPR) or remaining
/// walk steps (RW).
struct Operation {
  QueryId query;
  VertexId vertex;
  double value;

  friend bool operator==(const Operation&, const Operation&) = default;
};

/// SSSP/BFS prefer small values, PPR large residuals, RW long remaining walks.
constexpr bool prefers_smaller(QueryKind kind) {
  return kind == QueryKind::kSssp || kind == QueryKind::kBfs;
}

/// Strict "a runs before b" order for operations of one query:
/// priority value first, then vertex id.
constexpr bool runs_before(QueryKind kind, const Operation& a, const Operation& b) {
  if (a.value != b.value) return prefers_smaller(kind) ? a.value < b.value : a.value > b.value;
  return a.vertex < b.vertex;
}

/// True when value `a` has strictly higher priority than `b`.
constexpr bool better_value(QueryKind kind, double a, double b) {
  return prefers_smaller(kind) ? a < b : a > b;
}

/// Seed operation placed in the source's partition before a run.
Operation seed_operation(const QuerySpec& spec, QueryId query, VertexId source);

}  // namespace fpp
