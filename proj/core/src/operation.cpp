#include "fpp/operation.hpp"

#include <cmath>
#include <stdexcept>

namespace fpp {

std::string_view to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::kSssp: return "sssp";
    case QueryKind::kBfs: return "bfs";
    case QueryKind::kPpr: return "ppr";
    case QueryKind::kRw: return "rw";
  }
  return "unknown";
}

void QuerySpec::validate() const {
  if (kind == QueryKind::kPpr) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("PPR alpha must lie in (0, 1)");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
      throw std::invalid_argument("PPR epsilon must be positive");
    }
  }
}

Operation seed_operation(const QuerySpec& spec, QueryId query, VertexId source) {
  switch (spec.kind) {
    case QueryKind::kSssp:
    case QueryKind::kBfs:
      return {query, source, 0.0};
    case QueryKind::kPpr:
      return {query, source, 1.0};
    case QueryKind::kRw:
      return {query, source, static_cast<double>(spec.walk_length)};
  }
  return {query, source, 0.0};
}

}  // namespace fpp
