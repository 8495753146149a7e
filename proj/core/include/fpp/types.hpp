#pragma once

#include <cstdint>
#include <limits>

namespace fpp {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint64_t;
using PartitionId = std::uint32_t;
using QueryId = std::uint32_t;
using Weight = double;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();

}  // namespace fpp
