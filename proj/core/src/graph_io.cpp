#include "fpp/graph_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

namespace fpp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view field, T& out) {
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

[[noreturn]] void line_error(std::size_t line_no, const std::string& what) {
  throw GraphError("line " + std::to_string(line_no) + ": " + what);
}

std::ifstream open_input(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw GraphError("cannot open " + path.string());
  return in;
}

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), bytes.size())) throw GraphError("snapshot truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

Graph parse_edge_list(std::istream& in, const EdgeListOptions& options) {
  std::vector<Edge> edges;
  std::size_t max_id = 0;
  bool any = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == '%') continue;
    const auto fields = split_fields(line);
    const std::size_t expected = options.weighted ? 3 : 2;
    if (fields.size() != expected && !(!options.weighted && fields.size() == 3)) {
      line_error(line_no, "expected " + std::to_string(expected) + " fields, got " +
                              std::to_string(fields.size()));
    }
    std::uint64_t u = 0, v = 0;
    if (!parse_number(fields[0], u) || !parse_number(fields[1], v)) {
      line_error(line_no, "vertex ids must be non-negative integers");
    }
    if (u >= kInvalidVertex || v >= kInvalidVertex) line_error(line_no, "vertex id too large");
    Weight w = 1.0;
    if (options.weighted) {
      // from_chars for double is not available on every toolchain we target
      std::string field(fields[2]);
      std::size_t used = 0;
      try {
        w = std::stod(field, &used);
      } catch (const std::exception&) {
        line_error(line_no, "malformed weight '" + field + "'");
      }
      if (used != field.size()) line_error(line_no, "malformed weight '" + field + "'");
      if (!std::isfinite(w)) line_error(line_no, "weight must be finite");
      if (w < 0) line_error(line_no, "weight negative");
    }
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), w});
    max_id = std::max<std::size_t>({max_id, u, v});
    any = true;
  }
  if (!any) throw GraphError("edge list is empty");
  return Graph::from_edges(max_id + 1, edges, options.weighted, options.directed);
}

Graph load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options) {
  auto in = open_input(path);
  return parse_edge_list(in, options);
}

void write_snapshot(std::ostream& out, const Graph& graph) {
  out.write("FPPG", 4);
  put_le<std::uint8_t>(out, kSnapshotVersion);
  const std::uint8_t flags = (graph.weighted() ? 1 : 0) | (graph.directed() ? 2 : 0);
  put_le<std::uint8_t>(out, flags);
  put_le<std::uint64_t>(out, graph.vertex_count());
  put_le<std::uint64_t>(out, graph.edge_count());
  for (EdgeIndex o : graph.offsets()) put_le<std::uint64_t>(out, o);
  for (VertexId t : graph.adjacency()) put_le<std::uint32_t>(out, t);
  if (graph.weighted()) {
    for (Weight w : *graph.weights()) put_le<double>(out, w);
  }
  if (!out) throw GraphError("snapshot write failed");
}

Graph read_snapshot(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || std::string_view(magic.data(), 4) != "FPPG") {
    throw GraphError("not a graph snapshot (bad magic)");
  }
  const auto version = get_le<std::uint8_t>(in);
  if (version != kSnapshotVersion) {
    throw GraphError("unsupported snapshot version " + std::to_string(version));
  }
  const auto flags = get_le<std::uint8_t>(in);
  const auto n = get_le<std::uint64_t>(in);
  const auto m = get_le<std::uint64_t>(in);
  if (n >= kInvalidVertex) throw GraphError("snapshot vertex count too large");
  std::vector<EdgeIndex> offsets(n + 1);
  for (auto& o : offsets) o = get_le<std::uint64_t>(in);
  std::vector<VertexId> adjacency(m);
  for (auto& t : adjacency) t = get_le<std::uint32_t>(in);
  std::optional<std::vector<Weight>> weights;
  if (flags & 1) {
    weights.emplace(m);
    for (auto& w : *weights) w = get_le<double>(in);
  }
  return Graph(std::move(offsets), std::move(adjacency), std::move(weights), (flags & 2) != 0);
}

void save_snapshot(const std::filesystem::path& path, const Graph& graph) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw GraphError("cannot open " + path.string() + " for writing");
  write_snapshot(out, graph);
}

Graph load_snapshot(const std::filesystem::path& path) {
  auto in = open_input(path, std::ios::in | std::ios::binary);
  return read_snapshot(in);
}

PartitionPlan parse_partition(std::istream& in, const Graph& graph) {
  std::vector<PartitionId> part;
  part.reserve(graph.vertex_count());
  std::string raw;
  std::size_t line_no = 0;
  PartitionId max_id = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;  // trailing newline
    std::uint64_t id = 0;
    if (!parse_number(line, id) || id >= kInvalidVertex) {
      line_error(line_no, "partition id must be a non-negative integer");
    }
    part.push_back(static_cast<PartitionId>(id));
    max_id = std::max(max_id, static_cast<PartitionId>(id));
  }
  if (part.size() != graph.vertex_count()) {
    throw GraphError("line " + std::to_string(part.size()) + ": partition file has " +
                     std::to_string(part.size()) + " lines, graph has " +
                     std::to_string(graph.vertex_count()) + " vertices (line count mismatch)");
  }
  const std::size_t count = part.empty() ? 0 : std::size_t{max_id} + 1;
  return PartitionPlan(std::move(part), count);
}

PartitionPlan partition_import(const std::filesystem::path& path, const Graph& graph) {
  auto in = open_input(path);
  return parse_partition(in, graph);
}

void write_partition(std::ostream& out, const PartitionPlan& plan) {
  for (PartitionId p : plan.partition_of()) out << p << '\n';
}

}  // namespace fpp
