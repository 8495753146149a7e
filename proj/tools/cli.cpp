#include "cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fpp/apps.hpp"
#include "fpp/bench.hpp"
#include "fpp/engine.hpp"
#include "fpp/generators.hpp"
#include "fpp/graph.hpp"
#include "fpp/graph_io.hpp"
#include "fpp/kernels.hpp"
#include "fpp/partition.hpp"

namespace fpp::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- Shared option groups -----------------------------------------------------

struct GraphOptions {
  std::string path;
  std::string format = "auto";  // auto | edgelist | snapshot
  std::string gen;              // grid:RxC | random:n:m | powerlaw:n:d
  bool weighted = false;
  bool directed = false;
};

struct PartitionOptions {
  std::optional<std::size_t> random_k;
  std::string import_path;
  std::string blocks;  // BRxBC, grid generator only
  bool automatic = false;
  std::uint64_t cache_bytes = 13'750'000;
};

struct EngineOptions {
  std::string functor = "priority";
  std::string yield = "none";
  std::size_t workers = 1;
  std::size_t buckets = 0;
  std::string consolidation = "sort";
};

struct OutputOptions {
  std::string path;
  std::string format = "auto";  // auto | json | csv
  bool no_timestamp = false;
};

struct GenSpec {
  enum class Kind { kGrid, kRandom, kPowerLaw } kind = Kind::kGrid;
  std::size_t a = 0;
  std::size_t b = 0;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::size_t parse_size(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text.front() == '-') {
    throw std::invalid_argument("bad " + what + ": '" + text + "'");
  }
  return static_cast<std::size_t>(value);
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text, const std::string& what) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw std::invalid_argument("bad " + what + ": expected AxB");
  return {parse_size(text.substr(0, x), what), parse_size(text.substr(x + 1), what)};
}

GenSpec parse_gen(const std::string& text) {
  const auto parts = split(text, ':');
  GenSpec spec;
  if (parts.size() == 2 && parts[0] == "grid") {
    spec.kind = GenSpec::Kind::kGrid;
    std::tie(spec.a, spec.b) = parse_dims(parts[1], "grid size");
  } else if (parts.size() == 3 && parts[0] == "random") {
    spec.kind = GenSpec::Kind::kRandom;
    spec.a = parse_size(parts[1], "vertex count");
    spec.b = parse_size(parts[2], "edge count");
  } else if (parts.size() == 3 && parts[0] == "powerlaw") {
    spec.kind = GenSpec::Kind::kPowerLaw;
    spec.a = parse_size(parts[1], "vertex count");
    spec.b = parse_size(parts[2], "edges per vertex");
  } else {
    throw std::invalid_argument("bad --gen '" + text + "' (grid:RxC | random:n:m | powerlaw:n:d)");
  }
  return spec;
}

Graph generate(const GenSpec& spec, std::uint64_t seed, bool weighted) {
  switch (spec.kind) {
    case GenSpec::Kind::kGrid:
      return generate_lattice(spec.a, spec.b, seed, weighted);
    case GenSpec::Kind::kRandom:
      return generate_random(spec.a, spec.b, seed, weighted);
    case GenSpec::Kind::kPowerLaw:
      return generate_power_law(spec.a, spec.b, seed, weighted);
  }
  throw std::logic_error("unknown generator");
}

Graph load_graph(const GraphOptions& opts, std::uint64_t seed, bool weighted_default) {
  if (!opts.gen.empty()) return generate(parse_gen(opts.gen), seed, opts.weighted || weighted_default);
  std::string format = opts.format;
  if (format == "auto") {
    format = std::filesystem::path(opts.path).extension() == ".fppg" ? "snapshot" : "edgelist";
  }
  if (format == "snapshot") return load_snapshot(opts.path);
  if (format != "edgelist") throw std::invalid_argument("unknown graph format '" + format + "'");
  return load_edge_list(opts.path, EdgeListOptions{opts.weighted, opts.directed});
}

PartitionPlan make_plan(const Graph& graph, const GraphOptions& gopts, const PartitionOptions& opts,
                        std::uint64_t seed) {
  if (!opts.import_path.empty()) return partition_import(opts.import_path, graph);
  if (opts.random_k) return partition_random(graph, *opts.random_k, seed);
  if (!opts.blocks.empty()) {
    const GenSpec gen = gopts.gen.empty() ? GenSpec{} : parse_gen(gopts.gen);
    if (gopts.gen.empty() || gen.kind != GenSpec::Kind::kGrid) {
      throw std::invalid_argument("--blocks requires --gen grid:RxC");
    }
    const auto [br, bc] = parse_dims(opts.blocks, "block size");
    return lattice_block_plan(gen.a, gen.b, br, bc);
  }
  const std::size_t k = partition_count_for_budget(graph.byte_size(), opts.cache_bytes);
  return partition_contiguous(graph, std::min<std::size_t>(k, graph.vertex_count()));
}

std::size_t resolve_workers(std::size_t flag) {
  if (const char* env = std::getenv("FPP_WORKERS"); env && *env) {
    return parse_size(env, "FPP_WORKERS");
  }
  return flag;
}

EngineConfig make_engine_config(const EngineOptions& opts, const PartitionOptions& popts,
                                std::uint64_t seed) {
  EngineConfig config;
  config.functor = PriorityFunctor::parse(opts.functor, seed);
  config.yield = YieldPolicy::parse(opts.yield);
  config.worker_count = resolve_workers(opts.workers);
  config.bucket_count = opts.buckets;
  config.cache_budget_bytes = popts.cache_bytes;
  config.seed = seed;
  if (opts.consolidation == "sort") {
    config.consolidation = ConsolidationMethod::kSort;
  } else if (opts.consolidation == "scan") {
    config.consolidation = ConsolidationMethod::kScan;
  } else {
    throw std::invalid_argument("unknown consolidation '" + opts.consolidation + "'");
  }
  config.validate();
  return config;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::string hex64(std::uint64_t value) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << value;
  return out.str();
}

// Writes to a sibling temp file, then renames over the destination.
void write_output(const OutputOptions& opts, const std::string& payload, std::ostream& out) {
  if (opts.path.empty() || opts.path == "-") {
    out << payload;
    return;
  }
  const std::filesystem::path dest(opts.path);
  std::filesystem::path tmp = dest;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream file(tmp, std::ios::binary);
    if (!file) throw GraphError("cannot open " + tmp.string() + " for writing");
    file << payload;
    if (!file.flush()) {
      std::filesystem::remove(tmp);
      throw GraphError("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, dest, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw GraphError("cannot rename onto " + dest.string() + ": " + ec.message());
  }
}

std::string resolve_format(const OutputOptions& opts, const std::string& fallback) {
  if (opts.format != "auto") {
    if (opts.format != "json" && opts.format != "csv") {
      throw std::invalid_argument("unknown output format '" + opts.format + "'");
    }
    return opts.format;
  }
  const auto ext = std::filesystem::path(opts.path).extension();
  if (ext == ".csv") return "csv";
  if (ext == ".json") return "json";
  return fallback;
}

Json metrics_json(const RunMetrics& m, bool include_timing, double wall_ms) {
  Json j;
  j["edges_processed"] = m.edges_processed;
  j["ops_executed"] = m.ops_executed;
  j["ops_appended"] = m.ops_appended;
  j["ops_discarded_by_consolidation"] = m.ops_discarded_by_consolidation;
  j["ops_filtered_stale"] = m.ops_filtered_stale;
  j["partition_visits"] = m.partition_visits;
  j["yields"] = m.yields;
  j["scheduling_steps"] = m.scheduling_steps;
  j["oracle_edges"] = m.oracle_edges;
  j["work_ratio"] = m.oracle_edges > 0 ? Json(m.work_ratio) : Json();
  j["run_digest"] = hex64(m.run_digest);
  if (include_timing) j["wall_ms"] = wall_ms;
  return j;
}

Json graph_json(const Graph& g, std::size_t partitions) {
  return Json{{"vertices", g.vertex_count()},
              {"edges", g.edge_count()},
              {"weighted", g.weighted()},
              {"directed", g.directed()},
              {"partitions", partitions}};
}

Json config_json(const EngineConfig& c, std::size_t queries) {
  return Json{{"functor", std::string(c.functor.name())},
              {"yield", c.yield.to_string()},
              {"K", c.bucket_count > 0 ? c.bucket_count : default_bucket_count(c.worker_count, queries)},
              {"workers", c.worker_count},
              {"consolidation", c.consolidation == ConsolidationMethod::kSort ? "sort" : "scan"},
              {"seed", c.seed}};
}

Json finite_or_null(double value) { return std::isfinite(value) ? Json(value) : Json(); }

std::string csv_number(double value) {
  if (!std::isfinite(value)) return "inf";
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

// --- partition ------------------------------------------------------------------

struct PartitionCommand {
  GraphOptions graph;
  PartitionOptions part;
  OutputOptions output;
  std::uint64_t seed = 0;
};

int cmd_partition(const PartitionCommand& cmd, std::ostream& out) {
  const Graph graph = load_graph(cmd.graph, cmd.seed, false);
  const PartitionPlan plan = make_plan(graph, cmd.graph, cmd.part, cmd.seed);
  const auto partitions = build_partitions(graph, plan);

  std::ostringstream file;
  write_partition(file, plan);
  if (!cmd.output.path.empty()) {
    write_output(cmd.output, file.str(), out);
  }

  std::size_t cut = 0;
  for (const Partition& p : partitions) cut += p.cut_edge_count();
  const std::size_t per_edge = sizeof(VertexId) + (graph.weighted() ? sizeof(Weight) : 0);
  out << "vertices " << graph.vertex_count() << " edges " << graph.edge_count() << " bytes "
      << graph.byte_size() << "\n";
  out << "partitions " << plan.partition_count() << " cut_edges " << cut << " cache_bytes "
      << cmd.part.cache_bytes << "\n";
  out << "partition,vertices,edges,est_bytes,fits\n";
  for (const Partition& p : partitions) {
    const std::size_t bytes = (p.vertex_count() + 1) * sizeof(EdgeIndex) + p.edge_count() * per_edge;
    out << p.id() << ',' << p.vertex_count() << ',' << p.edge_count() << ',' << bytes << ','
        << (bytes <= cmd.part.cache_bytes ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

// --- run ------------------------------------------------------------------------

struct RunCommand {
  GraphOptions graph;
  PartitionOptions part;
  EngineOptions engine;
  OutputOptions output;
  std::string app = "sssp";
  std::vector<std::size_t> sources;
  std::size_t num_queries = 1;
  std::uint64_t seed = 0;
  double alpha = 0.15;
  double epsilon = 1e-6;
  std::uint32_t walk_length = 10;
  std::size_t samples = 16;
  double seed_fraction = 0.001;
  std::size_t landmarks = 16;
  std::string query_pairs;
  bool unit_weights = false;
  bool verify = false;
  bool csv = false;  // resolved output format
};

std::vector<VertexId> resolve_sources(const RunCommand& cmd, const Graph& graph) {
  if (cmd.sources.empty()) return sample_vertices(graph.vertex_count(), cmd.num_queries, cmd.seed);
  std::vector<VertexId> ids;
  for (std::size_t s : cmd.sources) {
    if (s >= graph.vertex_count()) {
      throw std::invalid_argument("source " + std::to_string(s) + " out of range");
    }
    ids.push_back(static_cast<VertexId>(s));
  }
  return ids;
}

std::vector<std::pair<VertexId, VertexId>> load_pairs(const std::string& path, const Graph& graph) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    long long u = -1, v = -1;
    if (!(fields >> u >> v) || u < 0 || v < 0 || static_cast<std::size_t>(u) >= graph.vertex_count() ||
        static_cast<std::size_t>(v) >= graph.vertex_count()) {
      throw GraphError("line " + std::to_string(line_no) + ": bad query pair");
    }
    pairs.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  return pairs;
}

struct AppOutput {
  Json results;
  std::string csv;
  RunMetrics metrics;
  std::optional<bool> verified;
};

AppOutput run_query_app(const RunCommand& cmd, const Graph& graph,
                        std::span<const Partition> partitions, const EngineConfig& config,
                        const QuerySpec& spec) {
  const auto sources = resolve_sources(cmd, graph);
  FppRun run = run_queries(graph, partitions, spec, sources, config);
  AppOutput result;
  if (cmd.verify) {
    const OracleBaseline base = compute_baseline(graph, spec, sources, config.worker_count);
    result.verified = matches_oracle(graph, run.states, base);
    run.metrics.oracle_edges = base.edges;
    if (base.edges > 0) run.metrics.work_ratio = compute_work_ratio(run.metrics, base.edges);
  }
  std::ostringstream csv;
  Json queries = Json::array();
  if (spec.kind == QueryKind::kRw) {
    csv << "query,source,step,vertex\n";
    for (const QueryState& s : run.states) {
      if (!cmd.csv) {
        queries.push_back(Json{{"query", s.id}, {"source", s.source}, {"walk", s.walk}});
        continue;
      }
      for (std::size_t i = 0; i < s.walk.size(); ++i) {
        csv << s.id << ',' << s.source << ',' << i << ',' << s.walk[i] << '\n';
      }
    }
  } else {
    csv << "query,source,vertex,value\n";
    for (const QueryState& s : run.states) {
      if (!cmd.csv) {
        Json values = Json::array();
        for (double x : s.labels) values.push_back(finite_or_null(x));
        queries.push_back(Json{{"query", s.id}, {"source", s.source}, {"values", std::move(values)}});
        continue;
      }
      for (VertexId v = 0; v < s.labels.size(); ++v) {
        const bool keep = spec.kind == QueryKind::kPpr ? s.labels[v] > 0.0 : s.labels[v] != kInfinity;
        if (keep) csv << s.id << ',' << s.source << ',' << v << ',' << csv_number(s.labels[v]) << '\n';
      }
    }
  }
  result.results = Json{{"queries", std::move(queries)}};
  result.csv = csv.str();
  result.metrics = std::move(run.metrics);
  return result;
}

AppOutput run_bc_app(const RunCommand& cmd, const Graph& graph, std::span<const Partition> partitions,
                     const EngineConfig& config) {
  const auto sources = cmd.sources.empty()
                           ? sample_vertices(graph.vertex_count(),
                                             std::min(cmd.samples, graph.vertex_count()), cmd.seed)
                           : resolve_sources(cmd, graph);
  BcResult bc = run_bc_from(graph, partitions, sources, config);
  AppOutput result;
  if (cmd.verify) {
    std::vector<double> expected(graph.vertex_count(), 0.0);
    std::uint64_t oracle_edges = 0;
    for (VertexId s : sources) {
      const DistanceResult d = graph.weighted() ? sssp_oracle(graph, s) : bfs_oracle(graph, s);
      oracle_edges += d.edges_processed;
      accumulate_dependencies(graph, s, d.labels, expected);
    }
    bool ok = true;
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
      ok = ok && std::abs(expected[v] - bc.centrality[v]) <= 1e-9 * std::max(1.0, std::abs(expected[v]));
    }
    result.verified = ok;
    bc.metrics.oracle_edges = oracle_edges;
    if (oracle_edges > 0) bc.metrics.work_ratio = compute_work_ratio(bc.metrics, oracle_edges);
  }
  std::ostringstream csv;
  csv << "vertex,centrality\n";
  for (VertexId v = 0; cmd.csv && v < graph.vertex_count(); ++v) {
    csv << v << ',' << csv_number(bc.centrality[v]) << '\n';
  }
  result.results = Json{{"sources", bc.sample_sources}, {"centrality", bc.centrality}};
  result.csv = csv.str();
  result.metrics = std::move(bc.metrics);
  return result;
}

AppOutput run_ncp_app(const RunCommand& cmd, const Graph& graph, std::span<const Partition> partitions,
                      const EngineConfig& config) {
  NcpResult ncp = cmd.sources.empty()
                      ? run_ncp(graph, partitions, cmd.seed_fraction, cmd.alpha, cmd.epsilon, cmd.seed, config)
                      : run_ncp_from(graph, partitions, resolve_sources(cmd, graph), cmd.alpha,
                                     cmd.epsilon, config);
  AppOutput result;
  if (cmd.verify) {
    const Graph undirected = graph.directed() ? graph.symmetrized() : Graph();
    const Graph& g = graph.directed() ? undirected : graph;
    bool ok = true;
    for (std::size_t q = 0; q < ncp.per_query.size(); ++q) {
      ok = ok && ncp.mass_error[q] <= 1e-9;
      const SweepCut& cut = ncp.per_query[q];
      ok = ok && std::abs(conductance(g, cut.cluster) - cut.conductance) <= 1e-12;
    }
    result.verified = ok;
  }
  std::ostringstream csv;
  csv << "size,conductance\n";
  Json curve = Json::array();
  for (const auto& [size, phi] : ncp.curve) {
    csv << size << ',' << csv_number(phi) << '\n';
    curve.push_back(Json{{"size", size}, {"conductance", phi}});
  }
  Json clusters = Json::array();
  for (const SweepCut& cut : ncp.per_query) {
    clusters.push_back(Json{{"seed", cut.seed}, {"size", cut.size}, {"conductance", cut.conductance}});
  }
  result.results = Json{{"curve", std::move(curve)}, {"clusters", std::move(clusters)}};
  result.csv = csv.str();
  result.metrics = std::move(ncp.metrics);
  return result;
}

AppOutput run_ll_app(const RunCommand& cmd, const Graph& graph, std::span<const Partition> partitions,
                     const EngineConfig& config) {
  LandmarkLabels labels =
      cmd.sources.empty()
          ? run_ll(graph, partitions, cmd.landmarks, cmd.seed, config, cmd.unit_weights)
          : run_ll_from(graph, partitions, resolve_sources(cmd, graph), config, cmd.unit_weights);
  const auto pairs = cmd.query_pairs.empty() ? std::vector<std::pair<VertexId, VertexId>>{}
                                             : load_pairs(cmd.query_pairs, graph);
  AppOutput result;
  if (cmd.verify) {
    bool ok = true;
    std::uint64_t oracle_edges = 0;
    for (std::size_t l = 0; l < labels.landmarks.size(); ++l) {
      const DistanceResult d = sssp_oracle(graph, labels.landmarks[l]);
      oracle_edges += d.edges_processed;
      ok = ok && d.labels == labels.dist[l];
    }
    result.verified = ok;
    labels.metrics.oracle_edges = oracle_edges;
    if (oracle_edges > 0) labels.metrics.work_ratio = compute_work_ratio(labels.metrics, oracle_edges);
  }
  std::ostringstream csv;
  csv << "u,v,bound\n";
  Json bounds = Json::array();
  for (const auto& [u, v] : pairs) {
    const double bound = ll_query_distance(labels, u, v);
    csv << u << ',' << v << ',' << csv_number(bound) << '\n';
    bounds.push_back(Json{{"u", u}, {"v", v}, {"bound", finite_or_null(bound)}});
  }
  result.results = Json{{"landmarks", labels.landmarks}, {"pairs", std::move(bounds)}};
  result.csv = csv.str();
  result.metrics = std::move(labels.metrics);
  return result;
}

int cmd_run(RunCommand cmd, std::ostream& out) {
  const std::string format = resolve_format(cmd.output, cmd.app == "ncp" ? "csv" : "json");
  cmd.csv = format == "csv";
  const bool weighted_default = cmd.app == "sssp" || cmd.app == "ll";
  const Graph graph = load_graph(cmd.graph, cmd.seed, weighted_default);
  const PartitionPlan plan = make_plan(graph, cmd.graph, cmd.part, cmd.seed);
  const auto partitions = build_partitions(graph, plan);
  const EngineConfig config = make_engine_config(cmd.engine, cmd.part, cmd.seed);

  const auto start = std::chrono::steady_clock::now();
  AppOutput app;
  std::size_t queries = cmd.sources.empty() ? cmd.num_queries : cmd.sources.size();
  if (cmd.app == "sssp") {
    app = run_query_app(cmd, graph, partitions, config, QuerySpec::sssp());
  } else if (cmd.app == "bfs") {
    app = run_query_app(cmd, graph, partitions, config, QuerySpec::bfs());
  } else if (cmd.app == "ppr") {
    app = run_query_app(cmd, graph, partitions, config, QuerySpec::ppr(cmd.alpha, cmd.epsilon));
  } else if (cmd.app == "rw") {
    app = run_query_app(cmd, graph, partitions, config, QuerySpec::rw(cmd.walk_length, cmd.seed));
  } else if (cmd.app == "bc") {
    app = run_bc_app(cmd, graph, partitions, config);
    queries = app.metrics.per_query.size();
  } else if (cmd.app == "ncp") {
    app = run_ncp_app(cmd, graph, partitions, config);
    queries = app.metrics.per_query.size();
  } else if (cmd.app == "ll") {
    app = run_ll_app(cmd, graph, partitions, config);
    queries = app.metrics.per_query.size();
  } else {
    throw std::invalid_argument("unknown app '" + cmd.app + "'");
  }
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (cmd.csv) {
    write_output(cmd.output, app.csv, out);
  } else {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    if (!cmd.output.no_timestamp) doc["generated_at"] = timestamp();
    doc["command"] = "run";
    doc["app"] = cmd.app;
    doc["graph"] = graph_json(graph, plan.partition_count());
    doc["config"] = config_json(config, queries);
    doc["metrics"] = metrics_json(app.metrics, !cmd.output.no_timestamp, wall_ms);
    doc["verified"] = app.verified ? Json(*app.verified) : Json();
    doc["results"] = std::move(app.results);
    write_output(cmd.output, doc.dump(2) + "\n", out);
  }
  if (app.verified && !*app.verified) throw VerificationFailure("result does not match the oracle");
  return kExitOk;
}

// --- bench ----------------------------------------------------------------------

struct BenchCommand {
  GraphOptions graph;
  PartitionOptions part;
  EngineOptions engine;
  OutputOptions output;
  std::string sweep = "schedulers";
  std::string app = "sssp";
  std::vector<std::string> functors{"priority", "fifo", "random", "max-ops"};
  std::vector<std::string> thresholds{"none", "edges:0.25", "edges:0.5", "edges:1", "edges:2", "edges:4"};
  std::vector<std::uint64_t> seeds;
  std::size_t seed_count = 1;
  std::size_t num_queries = 16;
  double alpha = 0.15;
  double epsilon = 1e-6;
};

QuerySpec bench_spec(const BenchCommand& cmd) {
  if (cmd.app == "sssp") return QuerySpec::sssp();
  if (cmd.app == "bfs") return QuerySpec::bfs();
  if (cmd.app == "ppr") return QuerySpec::ppr(cmd.alpha, cmd.epsilon);
  throw std::invalid_argument("bench supports sssp, bfs and ppr (got '" + cmd.app + "')");
}

int cmd_bench(const BenchCommand& cmd, std::ostream& out) {
  const QuerySpec spec = bench_spec(cmd);
  spec.validate();
  std::vector<std::uint64_t> seeds = cmd.seeds;
  if (seeds.empty()) {
    for (std::size_t i = 1; i <= cmd.seed_count; ++i) seeds.push_back(i);
  }
  if (seeds.empty()) throw std::invalid_argument("bench needs at least one seed");

  std::optional<Graph> fixed;
  if (cmd.graph.gen.empty()) fixed = load_graph(cmd.graph, 0, false);
  const bool weighted_default = spec.kind == QueryKind::kSssp;
  WorkloadFactory factory = [&](std::uint64_t seed) {
    BenchWorkload w;
    w.name = cmd.graph.gen.empty() ? std::filesystem::path(cmd.graph.path).filename().string() : cmd.graph.gen;
    w.graph = fixed ? *fixed : load_graph(cmd.graph, seed, weighted_default);
    w.partitions = build_partitions(w.graph, make_plan(w.graph, cmd.graph, cmd.part, seed));
    w.spec = spec;
    w.sources = sample_vertices(w.graph.vertex_count(),
                                std::min(cmd.num_queries, w.graph.vertex_count()), seed);
    return w;
  };

  BenchOptions options;
  options.bucket_count = cmd.engine.buckets;
  options.worker_count = resolve_workers(cmd.engine.workers);
  options.consolidation = make_engine_config(cmd.engine, cmd.part, 0).consolidation;

  BenchReport report;
  if (cmd.sweep == "schedulers") {
    std::vector<PriorityFunctor> functors;
    for (const auto& name : cmd.functors) functors.push_back(PriorityFunctor::parse(name));
    report = bench_schedulers(factory, seeds, YieldPolicy::parse(cmd.engine.yield), functors, options);
  } else if (cmd.sweep == "yield") {
    std::vector<YieldPolicy> thresholds;
    for (const auto& t : cmd.thresholds) thresholds.push_back(YieldPolicy::parse(t));
    report = bench_yield_sweep(factory, seeds, PriorityFunctor::parse(cmd.engine.functor), thresholds, options);
  } else {
    throw std::invalid_argument("unknown sweep '" + cmd.sweep + "' (schedulers | yield)");
  }

  ReportOptions ropts;
  ropts.include_timing = !cmd.output.no_timestamp;
  std::ostringstream payload;
  if (resolve_format(cmd.output, "csv") == "csv") {
    write_report_csv(payload, report, ropts);
  } else {
    write_report_json(payload, report, ropts);
  }
  write_output(cmd.output, payload.str(), out);
  const bool all_correct = std::all_of(report.cells.begin(), report.cells.end(),
                                       [](const BenchCell& c) { return c.correct; });
  if (!all_correct) throw VerificationFailure("at least one benchmark cell failed the oracle check");
  return kExitOk;
}

// --- convert --------------------------------------------------------------------

struct ConvertCommand {
  GraphOptions graph;
  std::string out_path;
  std::uint64_t seed = 0;
};

int cmd_convert(const ConvertCommand& cmd, std::ostream&) {
  const Graph graph = load_graph(cmd.graph, cmd.seed, false);
  std::ostringstream bytes(std::ios::binary);
  write_snapshot(bytes, graph);
  OutputOptions output;
  output.path = cmd.out_path;
  std::ostringstream sink;
  write_output(output, bytes.str(), sink);
  return kExitOk;
}

// --- Option wiring --------------------------------------------------------------

void add_graph_options(CLI::App* app, GraphOptions& g, bool require_source = true) {
  auto* path = app->add_option("--graph", g.path, "Input graph (edge list or .fppg snapshot)");
  auto* gen = app->add_option("--gen", g.gen, "Synthetic graph: grid:RxC | random:n:m | powerlaw:n:d");
  path->excludes(gen);
  if (require_source) {
    app->callback([&g] {
      if (g.path.empty() && g.gen.empty()) throw CLI::RequiredError("--graph or --gen");
    });
  }
  app->add_option("--graph-format", g.format, "auto | edgelist | snapshot")
      ->check(CLI::IsMember({"auto", "edgelist", "snapshot"}));
  app->add_flag("--weighted", g.weighted, "Edge list carries weights / generate weights");
  app->add_flag("--directed", g.directed, "Treat edge list as directed");
}

void add_partition_options(CLI::App* app, PartitionOptions& p) {
  auto* random = app->add_option("--random", p.random_k, "Random partitioning into k parts");
  auto* import = app->add_option("--import", p.import_path, "METIS-style partition file");
  auto* blocks = app->add_option("--blocks", p.blocks, "Lattice tiling into a BRxBC grid of blocks (grid only)");
  auto* automatic = app->add_flag("--auto", p.automatic, "k = ceil(graph bytes / cache budget)");
  random->excludes(import)->excludes(blocks)->excludes(automatic);
  import->excludes(blocks)->excludes(automatic);
  blocks->excludes(automatic);
  app->add_option("--cache-bytes", p.cache_bytes, "Per-partition cache budget in bytes")
      ->check(CLI::PositiveNumber);
}

void add_engine_options(CLI::App* app, EngineOptions& e) {
  app->add_option("--functor", e.functor, "random | fifo | max-ops | priority")
      ->check(CLI::IsMember({"random", "fifo", "max-ops", "priority"}));
  app->add_option("--yield", e.yield, "none | edges:MULT | band:DELTA");
  app->add_option("--workers", e.workers, "Worker threads (FPP_WORKERS overrides)")->check(CLI::PositiveNumber);
  app->add_option("--buckets", e.buckets, "Buckets per partition buffer (0 = default)");
  app->add_option("--consolidation", e.consolidation, "sort | scan")->check(CLI::IsMember({"sort", "scan"}));
}

void add_output_options(CLI::App* app, OutputOptions& o) {
  app->add_option("--out", o.path, "Output path (default stdout)");
  app->add_option("--format", o.format, "auto | json | csv")->check(CLI::IsMember({"auto", "json", "csv"}));
  app->add_flag("--no-timestamp", o.no_timestamp, "Omit timestamps and wall times from reports");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concurrent graph query engine with buffered, partition-scheduled execution", "fpp"};
  app.require_subcommand(1);

  PartitionCommand part_cmd;
  auto* part = app.add_subcommand("partition", "Partition a graph and print statistics");
  add_graph_options(part, part_cmd.graph);
  add_partition_options(part, part_cmd.part);
  part->add_option("--out", part_cmd.output.path, "Partition file to write");
  part->add_option("--seed", part_cmd.seed, "Random seed");

  RunCommand run_cmd;
  auto* run = app.add_subcommand("run", "Run an application over the engine");
  add_graph_options(run, run_cmd.graph);
  add_partition_options(run, run_cmd.part);
  add_engine_options(run, run_cmd.engine);
  add_output_options(run, run_cmd.output);
  run->add_option("--app", run_cmd.app, "sssp | bfs | ppr | rw | bc | ncp | ll")
      ->check(CLI::IsMember({"sssp", "bfs", "ppr", "rw", "bc", "ncp", "ll"}));
  run->add_option("--sources", run_cmd.sources, "Comma-separated source vertices")->delimiter(',');
  run->add_option("--num-queries", run_cmd.num_queries, "Random sources when --sources is absent")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", run_cmd.seed, "Random seed");
  run->add_option("--alpha", run_cmd.alpha, "PPR teleport probability");
  run->add_option("--epsilon", run_cmd.epsilon, "PPR push tolerance");
  run->add_option("--walk-length", run_cmd.walk_length, "Random walk length");
  run->add_option("--samples", run_cmd.samples, "BC sample sources")->check(CLI::PositiveNumber);
  run->add_option("--seed-fraction", run_cmd.seed_fraction, "NCP seed fraction of |V|");
  run->add_option("--landmarks", run_cmd.landmarks, "LL landmark count")->check(CLI::PositiveNumber);
  run->add_option("--query-pairs", run_cmd.query_pairs, "LL query pairs file (u v per line)");
  run->add_flag("--unit-weights", run_cmd.unit_weights, "Allow LL on unweighted graphs");
  run->add_flag("--verify", run_cmd.verify, "Check results against sequential oracles");

  BenchCommand bench_cmd;
  auto* bench = app.add_subcommand("bench", "Scheduler or yield sweeps with oracle checks");
  add_graph_options(bench, bench_cmd.graph);
  add_partition_options(bench, bench_cmd.part);
  add_engine_options(bench, bench_cmd.engine);
  add_output_options(bench, bench_cmd.output);
  bench->add_option("--sweep", bench_cmd.sweep, "schedulers | yield")
      ->check(CLI::IsMember({"schedulers", "yield"}));
  bench->add_option("--app", bench_cmd.app, "sssp | bfs | ppr")->check(CLI::IsMember({"sssp", "bfs", "ppr"}));
  bench->add_option("--functors", bench_cmd.functors, "Functors for the scheduler sweep")->delimiter(',');
  bench->add_option("--thresholds", bench_cmd.thresholds, "Yield policies for the yield sweep")->delimiter(',');
  bench->add_option("--seeds", bench_cmd.seeds, "Explicit seeds")->delimiter(',');
  bench->add_option("--seed-count", bench_cmd.seed_count, "Seeds 1..N when --seeds is absent");
  bench->add_option("--num-queries", bench_cmd.num_queries, "Queries per workload")->check(CLI::PositiveNumber);
  bench->add_option("--alpha", bench_cmd.alpha, "PPR teleport probability");
  bench->add_option("--epsilon", bench_cmd.epsilon, "PPR push tolerance");

  ConvertCommand convert_cmd;
  auto* convert = app.add_subcommand("convert", "Write a binary graph snapshot");
  add_graph_options(convert, convert_cmd.graph);
  convert->add_option("--out", convert_cmd.out_path, "Snapshot path")->required();
  convert->add_option("--seed", convert_cmd.seed, "Generator seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*part) return cmd_partition(part_cmd, out);
    if (*run) return cmd_run(run_cmd, out);
    if (*bench) return cmd_bench(bench_cmd, out);
    if (*convert) return cmd_convert(convert_cmd, out);
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerify;
  } catch (const GraphError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fpp::cli
