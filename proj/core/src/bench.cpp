#include "fpp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fpp {

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kMassTolerance = 1e-9;

std::string format_ratio(double value) {
  std::ostringstream out;
  out << std::setprecision(10) << value;
  return out.str();
}

}  // namespace

OracleBaseline compute_baseline(const Graph& graph, const QuerySpec& spec,
                                std::span<const VertexId> sources, std::size_t worker_count) {
  OracleBaseline base;
  const std::size_t q = sources.size();
  switch (spec.kind) {
    case QueryKind::kSssp:
    case QueryKind::kBfs:
      base.distances.resize(q);
      break;
    case QueryKind::kPpr:
      base.ppr.resize(q);
      break;
    case QueryKind::kRw:
      base.walks.resize(q);
      break;
  }
  std::vector<std::uint64_t> edges(q, 0);
#pragma omp parallel for num_threads(static_cast<int>(worker_count)) schedule(dynamic, 1)
  for (std::size_t i = 0; i < q; ++i) {
    switch (spec.kind) {
      case QueryKind::kSssp:
        base.distances[i] = sssp_oracle(graph, sources[i]);
        edges[i] = base.distances[i].edges_processed;
        break;
      case QueryKind::kBfs:
        base.distances[i] = bfs_oracle(graph, sources[i]);
        edges[i] = base.distances[i].edges_processed;
        break;
      case QueryKind::kPpr:
        base.ppr[i] = ppr_oracle(graph, sources[i], spec.alpha, spec.epsilon);
        edges[i] = base.ppr[i].edges_processed;
        break;
      case QueryKind::kRw:
        base.walks[i] = rw_oracle(graph, sources[i], spec.walk_length, spec.rng_seed);
        edges[i] = base.walks[i].size() - 1;
        break;
    }
  }
  base.edges = std::accumulate(edges.begin(), edges.end(), std::uint64_t{0});
  return base;
}

bool matches_oracle(const Graph& graph, std::span<const QueryState> states,
                    const OracleBaseline& baseline) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    const QueryState& s = states[i];
    switch (s.spec.kind) {
      case QueryKind::kSssp:
      case QueryKind::kBfs:
        if (i >= baseline.distances.size() || s.labels != baseline.distances[i].labels) return false;
        break;
      case QueryKind::kPpr: {
        const double mass = std::accumulate(s.labels.begin(), s.labels.end(), 0.0) +
                            std::accumulate(s.residual.begin(), s.residual.end(), 0.0);
        if (!(std::abs(mass - 1.0) <= kMassTolerance)) return false;
        for (VertexId v = 0; v < graph.vertex_count(); ++v) {
          const double deg = static_cast<double>(graph.degree(v));
          if (!(s.residual[v] < s.spec.epsilon * deg) && s.residual[v] != 0.0) return false;
        }
        break;
      }
      case QueryKind::kRw:
        if (i >= baseline.walks.size() || s.walk != baseline.walks[i]) return false;
        break;
    }
  }
  return true;
}

NaiveRun run_naive_concurrent(const Graph& graph, const QuerySpec& spec,
                              std::span<const VertexId> sources, std::size_t worker_count) {
  OracleBaseline base = compute_baseline(graph, spec, sources, worker_count);
  NaiveRun run;
  run.edges_processed = base.edges;
  for (auto& d : base.distances) run.labels.push_back(std::move(d.labels));
  for (auto& p : base.ppr) run.labels.push_back(std::move(p.p));
  run.walks = std::move(base.walks);
  return run;
}

BenchCell run_cell(const BenchWorkload& workload, const OracleBaseline& baseline,
                   const EngineConfig& config, std::uint64_t seed) {
  BenchCell cell;
  cell.workload = workload.name;
  cell.functor = std::string(config.functor.name());
  cell.yield = config.yield.to_string();
  cell.bucket_count = config.bucket_count > 0
                          ? config.bucket_count
                          : default_bucket_count(config.worker_count, workload.sources.size());
  cell.worker_count = config.worker_count;
  cell.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  FppRun run = run_queries(workload.graph, workload.partitions, workload.spec, workload.sources, config);
  cell.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  cell.correct = matches_oracle(workload.graph, run.states, baseline);
  cell.oracle_edges = baseline.edges;
  run.metrics.oracle_edges = baseline.edges;
  if (cell.correct && baseline.edges > 0) {
    run.metrics.work_ratio = compute_work_ratio(run.metrics, baseline.edges);
    cell.work_ratio = run.metrics.work_ratio;
  }
  cell.metrics = std::move(run.metrics);
  return cell;
}

BenchReport bench_schedulers(const WorkloadFactory& make_workload, std::span<const std::uint64_t> seeds,
                             const YieldPolicy& yield, std::span<const PriorityFunctor> functors,
                             const BenchOptions& options) {
  if (functors.size() < 2) throw std::invalid_argument("scheduler comparison needs >= 2 functors");
  BenchReport report;
  for (std::uint64_t seed : seeds) {
    const BenchWorkload workload = make_workload(seed);
    const OracleBaseline baseline =
        compute_baseline(workload.graph, workload.spec, workload.sources, options.worker_count);
    for (PriorityFunctor functor : functors) {
      if (functor.policy == PriorityFunctor::Policy::kRandom) functor.seed = seed;
      EngineConfig config;
      config.functor = functor;
      config.yield = yield;
      config.bucket_count = options.bucket_count;
      config.worker_count = options.worker_count;
      config.consolidation = options.consolidation;
      config.seed = seed;
      report.cells.push_back(run_cell(workload, baseline, config, seed));
    }
  }
  return report;
}

BenchReport bench_yield_sweep(const WorkloadFactory& make_workload, std::span<const std::uint64_t> seeds,
                              const PriorityFunctor& functor, std::span<const YieldPolicy> thresholds,
                              const BenchOptions& options) {
  if (thresholds.empty()) throw std::invalid_argument("yield sweep needs at least one threshold");
  BenchReport report;
  for (std::uint64_t seed : seeds) {
    const BenchWorkload workload = make_workload(seed);
    const OracleBaseline baseline =
        compute_baseline(workload.graph, workload.spec, workload.sources, options.worker_count);
    for (const YieldPolicy& yield : thresholds) {
      EngineConfig config;
      config.functor = functor;
      if (config.functor.policy == PriorityFunctor::Policy::kRandom) config.functor.seed = seed;
      config.yield = yield;
      config.bucket_count = options.bucket_count;
      config.worker_count = options.worker_count;
      config.consolidation = options.consolidation;
      config.seed = seed;
      report.cells.push_back(run_cell(workload, baseline, config, seed));
    }
  }
  return report;
}

SchedulerSummary summarize_schedulers(const BenchReport& report) {
  // seed -> functor -> ops_executed
  std::map<std::uint64_t, std::map<std::string, std::uint64_t>> ops;
  for (const BenchCell& cell : report.cells) ops[cell.seed][cell.functor] = cell.metrics.ops_executed;
  SchedulerSummary summary;
  std::size_t le_fifo = 0, chain = 0, max_unique = 0;
  for (const auto& [seed, by] : ops) {
    ++summary.seeds;
    const auto get = [&](const char* name) -> std::optional<std::uint64_t> {
      auto it = by.find(name);
      return it == by.end() ? std::nullopt : std::optional(it->second);
    };
    const auto prio = get("priority"), fifo = get("fifo"), rnd = get("random"), maxo = get("max-ops");
    if (prio && fifo && *prio <= *fifo) {
      ++le_fifo;
      if (rnd && *fifo <= *rnd) ++chain;
    }
    if (maxo) {
      const bool unique_min = std::all_of(by.begin(), by.end(), [&](const auto& kv) {
        return kv.first == "max-ops" || *maxo < kv.second;
      });
      if (unique_min && by.size() > 1) ++max_unique;
    }
  }
  if (summary.seeds > 0) {
    const double n = static_cast<double>(summary.seeds);
    summary.priority_le_fifo = static_cast<double>(le_fifo) / n;
    summary.priority_le_fifo_le_random = static_cast<double>(chain) / n;
    summary.max_ops_unique_min = static_cast<double>(max_unique) / n;
  }
  return summary;
}

void write_report_csv(std::ostream& out, const BenchReport& report, const ReportOptions& options) {
  out << "workload,functor,yield,K,workers,seed,ops_executed,edges_processed,work_ratio,"
         "partition_visits,yields,correct";
  if (options.include_timing) out << ",wall_ms";
  out << '\n';
  for (const BenchCell& c : report.cells) {
    out << c.workload << ',' << c.functor << ',' << c.yield << ',' << c.bucket_count << ','
        << c.worker_count << ',' << c.seed << ',' << c.metrics.ops_executed << ','
        << c.metrics.edges_processed << ',' << (c.correct ? format_ratio(c.work_ratio) : "") << ','
        << c.metrics.partition_visits << ',' << c.metrics.yields << ','
        << (c.correct ? "true" : "false");
    if (options.include_timing) out << ',' << format_ratio(c.wall_ms);
    out << '\n';
  }
}

void write_report_json(std::ostream& out, const BenchReport& report, const ReportOptions& options) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  auto rows = nlohmann::ordered_json::array();
  for (const BenchCell& c : report.cells) {
    nlohmann::ordered_json row;
    row["workload"] = c.workload;
    row["functor"] = c.functor;
    row["yield"] = c.yield;
    row["K"] = c.bucket_count;
    row["workers"] = c.worker_count;
    row["seed"] = c.seed;
    row["ops_executed"] = c.metrics.ops_executed;
    row["edges_processed"] = c.metrics.edges_processed;
    row["work_ratio"] = c.correct ? nlohmann::ordered_json(c.work_ratio) : nlohmann::ordered_json();
    row["partition_visits"] = c.metrics.partition_visits;
    row["yields"] = c.metrics.yields;
    row["correct"] = c.correct;
    row["oracle_edges"] = c.oracle_edges;
    row["scheduling_steps"] = c.metrics.scheduling_steps;
    if (options.include_timing) row["wall_ms"] = c.wall_ms;
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  const SchedulerSummary s = summarize_schedulers(report);
  doc["summary"] = {{"seeds", s.seeds},
                    {"priority_le_fifo", s.priority_le_fifo},
                    {"priority_le_fifo_le_random", s.priority_le_fifo_le_random},
                    {"max_ops_unique_min", s.max_ops_unique_min}};
  out << doc.dump(2) << '\n';
}

}  // namespace fpp
