#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fpp/operation.hpp"
#include "fpp/partition.hpp"

namespace fpp {

/// When a query stops early inside a partition.
///  - EdgeBudget(m): after ceil(m * |E_P| / |Q|) edges this pass.
///  - ValueBand(d): SSSP/BFS once the next value leaves [first, first + d);
///    PPR once the next residual drops below first / d.
struct YieldPolicy {
  enum class Mode : std::uint8_t { kNone, kEdgeBudget, kValueBand };

  Mode mode = Mode::kNone;
  double parameter = 0.0;

  static YieldPolicy none() { return {}; }
  static YieldPolicy edge_budget(double multiplier) { return {Mode::kEdgeBudget, multiplier}; }
  static YieldPolicy value_band(double delta) { return {Mode::kValueBand, delta}; }

  /// Accepts "none", "edges:<multiplier>", "band:<delta>".
  static YieldPolicy parse(std::string_view text);
  std::string to_string() const;
  void validate() const;

  friend bool operator==(const YieldPolicy&, const YieldPolicy&) = default;
};

/// Yield predicate for one query's run inside one partition pass.
class YieldCheck {
 public:
  YieldCheck() = default;
  YieldCheck(YieldPolicy policy, QueryKind kind, std::uint64_t edge_budget, double first_value)
      : policy_(policy), kind_(kind), edge_budget_(edge_budget), first_value_(first_value) {}

  /// `edges` is the count processed this pass, `next_value` the priority
  /// value of the operation about to run.
  bool operator()(std::uint64_t edges, double next_value) const {
    switch (policy_.mode) {
      case YieldPolicy::Mode::kNone:
        return false;
      case YieldPolicy::Mode::kEdgeBudget:
        return edges >= edge_budget_;
      case YieldPolicy::Mode::kValueBand:
        if (kind_ == QueryKind::kRw) return false;
        if (prefers_smaller(kind_)) return next_value >= first_value_ + policy_.parameter;
        return next_value < first_value_ / policy_.parameter;
    }
    return false;
  }

  std::uint64_t edge_budget() const { return edge_budget_; }
  double first_value() const { return first_value_; }
  const YieldPolicy& policy() const { return policy_; }

 private:
  YieldPolicy policy_;
  QueryKind kind_ = QueryKind::kSssp;
  std::uint64_t edge_budget_ = 0;
  double first_value_ = 0.0;
};

/// ceil(multiplier * partition_edges / query_count), at least 1.
std::uint64_t edge_budget_for(double multiplier, std::uint64_t partition_edges,
                              std::uint64_t query_count);

YieldCheck make_yield_check(const YieldPolicy& policy, const Partition& partition,
                            std::uint64_t query_count, double first_value, QueryKind kind);

}  // namespace fpp
