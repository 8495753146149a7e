#include "fpp/yield.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fpp {

YieldPolicy YieldPolicy::parse(std::string_view text) {
  if (text == "none") return none();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("yield policy must be none, edges:<m> or band:<delta>");
  }
  const auto head = text.substr(0, colon);
  const std::string tail(text.substr(colon + 1));
  double value = 0;
  std::size_t used = 0;
  try {
    value = std::stod(tail, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != tail.size()) {
    throw std::invalid_argument("malformed yield parameter '" + tail + "'");
  }
  YieldPolicy policy;
  if (head == "edges") policy = edge_budget(value);
  else if (head == "band") policy = value_band(value);
  else throw std::invalid_argument("unknown yield policy '" + std::string(head) + "'");
  policy.validate();
  return policy;
}

std::string YieldPolicy::to_string() const {
  std::ostringstream out;
  switch (mode) {
    case Mode::kNone: return "none";
    case Mode::kEdgeBudget: out << "edges:" << parameter; break;
    case Mode::kValueBand: out << "band:" << parameter; break;
  }
  return out.str();
}

void YieldPolicy::validate() const {
  if (mode != Mode::kNone && !(parameter > 0.0 && std::isfinite(parameter))) {
    throw std::invalid_argument("yield parameter must be positive and finite");
  }
}

std::uint64_t edge_budget_for(double multiplier, std::uint64_t partition_edges,
                              std::uint64_t query_count) {
  if (query_count == 0) throw std::invalid_argument("query count must be >= 1");
  if (!(multiplier > 0.0)) throw std::invalid_argument("edge budget multiplier must be positive");
  const double budget =
      std::ceil(multiplier * static_cast<double>(partition_edges) / static_cast<double>(query_count));
  return budget < 1.0 ? 1 : static_cast<std::uint64_t>(budget);
}

YieldCheck make_yield_check(const YieldPolicy& policy, const Partition& partition,
                            std::uint64_t query_count, double first_value, QueryKind kind) {
  policy.validate();
  if (query_count == 0) throw std::invalid_argument("query count must be >= 1");
  std::uint64_t budget = 0;
  if (policy.mode == YieldPolicy::Mode::kEdgeBudget) {
    budget = edge_budget_for(policy.parameter, partition.edge_count(), query_count);
  }
  return YieldCheck(policy, kind, budget, first_value);
}

}  // namespace fpp
