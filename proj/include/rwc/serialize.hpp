#pragma once

#include <charconv>
#include <ostream>
#include <string>

#include "json.hpp"
#include "rwc/estimator.hpp"
#include "rwc/graph.hpp"
#include "rwc/selection.hpp"
#include "rwc/simulation.hpp"

namespace rwc {

/// Shortest decimal text that round-trips to the same double.
inline std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

inline nlohmann::ordered_json to_json(const RwcEstimate& e) {
  return {{"p_xx", e.p_xx},
          {"p_xy", e.p_xy},
          {"p_yx", e.p_yx},
          {"p_yy", e.p_yy},
          {"rwc", e.rwc},
          {"stderr_rwc", e.stderr_rwc},
          {"completed_walks_x", e.completed_walks_x},
          {"completed_walks_y", e.completed_walks_y},
          {"discarded_walks", e.discarded_walks}};
}

inline nlohmann::ordered_json to_json(const WalkConfig& c) {
  nlohmann::ordered_json j{{"walks_per_side", c.walks_per_side},
                           {"hub_count_per_side", c.hub_count_per_side},
                           {"max_steps", nullptr},
                           {"seed", c.seed},
                           {"edge_mode", to_string(c.edge_mode)}};
  if (c.max_steps) j["max_steps"] = *c.max_steps;
  return j;
}

inline nlohmann::ordered_json to_json(const AdditionPlan& plan) {
  nlohmann::ordered_json selected = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < plan.selected.size(); ++i) {
    const auto& s = plan.selected[i];
    selected.push_back({{"i", i + 1},
                        {"node", s.external_id},
                        {"delta_rwc", s.delta_rwc},
                        {"cumulative_rwc", plan.cumulative_rwc[i]}});
  }
  return {{"baseline_rwc", plan.baseline_rwc},
          {"requested", plan.requested},
          {"evaluated", plan.evaluated},
          {"pool_exhausted", plan.pool_exhausted},
          {"selected", selected},
          {"cumulative_rwc", plan.cumulative_rwc}};
}

/// i,node,delta_rwc,cumulative_rwc with i starting at 1.
inline void write_plan_csv(std::ostream& out, const AdditionPlan& plan) {
  out << "i,node,delta_rwc,cumulative_rwc\n";
  for (std::size_t i = 0; i < plan.selected.size(); ++i)
    out << i + 1 << ',' << plan.selected[i].external_id << ',' << format_double(plan.selected[i].delta_rwc) << ','
        << format_double(plan.cumulative_rwc[i]) << '\n';
}

inline nlohmann::ordered_json to_json(const std::vector<BaselineRow>& rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : rows) out.push_back({{"strategy", to_string(r.strategy)}, {"k", r.k}, {"rwc", r.rwc}});
  return out;
}

inline void write_baseline_csv(std::ostream& out, const std::vector<BaselineRow>& rows) {
  out << "strategy,k,rwc\n";
  for (const auto& r : rows) out << to_string(r.strategy) << ',' << r.k << ',' << format_double(r.rwc) << '\n';
}

inline nlohmann::ordered_json to_json(const UnfollowCurve& c) {
  return {{"baseline_rwc", c.baseline_rwc},
          {"augmented_rwc", c.augmented_rwc},
          {"removal_fractions", c.removal_fractions},
          {"mean_rwc", c.rwc_values},
          {"min_rwc", c.min_rwc},
          {"max_rwc", c.max_rwc}};
}

inline void write_unfollow_csv(std::ostream& out, const UnfollowCurve& c) {
  out << "fraction,mean_rwc,min_rwc,max_rwc\n";
  for (std::size_t i = 0; i < c.removal_fractions.size(); ++i)
    out << format_double(c.removal_fractions[i]) << ',' << format_double(c.rwc_values[i]) << ','
        << format_double(c.min_rwc[i]) << ',' << format_double(c.max_rwc[i]) << '\n';
}

}  // namespace rwc
