#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "rwc/error.hpp"
#include "rwc/graph.hpp"
#include "rwc/parallel.hpp"
#include "rwc/seed.hpp"
#include "rwc/walk.hpp"

namespace rwc {

/// Termination probabilities conditioned on completed walks per start side,
/// and the controversy score p_xx * p_yy - p_xy * p_yx.
struct RwcEstimate {
  double p_xx = 0.0;
  double p_xy = 0.0;
  double p_yx = 0.0;
  double p_yy = 0.0;
  double rwc = 0.0;
  double stderr_rwc = 0.0;
  std::size_t completed_walks_x = 0;
  std::size_t completed_walks_y = 0;
  std::size_t discarded_walks = 0;

  friend bool operator==(const RwcEstimate&, const RwcEstimate&) = default;
};

namespace detail {

// Fills probabilities and rwc from per-side absorption masses. Throws if a
// side has no completed mass.
inline RwcEstimate finish_estimate(double x_to_x, double x_to_y, double y_to_x, double y_to_y) {
  if (!(x_to_x + x_to_y > 0.0))
    throw EstimationError("no walk started in X reached a hub");
  if (!(y_to_x + y_to_y > 0.0))
    throw EstimationError("no walk started in Y reached a hub");
  RwcEstimate e;
  e.p_xx = x_to_x / (x_to_x + x_to_y);
  e.p_xy = x_to_y / (x_to_x + x_to_y);
  e.p_yx = y_to_x / (y_to_x + y_to_y);
  e.p_yy = y_to_y / (y_to_x + y_to_y);
  e.rwc = e.p_xx * e.p_yy - e.p_xy * e.p_yx;
  return e;
}

}  // namespace detail

/// Monte Carlo estimate over a prepared walk graph. Walk i (X starts are
/// 0..W-1, Y starts W..2W-1) draws its start node and every step from
/// mt19937_64(derive_seed(config.seed, i)), so the result does not depend on
/// how walks are split across threads.
inline RwcEstimate estimate_rwc(const WalkGraph& walk_graph, const WalkConfig& config) {
  config.validate();
  const auto& starts_x = walk_graph.starts(Side::X);
  const auto& starts_y = walk_graph.starts(Side::Y);
  if (starts_x.empty() || starts_y.empty())
    throw DegeneratePartitionError("both partition sides need at least one node");

  const std::size_t per_side = config.walks_per_side;
  const std::size_t max_steps = config.step_limit(walk_graph.node_count());
  const unsigned workers = std::max(1u, config.threads);

  // counts[w] = {x->X, x->Y, y->X, y->Y, discarded}
  std::vector<std::array<std::size_t, 5>> counts(workers, std::array<std::size_t, 5>{});
  parallel_chunks(2 * per_side, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
    auto& c = counts[w];
    for (std::size_t i = begin; i < end; ++i) {
      std::mt19937_64 rng(derive_seed(config.seed, static_cast<std::uint64_t>(i)));
      const bool from_x = i < per_side;
      const auto& starts = from_x ? starts_x : starts_y;
      std::uniform_int_distribution<std::size_t> pick(0, starts.size() - 1);
      const NodeId start = starts[pick(rng)];
      switch (walk_graph.walk(start, max_steps, rng)) {
        case WalkOutcome::EndedInX: ++c[from_x ? 0 : 2]; break;
        case WalkOutcome::EndedInY: ++c[from_x ? 1 : 3]; break;
        case WalkOutcome::Discarded: ++c[4]; break;
      }
    }
  });
  std::array<std::size_t, 5> total{};
  for (const auto& c : counts)
    for (std::size_t j = 0; j < 5; ++j) total[j] += c[j];

  RwcEstimate e = detail::finish_estimate(static_cast<double>(total[0]), static_cast<double>(total[1]),
                                          static_cast<double>(total[2]), static_cast<double>(total[3]));
  e.completed_walks_x = total[0] + total[1];
  e.completed_walks_y = total[2] + total[3];
  e.discarded_walks = total[4];
  // rwc = p_xx + p_yy - 1, so the delta-method variance is the sum of the
  // two independent binomial variances.
  const double var_x = e.p_xx * e.p_xy / static_cast<double>(e.completed_walks_x);
  const double var_y = e.p_yy * e.p_yx / static_cast<double>(e.completed_walks_y);
  e.stderr_rwc = std::sqrt(var_x + var_y);
  return e;
}

inline RwcEstimate estimate_rwc(const DirectedGraph& graph, const PartitionLabeling& labeling,
                                const WalkConfig& config) {
  config.validate();
  if (graph.empty()) throw InputError("graph is empty");
  const HubSet hubs = select_hubs(graph, labeling, config.hub_count_per_side);
  const WalkGraph walk_graph(graph, labeling, hubs, config.edge_mode, config.threads);
  return estimate_rwc(walk_graph, config);
}

}  // namespace rwc
