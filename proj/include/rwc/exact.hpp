#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include "rwc/error.hpp"
#include "rwc/estimator.hpp"
#include "rwc/graph.hpp"
#include "rwc/walk.hpp"

namespace rwc {

inline constexpr std::size_t kExactNodeLimit = 2000;

/// Per-node absorption probabilities of the walk chain.
struct Absorption {
  std::vector<double> into_x;
  std::vector<double> into_y;
};

/// Solves the absorbing chain exactly. Hubs absorb into their side. Nodes
/// that have no neighbors, or from which no hub is reachable, absorb into
/// discard (probability 0 for both sides). The remaining transient states
/// satisfy (I - Q) h = b, solved densely with partial-pivot LU.
inline Absorption absorption_probabilities(const DirectedGraph& graph, const HubSet& hubs,
                                           EdgeMode mode) {
  const std::size_t n = graph.node_count();
  if (n > kExactNodeLimit)
    throw InputError("exact solver is limited to " + std::to_string(kExactNodeLimit) + " nodes, graph has " +
                     std::to_string(n));

  std::vector<std::vector<NodeId>> neighbors(n);
  for (NodeId v = 0; v < n; ++v) {
    auto& nb = neighbors[v];
    for (NodeId w : graph.out_neighbors(v)) nb.push_back(w);
    if (mode == EdgeMode::symmetrized)
      for (NodeId w : graph.in_neighbors(v)) nb.push_back(w);
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  enum : char { kTransient, kHubX, kHubY };
  std::vector<char> kind(n, kTransient);
  for (NodeId h : hubs.x) kind[h] = kHubX;
  for (NodeId h : hubs.y) kind[h] = kHubY;

  // Backward search from the hubs over reversed walk steps.
  std::vector<std::vector<NodeId>> reverse(n);
  for (NodeId v = 0; v < n; ++v)
    if (kind[v] == kTransient)
      for (NodeId w : neighbors[v]) reverse[w].push_back(v);
  std::vector<char> reaches(n, 0);
  std::deque<NodeId> queue;
  for (NodeId v = 0; v < n; ++v)
    if (kind[v] != kTransient) {
      reaches[v] = 1;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (NodeId u : reverse[v])
      if (!reaches[u]) {
        reaches[u] = 1;
        queue.push_back(u);
      }
  }

  std::vector<std::ptrdiff_t> row(n, -1);
  std::vector<NodeId> transient;
  for (NodeId v = 0; v < n; ++v)
    if (kind[v] == kTransient && reaches[v]) {
      row[v] = static_cast<std::ptrdiff_t>(transient.size());
      transient.push_back(v);
    }

  const auto m = static_cast<Eigen::Index>(transient.size());
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, 2);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& nb = neighbors[transient[static_cast<std::size_t>(i)]];
    const double p = 1.0 / static_cast<double>(nb.size());
    for (NodeId w : nb) {
      if (kind[w] == kHubX) rhs(i, 0) += p;
      else if (kind[w] == kHubY) rhs(i, 1) += p;
      else if (row[w] >= 0) system(i, row[w]) -= p;
    }
  }

  Absorption result{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  if (m > 0) {
    const Eigen::MatrixXd h = system.partialPivLu().solve(rhs);
    if (!h.allFinite()) throw EstimationError("absorbing-chain solve produced non-finite values");
    for (Eigen::Index i = 0; i < m; ++i) {
      result.into_x[transient[static_cast<std::size_t>(i)]] = h(i, 0);
      result.into_y[transient[static_cast<std::size_t>(i)]] = h(i, 1);
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (kind[v] == kHubX) result.into_x[v] = 1.0;
    if (kind[v] == kHubY) result.into_y[v] = 1.0;
  }
  return result;
}

/// Exact RWC: absorption probabilities averaged uniformly over each side's
/// start nodes and renormalized over the non-discarded mass. Standard errors
/// are zero; completed/discarded count start nodes rather than walks.
inline RwcEstimate exact_rwc(const DirectedGraph& graph, const PartitionLabeling& labeling,
                             std::size_t k_hub, EdgeMode mode = EdgeMode::symmetrized) {
  if (graph.empty()) throw InputError("graph is empty");
  if (k_hub < 1) throw InputError("hub_count_per_side must be >= 1");
  const HubSet hubs = select_hubs(graph, labeling, k_hub);
  const Absorption a = absorption_probabilities(graph, hubs, mode);

  double xx = 0.0, xy = 0.0, yx = 0.0, yy = 0.0;
  std::size_t done_x = 0, done_y = 0, discarded = 0;
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    const Side side = labeling[v];
    if (side == Side::Unassigned) continue;
    const bool completes = a.into_x[v] + a.into_y[v] > 0.0;
    if (side == Side::X) {
      xx += a.into_x[v];
      xy += a.into_y[v];
      done_x += completes;
    } else {
      yx += a.into_x[v];
      yy += a.into_y[v];
      done_y += completes;
    }
    discarded += !completes;
  }
  RwcEstimate e = detail::finish_estimate(xx, xy, yx, yy);
  e.completed_walks_x = done_x;
  e.completed_walks_y = done_y;
  e.discarded_walks = discarded;
  return e;
}

inline RwcEstimate exact_rwc(const DirectedGraph& graph, const PartitionLabeling& labeling,
                             const WalkConfig& config) {
  return exact_rwc(graph, labeling, config.hub_count_per_side, config.edge_mode);
}

enum class RwcMethod { automatic, exact, monte_carlo };

/// exact_rwc up to kExactNodeLimit nodes, estimate_rwc above (automatic).
inline RwcEstimate compute_rwc(const DirectedGraph& graph, const PartitionLabeling& labeling,
                               const WalkConfig& config, RwcMethod method = RwcMethod::automatic) {
  const bool exact = method == RwcMethod::exact ||
                     (method == RwcMethod::automatic && graph.node_count() <= kExactNodeLimit);
  return exact ? exact_rwc(graph, labeling, config) : estimate_rwc(graph, labeling, config);
}

}  // namespace rwc
