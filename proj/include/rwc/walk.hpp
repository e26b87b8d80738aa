#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rwc/error.hpp"
#include "rwc/graph.hpp"
#include "rwc/parallel.hpp"

namespace rwc {

enum class EdgeMode {
  symmetrized,   // step to any out- or in-neighbor
  directed_out,  // step along out-edges only (towards followees)
};

inline const char* to_string(EdgeMode mode) {
  return mode == EdgeMode::symmetrized ? "symmetrized" : "directed_out";
}

inline EdgeMode parse_edge_mode(const std::string& text) {
  if (text == "symmetrized") return EdgeMode::symmetrized;
  if (text == "directed_out") return EdgeMode::directed_out;
  throw InputError("unknown edge mode '" + text + "'");
}

struct WalkConfig {
  std::size_t walks_per_side = 10'000;
  std::size_t hub_count_per_side = 10;
  std::optional<std::size_t> max_steps;  // unset: 10 x node_count
  std::uint64_t seed = 0;
  EdgeMode edge_mode = EdgeMode::symmetrized;
  unsigned threads = 1;  // does not affect results

  void validate() const {
    if (walks_per_side < 1) throw InputError("walks_per_side must be >= 1");
    if (hub_count_per_side < 1) throw InputError("hub_count_per_side must be >= 1");
    if (max_steps && *max_steps < 1) throw InputError("max_steps must be >= 1");
  }

  std::size_t step_limit(std::size_t node_count) const {
    return max_steps ? *max_steps : std::max<std::size_t>(1, 10 * node_count);
  }
};

/// Absorbing high in-degree users of each side.
struct HubSet {
  std::vector<NodeId> x;
  std::vector<NodeId> y;
};

/// Top-k nodes by in-degree within each labeled side, ties to the lower id.
/// Unassigned nodes are never hubs.
inline HubSet select_hubs(const DirectedGraph& graph, const PartitionLabeling& labeling,
                          std::size_t k_hub) {
  if (labeling.size() != graph.node_count())
    throw InputError("labeling size does not match graph");
  auto top = [&](Side side) {
    std::vector<NodeId> nodes = labeling.members(side);
    if (nodes.empty())
      throw DegeneratePartitionError(std::string("partition side ") + to_string(side) + " is empty");
    const std::size_t k = std::min(k_hub, nodes.size());
    std::partial_sort(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(k), nodes.end(),
                      [&](NodeId a, NodeId b) {
                        const auto da = graph.in_degree(a);
                        const auto db = graph.in_degree(b);
                        return da != db ? da > db : a < b;
                      });
    nodes.resize(k);
    return nodes;
  };
  return HubSet{top(Side::X), top(Side::Y)};
}

enum class WalkOutcome : std::uint8_t { EndedInX, EndedInY, Discarded };

/// Compressed neighbor lists for the walk, plus per-node absorption side and
/// start sets. Built once per (graph, labeling, hubs, mode) and shared
/// read-only by every walker.
class WalkGraph {
 public:
  WalkGraph(const DirectedGraph& graph, const PartitionLabeling& labeling, const HubSet& hubs,
            EdgeMode mode, unsigned threads = 1)
      : hubs_(hubs), terminal_(graph.node_count(), Side::Unassigned) {
    const std::size_t n = graph.node_count();
    if (labeling.size() != n) throw InputError("labeling size does not match graph");
    for (NodeId h : hubs.x) terminal_[h] = Side::X;
    for (NodeId h : hubs.y) terminal_[h] = Side::Y;
    starts_x_ = labeling.members(Side::X);
    starts_y_ = labeling.members(Side::Y);

    // Per-node neighbor lists are independent, so they are built in parallel
    // and then concatenated in node order.
    std::vector<std::vector<NodeId>> lists(n);
    parallel_for(n, threads, [&](std::size_t v) {
      auto& list = lists[v];
      const auto out = graph.out_neighbors(static_cast<NodeId>(v));
      list.assign(out.begin(), out.end());
      if (mode == EdgeMode::symmetrized) {
        const auto in = graph.in_neighbors(static_cast<NodeId>(v));
        list.insert(list.end(), in.begin(), in.end());
      }
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    });
    offsets_.resize(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + lists[v].size();
    targets_.resize(offsets_[n]);
    for (std::size_t v = 0; v < n; ++v)
      std::copy(lists[v].begin(), lists[v].end(), targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]));
  }

  std::size_t node_count() const noexcept { return terminal_.size(); }
  const HubSet& hubs() const noexcept { return hubs_; }
  Side terminal(NodeId v) const { return terminal_[v]; }
  const std::vector<NodeId>& starts(Side side) const { return side == Side::X ? starts_x_ : starts_y_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  template <typename Rng>
  WalkOutcome walk(NodeId start, std::size_t max_steps, Rng& rng) const {
    NodeId current = start;
    for (std::size_t step = 0;; ++step) {
      if (terminal_[current] == Side::X) return WalkOutcome::EndedInX;
      if (terminal_[current] == Side::Y) return WalkOutcome::EndedInY;
      if (step == max_steps) return WalkOutcome::Discarded;
      const std::size_t begin = offsets_[current];
      const std::size_t degree = offsets_[current + 1] - begin;
      if (degree == 0) return WalkOutcome::Discarded;
      std::uniform_int_distribution<std::size_t> pick(0, degree - 1);
      current = targets_[begin + pick(rng)];
    }
  }

 private:
  HubSet hubs_;
  std::vector<Side> terminal_;
  std::vector<NodeId> starts_x_;
  std::vector<NodeId> starts_y_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// Single walk from `start` with its own seed. Convenience entry point; the
/// estimator reuses one WalkGraph for all walks.
inline WalkOutcome run_walk(const DirectedGraph& graph, const PartitionLabeling& labeling,
                            const HubSet& hubs, NodeId start, const WalkConfig& config,
                            std::uint64_t walk_seed) {
  if (start >= graph.node_count() || labeling[start] == Side::Unassigned)
    throw InputError("walk start must be an X- or Y-labeled node");
  const WalkGraph walk_graph(graph, labeling, hubs, config.edge_mode);
  std::mt19937_64 rng(walk_seed);
  return walk_graph.walk(start, config.step_limit(graph.node_count()), rng);
}

}  // namespace rwc
