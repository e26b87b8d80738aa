#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rwc/error.hpp"

namespace rwc {

using NodeId = std::uint32_t;

enum class Side : std::uint8_t { X, Y, Unassigned };

inline const char* to_string(Side side) {
  switch (side) {
    case Side::X: return "X";
    case Side::Y: return "Y";
    case Side::Unassigned: return "Unassigned";
  }
  return "?";
}

/// Directed follow graph. An edge u -> v means "u follows v". Node ids are
/// dense indices; every node also carries an external string identifier.
/// The graph is kept simple: no self-loops, no parallel edges.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// n nodes named "0" .. "n-1".
  explicit DirectedGraph(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) add_node(std::to_string(i));
  }

  NodeId add_node(std::string external_id) {
    if (index_.contains(external_id))
      throw InputError("duplicate node '" + external_id + "'");
    const auto id = static_cast<NodeId>(names_.size());
    index_.emplace(external_id, id);
    names_.push_back(std::move(external_id));
    out_.emplace_back();
    in_.emplace_back();
    return id;
  }

  /// Returns the id of `external_id`, creating the node if needed.
  NodeId intern(std::string_view external_id) {
    if (auto it = index_.find(std::string(external_id)); it != index_.end()) return it->second;
    return add_node(std::string(external_id));
  }

  /// Adds u -> v. Returns false (and changes nothing) for self-loops and
  /// edges that already exist.
  bool add_edge(NodeId u, NodeId v) {
    check(u);
    check(v);
    if (u == v || has_edge(u, v)) return false;
    out_[u].push_back(v);
    in_[v].push_back(u);
    ++edges_;
    return true;
  }

  bool remove_edge(NodeId u, NodeId v) {
    check(u);
    check(v);
    auto& out = out_[u];
    auto it = std::find(out.begin(), out.end(), v);
    if (it == out.end()) return false;
    out.erase(it);
    auto& in = in_[v];
    in.erase(std::find(in.begin(), in.end(), u));
    --edges_;
    return true;
  }

  bool has_edge(NodeId u, NodeId v) const {
    const auto& out = out_[u];
    const auto& in = in_[v];
    // scan the shorter list
    if (out.size() <= in.size()) return std::find(out.begin(), out.end(), v) != out.end();
    return std::find(in.begin(), in.end(), u) != in.end();
  }

  std::size_t node_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  bool empty() const noexcept { return names_.empty(); }

  std::span<const NodeId> out_neighbors(NodeId v) const { return out_.at(v); }
  std::span<const NodeId> in_neighbors(NodeId v) const { return in_.at(v); }
  std::size_t out_degree(NodeId v) const { return out_.at(v).size(); }
  std::size_t in_degree(NodeId v) const { return in_.at(v).size(); }

  const std::string& external_id(NodeId v) const { return names_.at(v); }

  std::optional<NodeId> find(std::string_view external_id) const {
    if (auto it = index_.find(std::string(external_id)); it != index_.end()) return it->second;
    return std::nullopt;
  }

  /// Full scan of the out/in mirror invariant plus simplicity.
  bool is_consistent() const {
    const std::size_t n = node_count();
    if (out_.size() != n || in_.size() != n || index_.size() != n) return false;
    std::size_t out_total = 0;
    std::size_t in_total = 0;
    for (NodeId u = 0; u < n; ++u) {
      std::vector<NodeId> sorted = out_[u];
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
      for (NodeId v : out_[u]) {
        if (v >= n || v == u) return false;
        if (std::count(in_[v].begin(), in_[v].end(), u) != 1) return false;
      }
      out_total += out_[u].size();
      in_total += in_[u].size();
    }
    return out_total == edges_ && in_total == edges_;
  }

 private:
  void check(NodeId v) const {
    if (v >= node_count()) throw InputError("node id " + std::to_string(v) + " out of range");
  }

  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
  std::size_t edges_ = 0;
};

class PartitionLabeling {
 public:
  PartitionLabeling() = default;
  explicit PartitionLabeling(std::vector<Side> labels) : labels_(std::move(labels)) {}
  explicit PartitionLabeling(std::size_t n, Side fill = Side::Unassigned) : labels_(n, fill) {}

  Side operator[](NodeId v) const { return labels_.at(v); }
  void set(NodeId v, Side side) { labels_.at(v) = side; }
  void push_back(Side side) { labels_.push_back(side); }

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t count(Side side) const {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), side));
  }

  std::vector<NodeId> members(Side side) const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < labels_.size(); ++v)
      if (labels_[v] == side) out.push_back(v);
    return out;
  }

  PartitionLabeling swapped() const {
    PartitionLabeling result = *this;
    for (auto& s : result.labels_) {
      if (s == Side::X) s = Side::Y;
      else if (s == Side::Y) s = Side::X;
    }
    return result;
  }

  const std::vector<Side>& labels() const noexcept { return labels_; }

  friend bool operator==(const PartitionLabeling&, const PartitionLabeling&) = default;

 private:
  std::vector<Side> labels_;
};

/// An outside node of the potential social graph: it is not part of G but
/// is followed by some users of G.
struct Candidate {
  NodeId id = 0;  // index in the potential-graph space: |G| + position in pool
  std::string external_id;
  std::vector<NodeId> followers;  // nodes of G following this candidate
  std::size_t followers_in_x = 0;
  std::size_t followers_in_y = 0;

  std::size_t in_degree() const noexcept { return followers.size(); }
};

using CandidatePool = std::vector<Candidate>;

/// Builds a candidate from its follower list, checking that every follower
/// is an X- or Y-labeled node of the graph and counting followers per side.
inline Candidate make_candidate(const DirectedGraph& graph, const PartitionLabeling& labeling,
                                NodeId id, std::string external_id,
                                std::vector<NodeId> followers) {
  Candidate c;
  c.id = id;
  c.external_id = std::move(external_id);
  std::sort(followers.begin(), followers.end());
  followers.erase(std::unique(followers.begin(), followers.end()), followers.end());
  for (NodeId f : followers) {
    if (f >= graph.node_count() || f >= labeling.size())
      throw InputError("candidate '" + c.external_id + "' has a follower outside the graph");
    switch (labeling[f]) {
      case Side::X: ++c.followers_in_x; break;
      case Side::Y: ++c.followers_in_y; break;
      case Side::Unassigned:
        throw InputError("candidate '" + c.external_id + "' is followed by an unlabeled node");
    }
  }
  c.followers = std::move(followers);
  return c;
}

struct Augmented {
  DirectedGraph graph;
  PartitionLabeling labeling;
  NodeId added = 0;
};

/// Adds `candidate` as a new Unassigned node with one edge f -> candidate per
/// follower f. Only in-edges are created. The inputs are not modified.
inline Augmented add_candidate(const DirectedGraph& graph, const PartitionLabeling& labeling,
                               const Candidate& candidate) {
  if (graph.find(candidate.external_id))
    throw InputError("candidate '" + candidate.external_id + "' is already in the graph");
  for (NodeId f : candidate.followers)
    if (f >= graph.node_count())
      throw InputError("candidate '" + candidate.external_id + "' has a follower outside the graph");
  Augmented result{graph, labeling, 0};
  result.added = result.graph.add_node(candidate.external_id);
  result.labeling.push_back(Side::Unassigned);
  for (NodeId f : candidate.followers) result.graph.add_edge(f, result.added);
  return result;
}

/// In-place variant used when a sequence of candidates is added jointly.
inline NodeId add_candidate_in_place(DirectedGraph& graph, PartitionLabeling& labeling,
                                     const Candidate& candidate) {
  if (graph.find(candidate.external_id))
    throw InputError("candidate '" + candidate.external_id + "' is already in the graph");
  const NodeId added = graph.add_node(candidate.external_id);
  labeling.push_back(Side::Unassigned);
  for (NodeId f : candidate.followers) graph.add_edge(f, added);
  return added;
}

/// round(fraction * in_degree) with halves rounded up.
inline std::size_t unfollow_count(std::size_t in_degree, double fraction) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(in_degree) + 0.5));
}

/// Removes round(fraction * in_degree(node)) incoming edges of `node`, chosen
/// uniformly without replacement from a stream seeded by `seed`.
inline void remove_in_edges_in_place(DirectedGraph& graph, NodeId node, double fraction,
                                     std::uint64_t seed) {
  if (node >= graph.node_count()) throw InputError("remove_in_edges: node out of range");
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw InputError("remove_in_edges: fraction must lie in [0, 1]");
  auto followers = std::vector<NodeId>(graph.in_neighbors(node).begin(),
                                       graph.in_neighbors(node).end());
  const std::size_t remove = unfollow_count(followers.size(), fraction);
  if (remove == 0) return;
  std::mt19937_64 rng(seed);
  // partial Fisher-Yates: the first `remove` slots become the sample
  for (std::size_t i = 0; i < remove; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, followers.size() - 1);
    std::swap(followers[i], followers[pick(rng)]);
    graph.remove_edge(followers[i], node);
  }
}

inline DirectedGraph remove_in_edges(const DirectedGraph& graph, NodeId node, double fraction,
                                     std::uint64_t seed) {
  DirectedGraph result = graph;
  remove_in_edges_in_place(result, node, fraction, seed);
  return result;
}

}  // namespace rwc
