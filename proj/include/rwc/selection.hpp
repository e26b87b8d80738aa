#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rwc/error.hpp"
#include "rwc/exact.hpp"
#include "rwc/graph.hpp"
#include "rwc/parallel.hpp"
#include "rwc/walk.hpp"

namespace rwc {

/// min(x, y) / (x + y), or 0 for a node nobody follows. Ranges over [0, 0.5].
inline double neutrality_score(std::size_t followers_in_x, std::size_t followers_in_y) {
  const std::size_t total = followers_in_x + followers_in_y;
  if (total == 0) return 0.0;
  return static_cast<double>(std::min(followers_in_x, followers_in_y)) / static_cast<double>(total);
}

struct CandidateScore {
  NodeId node = 0;         // candidate id
  std::size_t index = 0;   // position in the pool
  std::size_t in_degree = 0;
  double neutrality = 0.0;
  double aggregate = 0.0;

  friend bool operator==(const CandidateScore&, const CandidateScore&) = default;
};

/// Monotone aggregation of the two ranking criteria: in-degree normalized
/// by the pool maximum, times neutrality rescaled to [0, 1].
inline double aggregate_score(std::size_t in_degree, double neutrality, std::size_t max_in_degree) {
  if (max_in_degree == 0) return 0.0;
  return (static_cast<double>(in_degree) / static_cast<double>(max_in_degree)) * (2.0 * neutrality);
}

/// Highest aggregate first, ties by ascending node id.
inline bool ranks_before(const CandidateScore& a, const CandidateScore& b) {
  return a.aggregate != b.aggregate ? a.aggregate > b.aggregate : a.node < b.node;
}

/// Top-c candidates by aggregate score using Fagin's algorithm over two
/// sorted lists (in-degree, neutrality).
///
/// Sorted access proceeds round-robin, one entry from each list per round,
/// until c candidates have been seen in both lists. Every seen candidate is
/// then completed by random access. Because output ties are broken by node
/// id, sorted access continues while the bound on unseen candidates,
/// aggregate(next in-degree, next neutrality), still reaches the c-th best
/// seen score; this makes the output identical to a full sort even on ties.
inline std::vector<CandidateScore> fagin_top_c(const CandidatePool& pool, std::size_t c) {
  if (pool.empty()) throw InputError("candidate pool is empty");
  if (c < 1) throw InputError("c must be >= 1");
  const std::size_t n = pool.size();
  c = std::min(c, n);

  std::vector<double> neutrality(n);
  for (std::size_t i = 0; i < n; ++i)
    neutrality[i] = neutrality_score(pool[i].followers_in_x, pool[i].followers_in_y);

  std::vector<std::size_t> by_degree(n), by_neutrality(n);
  for (std::size_t i = 0; i < n; ++i) by_degree[i] = by_neutrality[i] = i;
  std::sort(by_degree.begin(), by_degree.end(), [&](std::size_t a, std::size_t b) {
    const auto da = pool[a].in_degree(), db = pool[b].in_degree();
    return da != db ? da > db : pool[a].id < pool[b].id;
  });
  std::sort(by_neutrality.begin(), by_neutrality.end(), [&](std::size_t a, std::size_t b) {
    return neutrality[a] != neutrality[b] ? neutrality[a] > neutrality[b] : pool[a].id < pool[b].id;
  });
  const std::size_t max_degree = pool[by_degree.front()].in_degree();

  // bit 0: seen under in-degree order, bit 1: seen under neutrality order
  std::vector<unsigned char> seen(n, 0);
  std::vector<std::size_t> seen_order;
  std::size_t seen_in_both = 0;
  auto mark = [&](std::size_t i, unsigned char bit) {
    if (seen[i] == 0) seen_order.push_back(i);
    const bool was_both = seen[i] == 3;
    seen[i] |= bit;
    if (!was_both && seen[i] == 3) ++seen_in_both;
  };

  std::size_t depth = 0;
  while (depth < n && seen_in_both < c) {
    mark(by_degree[depth], 1);
    mark(by_neutrality[depth], 2);
    ++depth;
  }

  auto score_of = [&](std::size_t i) {
    return CandidateScore{pool[i].id, i, pool[i].in_degree(), neutrality[i],
                          aggregate_score(pool[i].in_degree(), neutrality[i], max_degree)};
  };
  auto ranked_seen = [&] {
    std::vector<CandidateScore> scores;
    scores.reserve(seen_order.size());
    for (std::size_t i : seen_order) scores.push_back(score_of(i));
    std::sort(scores.begin(), scores.end(), ranks_before);
    return scores;
  };

  std::vector<CandidateScore> scores = ranked_seen();
  while (depth < n) {
    const double bound = aggregate_score(pool[by_degree[depth]].in_degree(),
                                         neutrality[by_neutrality[depth]], max_degree);
    if (bound < scores[c - 1].aggregate) break;
    mark(by_degree[depth], 1);
    mark(by_neutrality[depth], 2);
    ++depth;
    scores = ranked_seen();
  }
  scores.resize(c);
  return scores;
}

struct CandidateDelta {
  NodeId node = 0;
  std::size_t index = 0;  // position in the pool
  double delta_rwc = 0.0;
};

/// delta_rwc = RWC(G) - RWC(G + candidate) for each listed candidate, with
/// the same walk configuration (and hub reselection) on every graph.
/// Evaluations run concurrently when config.threads > 1; each one then
/// computes on a single thread, so results match the sequential run.
inline std::vector<CandidateDelta> evaluate_candidates(const DirectedGraph& graph,
                                                       const PartitionLabeling& labeling,
                                                       const CandidatePool& pool,
                                                       const std::vector<CandidateScore>& candidates,
                                                       const WalkConfig& config,
                                                       RwcMethod method = RwcMethod::automatic,
                                                       const RwcEstimate* baseline = nullptr) {
  const double base = baseline ? baseline->rwc : compute_rwc(graph, labeling, config, method).rwc;
  WalkConfig inner = config;
  const unsigned outer = std::max(1u, config.threads);
  if (candidates.size() > 1) inner.threads = 1;
  std::vector<CandidateDelta> deltas(candidates.size());
  parallel_for(candidates.size(), candidates.size() > 1 ? outer : 1u, [&](std::size_t i) {
    const auto& score = candidates[i];
    if (score.index >= pool.size() || pool[score.index].id != score.node)
      throw InputError("candidate score does not refer to the pool");
    const Augmented aug = add_candidate(graph, labeling, pool[score.index]);
    deltas[i] = CandidateDelta{score.node, score.index,
                               base - compute_rwc(aug.graph, aug.labeling, inner, method).rwc};
  });
  return deltas;
}

struct SelectedNode {
  NodeId node = 0;
  std::size_t index = 0;  // position in the pool
  std::string external_id;
  double delta_rwc = 0.0;
};

struct AdditionPlan {
  std::vector<SelectedNode> selected;  // descending individual delta_rwc
  double baseline_rwc = 0.0;
  std::vector<double> cumulative_rwc;  // [i]: RWC with selected[0..i] added jointly
  std::size_t requested = 0;
  std::size_t evaluated = 0;
  bool pool_exhausted = false;  // fewer than `requested` candidates available
};

/// Greedy node addition: Fagin top-C candidates (C = ceil(multiplier * k)),
/// individual delta_rwc for each, the k largest deltas kept (ties by node
/// id). The joint curve adds them one at a time in that order.
inline AdditionPlan select_addition_plan(const DirectedGraph& graph, const PartitionLabeling& labeling,
                                         const CandidatePool& pool, std::size_t k,
                                         double candidate_multiplier, const WalkConfig& config,
                                         RwcMethod method = RwcMethod::automatic) {
  if (k < 1) throw InputError("k must be >= 1");
  if (!(candidate_multiplier >= 1.0)) throw InputError("candidate_multiplier must be >= 1");
  if (pool.empty()) throw InputError("candidate pool is empty");

  AdditionPlan plan;
  plan.requested = k;
  plan.pool_exhausted = pool.size() < k;
  const auto c = static_cast<std::size_t>(std::ceil(candidate_multiplier * static_cast<double>(k)));
  const auto top = fagin_top_c(pool, c);
  plan.evaluated = top.size();

  const RwcEstimate base = compute_rwc(graph, labeling, config, method);
  plan.baseline_rwc = base.rwc;
  auto deltas = evaluate_candidates(graph, labeling, pool, top, config, method, &base);
  std::sort(deltas.begin(), deltas.end(), [](const CandidateDelta& a, const CandidateDelta& b) {
    return a.delta_rwc != b.delta_rwc ? a.delta_rwc > b.delta_rwc : a.node < b.node;
  });
  deltas.resize(std::min(k, deltas.size()));

  DirectedGraph joint = graph;
  PartitionLabeling joint_labels = labeling;
  for (const auto& d : deltas) {
    plan.selected.push_back({d.node, d.index, pool[d.index].external_id, d.delta_rwc});
    add_candidate_in_place(joint, joint_labels, pool[d.index]);
    plan.cumulative_rwc.push_back(compute_rwc(joint, joint_labels, config, method).rwc);
  }
  return plan;
}

}  // namespace rwc
