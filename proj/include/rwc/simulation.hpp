#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "rwc/error.hpp"
#include "rwc/exact.hpp"
#include "rwc/graph.hpp"
#include "rwc/parallel.hpp"
#include "rwc/seed.hpp"
#include "rwc/selection.hpp"
#include "rwc/walk.hpp"

namespace rwc {

// ---------------------------------------------------------------------------
// Synthetic polarized graphs

/// Two-block directed random graph with planted hubs. Side X holds nodes
/// 0..n-1 (named x0..), side Y nodes n..2n-1 (named y0..). The first
/// hub_count nodes of each side are the planted hubs.
struct PolarizedGraphParams {
  std::size_t nodes_per_side = 500;
  double p_in = 0.02;
  double p_out = 0.001;
  std::size_t hub_count = 10;
  std::size_t hub_in_degree_boost = 200;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(p_out >= 0.0 && p_out <= p_in && p_in <= 1.0))
      throw InputError("polarized graph needs 0 <= p_out <= p_in <= 1");
    if (nodes_per_side <= hub_count) throw InputError("nodes_per_side must exceed hub_count");
  }
};

struct LabeledGraph {
  DirectedGraph graph;
  PartitionLabeling labeling;
};

namespace detail {

// Calls fn(j) for each j in [0, count) independently with probability p,
// skipping geometrically between hits.
template <typename Rng, typename Fn>
void bernoulli_hits(std::size_t count, double p, Rng& rng, Fn&& fn) {
  if (p <= 0.0 || count == 0) return;
  if (p >= 1.0) {
    for (std::size_t j = 0; j < count; ++j) fn(j);
    return;
  }
  std::geometric_distribution<std::size_t> gap(p);
  for (std::size_t j = gap(rng); j < count; j += gap(rng) + 1) fn(j);
}

// Uniform sample of `count` distinct entries of `items` (partial Fisher-Yates).
template <typename T, typename Rng>
std::vector<T> sample_without_replacement(std::vector<T> items, std::size_t count, Rng& rng) {
  count = std::min(count, items.size());
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, items.size() - 1);
    std::swap(items[i], items[pick(rng)]);
  }
  items.resize(count);
  return items;
}

}  // namespace detail

inline LabeledGraph generate_polarized_graph(const PolarizedGraphParams& params) {
  params.validate();
  const std::size_t n = params.nodes_per_side;
  LabeledGraph out;
  for (std::size_t i = 0; i < n; ++i) out.graph.add_node("x" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) out.graph.add_node("y" + std::to_string(i));
  out.labeling = PartitionLabeling(2 * n, Side::X);
  for (std::size_t i = n; i < 2 * n; ++i) out.labeling.set(static_cast<NodeId>(i), Side::Y);

  std::mt19937_64 rng(params.seed);
  for (std::size_t u = 0; u < 2 * n; ++u) {
    const std::size_t own = u < n ? 0 : n;
    const std::size_t other = u < n ? n : 0;
    // same side, skipping u itself: targets own..own+n-1 without u
    detail::bernoulli_hits(n - 1, params.p_in, rng, [&](std::size_t j) {
      std::size_t v = own + j;
      if (v >= u) ++v;
      out.graph.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v));
    });
    detail::bernoulli_hits(n, params.p_out, rng, [&](std::size_t j) {
      out.graph.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(other + j));
    });
  }

  for (std::size_t side = 0; side < 2; ++side) {
    const std::size_t base = side * n;
    for (std::size_t h = 0; h < params.hub_count; ++h) {
      const auto hub = static_cast<NodeId>(base + h);
      std::vector<NodeId> eligible;
      for (std::size_t i = base; i < base + n; ++i) {
        const auto v = static_cast<NodeId>(i);
        if (v != hub && !out.graph.has_edge(v, hub)) eligible.push_back(v);
      }
      for (NodeId f : detail::sample_without_replacement(std::move(eligible), params.hub_in_degree_boost, rng))
        out.graph.add_edge(f, hub);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Candidate pools

struct FixedDegree {
  std::size_t degree = 50;
};
struct UniformDegree {
  std::size_t lo = 1;
  std::size_t hi = 100;
};
struct FixedNeutrality {
  double value = 0.5;
};
struct UniformNeutrality {};  // uniform on [0, 0.5]

struct CandidatePoolParams {
  std::size_t pool_size = 200;
  std::variant<FixedDegree, UniformDegree> degree = UniformDegree{10, 100};
  std::variant<FixedNeutrality, UniformNeutrality> neutrality = UniformNeutrality{};
  std::uint64_t seed = 0;

  void validate() const {
    if (const auto* f = std::get_if<FixedDegree>(&degree); f && f->degree < 1)
      throw InputError("candidate degree must be >= 1");
    if (const auto* u = std::get_if<UniformDegree>(&degree); u && (u->lo < 1 || u->lo > u->hi))
      throw InputError("candidate degree range must satisfy 1 <= lo <= hi");
    if (const auto* f = std::get_if<FixedNeutrality>(&neutrality); f && !(f->value >= 0.0 && f->value <= 0.5))
      throw InputError("candidate neutrality must lie in [0, 0.5]");
  }
};

/// Synthetic outside nodes. Candidate j has degree d and neutrality v drawn
/// from the params; round(v * d) followers come from a minority side picked
/// by a fair coin and the rest from the other side, all without replacement.
/// Candidates are named c0, c1, ... (prefix configurable).
inline CandidatePool generate_candidate_pool(const DirectedGraph& graph, const PartitionLabeling& labeling,
                                             const CandidatePoolParams& params,
                                             const std::string& name_prefix = "c") {
  params.validate();
  const std::vector<NodeId> xs = labeling.members(Side::X);
  const std::vector<NodeId> ys = labeling.members(Side::Y);
  std::mt19937_64 rng(params.seed);
  CandidatePool pool;
  pool.reserve(params.pool_size);
  for (std::size_t j = 0; j < params.pool_size; ++j) {
    const std::size_t degree = std::visit(
        [&](const auto& d) -> std::size_t {
          if constexpr (std::is_same_v<std::decay_t<decltype(d)>, FixedDegree>) {
            return d.degree;
          } else {
            return std::uniform_int_distribution<std::size_t>(d.lo, d.hi)(rng);
          }
        },
        params.degree);
    const double nu = std::visit(
        [&](const auto& v) -> double {
          if constexpr (std::is_same_v<std::decay_t<decltype(v)>, FixedNeutrality>) {
            return v.value;
          } else {
            return std::uniform_real_distribution<double>(0.0, 0.5)(rng);
          }
        },
        params.neutrality);
    const std::size_t minority = unfollow_count(degree, nu);  // round half up
    const std::size_t majority = degree - minority;
    const bool minority_is_x = std::bernoulli_distribution(0.5)(rng);
    const auto& min_side = minority_is_x ? xs : ys;
    const auto& maj_side = minority_is_x ? ys : xs;
    if (minority > min_side.size() || majority > maj_side.size())
      throw InputError("candidate degree " + std::to_string(degree) + " exceeds partition side size");
    std::vector<NodeId> followers = detail::sample_without_replacement(min_side, minority, rng);
    const auto rest = detail::sample_without_replacement(maj_side, majority, rng);
    followers.insert(followers.end(), rest.begin(), rest.end());
    pool.push_back(make_candidate(graph, labeling, static_cast<NodeId>(graph.node_count() + j),
                                  name_prefix + std::to_string(j), std::move(followers)));
  }
  return pool;
}

/// Materializes the potential social graph: G plus every candidate with its
/// follower edges. Candidates are Unassigned.
inline LabeledGraph potential_graph(const DirectedGraph& graph, const PartitionLabeling& labeling,
                                    const CandidatePool& pool) {
  LabeledGraph out{graph, labeling};
  for (const auto& c : pool) add_candidate_in_place(out.graph, out.labeling, c);
  return out;
}

// ---------------------------------------------------------------------------
// Baseline comparison

enum class Strategy { popular_and_neutral, popular_only, random_fixed };

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::popular_and_neutral: return "popular_and_neutral";
    case Strategy::popular_only: return "popular_only";
    case Strategy::random_fixed: return "random_fixed";
  }
  return "?";
}

inline Strategy parse_strategy(const std::string& text) {
  if (text == "popular_and_neutral") return Strategy::popular_and_neutral;
  if (text == "popular_only") return Strategy::popular_only;
  if (text == "random_fixed") return Strategy::random_fixed;
  throw InputError("unknown strategy '" + text + "'");
}

inline const std::vector<Strategy>& all_strategies() {
  static const std::vector<Strategy> all{Strategy::popular_and_neutral, Strategy::popular_only,
                                         Strategy::random_fixed};
  return all;
}

struct BaselineRow {
  Strategy strategy;
  std::size_t k = 0;
  double rwc = 0.0;
};

struct BaselineOptions {
  std::vector<Strategy> strategies = all_strategies();
  double candidate_multiplier = 3.0;
  std::uint64_t random_seed = 0;  // followers of the random_fixed nodes
  RwcMethod method = RwcMethod::automatic;
};

struct BaselineResult {
  std::vector<BaselineRow> rows;         // k = 0..k_max per strategy
  std::optional<AdditionPlan> plan;      // popular_and_neutral plan, if run
};

/// Synthetic "random nodes": degree 50, 25 followers drawn uniformly from
/// each side.
inline CandidatePool random_fixed_nodes(const DirectedGraph& graph, const PartitionLabeling& labeling,
                                        std::size_t count, std::uint64_t seed) {
  CandidatePoolParams params;
  params.pool_size = count;
  params.degree = FixedDegree{50};
  params.neutrality = FixedNeutrality{0.5};
  params.seed = seed;
  return generate_candidate_pool(graph, labeling, params, "random");
}

/// RWC after adding the first k nodes of `order` jointly, for k = 0..|order|.
inline std::vector<double> joint_curve(const DirectedGraph& graph, const PartitionLabeling& labeling,
                                       const CandidatePool& pool, const std::vector<std::size_t>& order,
                                       const WalkConfig& config, RwcMethod method) {
  std::vector<double> curve{compute_rwc(graph, labeling, config, method).rwc};
  DirectedGraph g = graph;
  PartitionLabeling l = labeling;
  for (std::size_t idx : order) {
    add_candidate_in_place(g, l, pool[idx]);
    curve.push_back(compute_rwc(g, l, config, method).rwc);
  }
  return curve;
}

inline BaselineResult run_baseline_comparison(const DirectedGraph& graph, const PartitionLabeling& labeling,
                                              const CandidatePool& pool, std::size_t k_max,
                                              const WalkConfig& config, const BaselineOptions& options = {}) {
  if (k_max < 1) throw InputError("k_max must be >= 1");
  if (options.strategies.empty()) throw InputError("no strategies selected");
  BaselineResult result;
  const double base = compute_rwc(graph, labeling, config, options.method).rwc;
  auto emit = [&](Strategy s, const std::vector<double>& curve) {
    for (std::size_t k = 0; k < curve.size(); ++k) result.rows.push_back({s, k, curve[k]});
  };
  for (Strategy s : options.strategies) {
    switch (s) {
      case Strategy::popular_and_neutral: {
        auto plan = select_addition_plan(graph, labeling, pool, k_max, options.candidate_multiplier, config,
                                         options.method);
        std::vector<double> curve{base};
        curve.insert(curve.end(), plan.cumulative_rwc.begin(), plan.cumulative_rwc.end());
        emit(s, curve);
        result.plan = std::move(plan);
        break;
      }
      case Strategy::popular_only: {
        std::vector<std::size_t> order(pool.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
          const auto da = pool[a].in_degree(), db = pool[b].in_degree();
          return da != db ? da > db : pool[a].id < pool[b].id;
        });
        order.resize(std::min(k_max, order.size()));
        emit(s, joint_curve(graph, labeling, pool, order, config, options.method));
        break;
      }
      case Strategy::random_fixed: {
        const CandidatePool synthetic = random_fixed_nodes(graph, labeling, k_max, options.random_seed);
        std::vector<std::size_t> order(synthetic.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        emit(s, joint_curve(graph, labeling, synthetic, order, config, options.method));
        break;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Unfollow simulation

struct UnfollowCurve {
  std::vector<double> removal_fractions;
  std::vector<double> rwc_values;  // mean over trials
  std::vector<double> min_rwc;
  std::vector<double> max_rwc;
  double baseline_rwc = 0.0;   // G
  double augmented_rwc = 0.0;  // G with every plan node, nothing removed
};

inline std::vector<double> default_fractions() {
  std::vector<double> f;
  for (int i = 0; i <= 10; ++i) f.push_back(i / 10.0);
  return f;
}

/// Adds every plan node to G, then for each fraction f and trial t removes
/// round(f * in_degree) incoming edges of each added node independently and
/// recomputes RWC. Removal streams are seeded by (seed, fraction index,
/// trial, node position), the walk itself by config.seed.
inline UnfollowCurve run_unfollow_simulation(const DirectedGraph& graph, const PartitionLabeling& labeling,
                                             const CandidatePool& pool, const AdditionPlan& plan,
                                             const std::vector<double>& fractions, std::size_t trials,
                                             const WalkConfig& config, std::uint64_t seed,
                                             RwcMethod method = RwcMethod::automatic) {
  if (plan.selected.empty()) throw InputError("addition plan is empty");
  if (trials < 1) throw InputError("trials must be >= 1");
  if (std::find(fractions.begin(), fractions.end(), 0.0) == fractions.end())
    throw InputError("removal fractions must include 0");
  for (double f : fractions)
    if (!(f >= 0.0 && f <= 1.0)) throw InputError("removal fractions must lie in [0, 1]");

  UnfollowCurve curve;
  curve.removal_fractions = fractions;
  curve.baseline_rwc = compute_rwc(graph, labeling, config, method).rwc;

  DirectedGraph augmented = graph;
  PartitionLabeling augmented_labels = labeling;
  std::vector<NodeId> added;
  for (const auto& s : plan.selected) added.push_back(add_candidate_in_place(augmented, augmented_labels, pool.at(s.index)));
  curve.augmented_rwc = compute_rwc(augmented, augmented_labels, config, method).rwc;

  const std::size_t cells = fractions.size() * trials;
  std::vector<double> values(cells);
  WalkConfig inner = config;
  inner.threads = 1;
  parallel_for(cells, std::max(1u, config.threads), [&](std::size_t cell) {
    const std::size_t fi = cell / trials;
    const std::size_t t = cell % trials;
    DirectedGraph g = augmented;
    const std::uint64_t trial_seed = derive_seed(derive_seed(seed, fi), t);
    for (std::size_t a = 0; a < added.size(); ++a)
      remove_in_edges_in_place(g, added[a], fractions[fi], derive_seed(trial_seed, a));
    values[cell] = compute_rwc(g, augmented_labels, inner, method).rwc;
  });

  for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
    double sum = 0.0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t t = 0; t < trials; ++t) {
      const double v = values[fi * trials + t];
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    curve.rwc_values.push_back(fractions[fi] == 0.0 ? curve.augmented_rwc : sum / static_cast<double>(trials));
    curve.min_rwc.push_back(lo);
    curve.max_rwc.push_back(hi);
  }
  return curve;
}

}  // namespace rwc
