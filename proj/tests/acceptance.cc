// Acceptance checks. Prints one [PASS] or [FAIL] line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "harness.hpp"
#include "oracles.hpp"
#include "rwc/rwc.hpp"

namespace {

using namespace rwc;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

/// The frozen synthetic setup shared with the CLI defaults.
struct Golden {
  cli::ExperimentConfig config;
  LabeledGraph graph;
  CandidatePool pool;

  Golden() {
    config.resolve_seeds();
    graph = generate_polarized_graph(config.graph);
    pool = generate_candidate_pool(graph.graph, graph.labeling, config.pool_params);
  }
};

Outcome extreme_polarization() {
  const auto start = Clock::now();
  cli::ExperimentConfig cfg;
  cfg.resolve_seeds();
  cfg.graph.p_out = 0.0;
  const auto lg = generate_polarized_graph(cfg.graph);
  const double exact = exact_rwc(lg.graph, lg.labeling, cfg.walk).rwc;
  WalkConfig walk = cfg.walk;
  walk.walks_per_side = 10000;
  walk.threads = 1;
  const double mc = estimate_rwc(lg.graph, lg.labeling, walk).rwc;
  const double t = seconds_since(start);
  return {exact == 1.0 && mc >= 0.95 && t < 5.0,
          fmt("exact=%.17g mc=%.6f time=%.2fs (need exact==1, mc>=0.95, <5s)", exact, mc, t)};
}

Outcome null_graph() {
  PolarizedGraphParams p;
  p.nodes_per_side = 50;
  p.p_in = p.p_out = 0.05;
  p.hub_count = 0;
  p.hub_in_degree_boost = 0;
  p.seed = derive_seed(cli::ExperimentConfig{}.seed, "null");
  const auto lg = generate_polarized_graph(p);
  WalkConfig walk;
  walk.hub_count_per_side = 1;
  walk.seed = derive_seed(p.seed, "walk");
  const auto ex = exact_rwc(lg.graph, lg.labeling, walk);
  const auto mc = estimate_rwc(lg.graph, lg.labeling, walk);
  const double gap = std::abs(mc.rwc - ex.rwc);
  return {std::abs(ex.rwc) <= 0.05 && gap <= 3.0 * mc.stderr_rwc,
          fmt("k_hub=1 exact=%.4f mc=%.4f |diff|=%.4f 3*stderr=%.4f", ex.rwc, mc.rwc, gap, 3.0 * mc.stderr_rwc)};
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(derive_seed(cli::ExperimentConfig{}.seed, "oracle"));
  int within = 0;
  std::ostringstream misses;
  for (int i = 0; i < 20; ++i) {
    PolarizedGraphParams p;
    p.nodes_per_side = 20 + rng() % 31;  // 40..100 nodes
    p.p_in = std::uniform_real_distribution<double>(0.05, 0.3)(rng);
    p.p_out = std::uniform_real_distribution<double>(0.0, p.p_in / 4)(rng);
    p.hub_count = 2;
    p.hub_in_degree_boost = 5;
    p.seed = rng();
    const auto lg = generate_polarized_graph(p);
    WalkConfig walk;
    walk.hub_count_per_side = 1 + rng() % 5;
    walk.seed = rng();
    const auto ex = exact_rwc(lg.graph, lg.labeling, walk);
    const auto mc = estimate_rwc(lg.graph, lg.labeling, walk);
    if (std::abs(mc.rwc - ex.rwc) <= 3.0 * mc.stderr_rwc) ++within;
    else misses << ' ' << i;
  }
  const double t = seconds_since(start);
  return {within >= 19 && t < 60.0,
          fmt("%d/20 within 3 stderr, time=%.2fs", within, t) + (misses.str().empty() ? "" : ", misses:" + misses.str())};
}

Outcome strategy_trend(const Golden& g, AdditionPlan& plan_out) {
  const auto start = Clock::now();
  WalkConfig walk = g.config.walk;
  walk.threads = 1;
  BaselineOptions options;
  options.strategies = {Strategy::popular_and_neutral, Strategy::popular_only};
  options.candidate_multiplier = g.config.candidate_multiplier;
  const auto result = run_baseline_comparison(g.graph.graph, g.graph.labeling, g.pool, 30, walk, options);
  auto at = [&](Strategy s, std::size_t k) {
    for (const auto& r : result.rows)
      if (r.strategy == s && r.k == k) return r.rwc;
    return std::nan("");
  };
  const double pn30 = at(Strategy::popular_and_neutral, 30);
  const double pop0 = at(Strategy::popular_only, 0), pop10 = at(Strategy::popular_only, 10);
  const double pop20 = at(Strategy::popular_only, 20), pop30 = at(Strategy::popular_only, 30);
  const double early = pop0 - pop10, late = pop20 - pop30;
  const double t = seconds_since(start);
  plan_out = *result.plan;
  return {pn30 < pop30 && late < early && t < 600.0,
          fmt("rwc(0)=%.4f pn(30)=%.4f pop(30)=%.4f pop drop [0,10]=%.4f [20,30]=%.4f time=%.1fs", pop0, pn30, pop30,
              early, late, t)};
}

Outcome unfollow_trend(const Golden& g, const AdditionPlan& plan) {
  WalkConfig walk = g.config.walk;
  walk.threads = 1;
  const auto curve = run_unfollow_simulation(g.graph.graph, g.graph.labeling, g.pool, plan, default_fractions(), 5,
                                             walk, derive_seed(g.config.seed, "unfollow"));
  std::vector<double> reduction;
  for (double v : curve.rwc_values) reduction.push_back(curve.baseline_rwc - v);
  const auto i08 = static_cast<std::size_t>(
      std::find(curve.removal_fractions.begin(), curve.removal_fractions.end(), 0.8) - curve.removal_fractions.begin());
  bool monotone = true;
  double worst_rise = 0.0;
  for (std::size_t i = 1; i < reduction.size(); ++i) {
    worst_rise = std::max(worst_rise, reduction[i] - reduction[i - 1]);
    if (reduction[i] > reduction[i - 1] + 0.01) monotone = false;
  }
  std::ostringstream row;
  for (double r : reduction) row << fmt(" %.4f", r);
  return {i08 < reduction.size() && reduction[i08] > 0.0 && monotone,
          fmt("reduction@0.8=%.4f largest rise=%.4f;", reduction[i08], worst_rise) + " reductions:" + row.str()};
}

Outcome fagin_equivalence() {
  std::mt19937_64 rng(derive_seed(cli::ExperimentConfig{}.seed, "fagin"));
  const auto lg = generate_polarized_graph(PolarizedGraphParams{});
  int equal = 0;
  for (int i = 0; i < 100; ++i) {
    CandidatePoolParams p;
    p.pool_size = 1 + rng() % 200;
    // alternate wide draws with narrow ones that produce many ties
    if (i % 2 == 0) p.degree = UniformDegree{10, 100};
    else {
      p.degree = UniformDegree{1, 6};
      p.neutrality = FixedNeutrality{std::uniform_int_distribution<int>(0, 2)(rng) * 0.25};
    }
    p.seed = rng();
    const auto pool = generate_candidate_pool(lg.graph, lg.labeling, p);
    const std::size_t c = 1 + rng() % pool.size();
    const auto got = fagin_top_c(pool, c);
    const auto want = testing::brute_force_top_c(pool, c);
    bool same = got.size() == want.size();
    for (std::size_t r = 0; same && r < got.size(); ++r) same = got[r].node == want[r].node;
    equal += same;
  }
  return {equal == 100, fmt("%d/100 pools identical to brute force", equal)};
}

Outcome invariants() {
  std::vector<std::string> failed;
  auto check = [&](bool ok, const char* name) {
    if (!ok) failed.emplace_back(name);
  };
  std::mt19937_64 rng(derive_seed(cli::ExperimentConfig{}.seed, "invariants"));
  for (int trial = 0; trial < 5; ++trial) {
    PolarizedGraphParams p;
    p.nodes_per_side = 80;
    p.p_in = 0.08;
    p.p_out = 0.01;
    p.hub_count = 3;
    p.hub_in_degree_boost = 15;
    p.seed = rng();
    const auto lg = generate_polarized_graph(p);
    WalkConfig walk;
    walk.walks_per_side = 4000;
    walk.hub_count_per_side = 3;
    walk.seed = rng();

    const auto ex = exact_rwc(lg.graph, lg.labeling, walk);
    const auto mc = estimate_rwc(lg.graph, lg.labeling, walk);
    const auto ex_swapped = exact_rwc(lg.graph, lg.labeling.swapped(), walk);
    const auto mc_swapped = estimate_rwc(lg.graph, lg.labeling.swapped(), walk);
    check(std::abs(ex.rwc - ex_swapped.rwc) <= 1e-12, "label swap (exact)");
    check(std::abs(mc.rwc - mc_swapped.rwc) <= 3.0 * std::hypot(mc.stderr_rwc, mc_swapped.stderr_rwc),
          "label swap (sampled)");
    for (const auto* e : {&ex, &mc}) {
      check(std::abs(e->p_xx + e->p_xy - 1.0) <= 1e-12 && std::abs(e->p_yx + e->p_yy - 1.0) <= 1e-12, "row sums");
      check(std::abs(e->rwc - (e->p_xx * e->p_yy - e->p_xy * e->p_yx)) <= 1e-12, "score definition");
    }

    const auto isolated = add_candidate(lg.graph, lg.labeling,
                                        make_candidate(lg.graph, lg.labeling, static_cast<NodeId>(lg.graph.node_count()),
                                                       "isolated", {}));
    check(exact_rwc(isolated.graph, isolated.labeling, walk) == ex, "isolated node (exact)");
    check(estimate_rwc(isolated.graph, isolated.labeling, walk) == mc, "isolated node (sampled)");

    CandidatePoolParams pp;
    pp.pool_size = 5;
    pp.degree = UniformDegree{10, 40};
    pp.seed = rng();
    const auto pool = generate_candidate_pool(lg.graph, lg.labeling, pp);
    auto full = potential_graph(lg.graph, lg.labeling, pool);
    const DirectedGraph kept = full.graph;
    for (std::size_t a = 0; a < pool.size(); ++a) remove_in_edges_in_place(full.graph, pool[a].id, 0.0, rng());
    bool identical = kept.edge_count() == full.graph.edge_count();
    for (NodeId v = 0; identical && v < kept.node_count(); ++v) {
      const auto x = kept.in_neighbors(v), y = full.graph.in_neighbors(v);
      identical = std::equal(x.begin(), x.end(), y.begin(), y.end());
    }
    check(identical, "zero-fraction identity");
    for (std::size_t a = 0; a < pool.size(); ++a) remove_in_edges_in_place(full.graph, pool[a].id, 1.0, rng());
    check(exact_rwc(full.graph, full.labeling, walk) == ex, "full-fraction reversion (exact)");
    check(estimate_rwc(full.graph, full.labeling, walk) == mc, "full-fraction reversion (sampled)");

    WalkConfig threaded = walk;
    threaded.threads = 4;
    check(estimate_rwc(lg.graph, lg.labeling, walk) == mc, "determinism (repeat)");
    check(estimate_rwc(lg.graph, lg.labeling, threaded) == mc, "determinism (threads)");
    const auto plan_a = select_addition_plan(lg.graph, lg.labeling, pool, 2, 2.0, walk, RwcMethod::monte_carlo);
    const auto plan_b = select_addition_plan(lg.graph, lg.labeling, pool, 2, 2.0, threaded, RwcMethod::monte_carlo);
    bool same_plan = plan_a.cumulative_rwc == plan_b.cumulative_rwc && plan_a.selected.size() == plan_b.selected.size();
    for (std::size_t i = 0; same_plan && i < plan_a.selected.size(); ++i)
      same_plan = plan_a.selected[i].node == plan_b.selected[i].node &&
                  plan_a.selected[i].delta_rwc == plan_b.selected[i].delta_rwc;
    check(same_plan, "determinism (selection)");
  }
  std::sort(failed.begin(), failed.end());
  failed.erase(std::unique(failed.begin(), failed.end()), failed.end());
  std::string detail = failed.empty() ? "all invariants hold on 5 graphs" : "violated:";
  for (const auto& f : failed) detail += " [" + f + "]";
  return {failed.empty(), detail};
}

Outcome performance() {
  PolarizedGraphParams p;
  p.nodes_per_side = 5000;
  p.p_in = 0.0038;
  p.p_out = 0.0002;
  p.seed = derive_seed(cli::ExperimentConfig{}.seed, "performance");
  const auto lg = generate_polarized_graph(p);
  WalkConfig walk;
  walk.walks_per_side = 10000;
  walk.seed = derive_seed(p.seed, "walk");

  auto timed = [&](unsigned threads, RwcEstimate& out) {
    WalkConfig c = walk;
    c.threads = threads;
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto start = Clock::now();
      out = estimate_rwc(lg.graph, lg.labeling, c);
      best = std::min(best, seconds_since(start));
    }
    return best;
  };
  RwcEstimate one, four;
  const double t1 = timed(1, one);
  const double t4 = timed(4, four);
  const double speedup = t1 / t4;
  const bool identical = one == four;
  return {t1 < 5.0 && speedup >= 3.0 && identical,
          fmt("%zu nodes, %zu edges: 1 thread %.3fs, 4 threads %.3fs, speedup %.2fx, identical=%s, cpus=%u",
              lg.graph.node_count(), lg.graph.edge_count(), t1, t4, speedup, identical ? "yes" : "no",
              std::thread::hardware_concurrency())};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const char* title, const std::function<Outcome()>& body) {
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << title << " -- " << o.detail
              << std::endl;
  };

  report(1, "fully separated graph scores 1", extreme_polarization);
  report(2, "fully mixed graph scores near 0", null_graph);
  report(3, "sampling agrees with the exact solver", oracle_equivalence);
  const Golden golden;
  AdditionPlan plan;
  report(4, "popular and neutral beats popular only", [&] { return strategy_trend(golden, plan); });
  report(5, "reduction survives unfollowing", [&] {
    if (plan.selected.empty()) return Outcome{false, "no plan from criterion 4"};
    return unfollow_trend(golden, plan);
  });
  report(6, "threshold top-c equals brute force", fagin_equivalence);
  report(7, "invariant suite", invariants);
  report(8, "performance envelope", performance);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion/criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
