#include "harness.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include "CLI11.hpp"

namespace rwc::cli {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void check_keys(const json& object, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!object.is_object()) throw InputError("config: '" + where + "' must be an object");
  const std::set<std::string> names(allowed.begin(), allowed.end());
  for (const auto& [key, value] : object.items())
    if (!names.contains(key)) throw InputError("config: unknown key '" + where + "." + key + "'");
}

template <typename T>
void read(const json& object, const char* key, T& target) {
  if (object.contains(key)) target = object.at(key).get<T>();
}

RwcMethod method_of(const ExperimentConfig& config, RwcMethod fallback) {
  return config.exact ? RwcMethod::exact : fallback;
}

const char* to_string(RwcMethod m) {
  switch (m) {
    case RwcMethod::automatic: return "auto";
    case RwcMethod::exact: return "exact";
    case RwcMethod::monte_carlo: return "monte_carlo";
  }
  return "?";
}

class Stopwatch {
 public:
  explicit Stopwatch(RunManifest& manifest) : manifest_(manifest) {}

  template <typename Fn>
  auto stage(const std::string& name, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    struct Record {
      RunManifest& m;
      std::string name;
      std::chrono::steady_clock::time_point start;
      ~Record() {
        m.stages.push_back({name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
      }
    } record{manifest_, name, start};
    return fn();
  }

 private:
  RunManifest& manifest_;
};

// Writes one output file and records its hash.
void write_output(RunManifest& manifest, const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& body) {
  {
    auto out = detail::open_output(path);
    body(out);
    if (!out) throw InputError("failed writing '" + path.string() + "'");
  }
  manifest.outputs.push_back({path.string(), sha256_file(path)});
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& dir) {
  auto out = detail::open_output(dir / "manifest.json");
  out << manifest_to_json(manifest).dump(2) << '\n';
}

struct Inputs {
  DirectedGraph graph;
  PartitionLabeling labeling;
  CandidatePool pool;
};

Inputs load_inputs(const ExperimentConfig& config, bool need_pool, RunManifest& manifest, std::ostream& err) {
  Inputs in;
  if (config.mode == InputMode::files) {
    LoadStats stats;
    in.graph = load_edge_list(config.edges, edge_format_for(config.edges), &stats);
    manifest.inputs.push_back({config.edges.string(), sha256_file(config.edges)});
    if (stats.self_loops > 0) err << "warning: dropped " << stats.self_loops << " self-loop(s)\n";
    if (stats.duplicate_edges > 0) err << "note: collapsed " << stats.duplicate_edges << " duplicate edge(s)\n";
    in.labeling = load_partition(config.partition, in.graph);
    manifest.inputs.push_back({config.partition.string(), sha256_file(config.partition)});
    if (need_pool) {
      if (config.pool.empty()) throw InputError("a candidate file is required (--pool)");
      in.pool = load_candidate_pool(config.pool, in.graph, in.labeling);
      manifest.inputs.push_back({config.pool.string(), sha256_file(config.pool)});
    }
  } else {
    auto generated = generate_polarized_graph(config.graph);
    in.graph = std::move(generated.graph);
    in.labeling = std::move(generated.labeling);
    if (need_pool) in.pool = generate_candidate_pool(in.graph, in.labeling, config.pool_params);
  }
  return in;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

void ExperimentConfig::resolve_seeds() {
  graph.seed = derive_seed(seed, "graph");
  pool_params.seed = derive_seed(seed, "pool");
  walk.seed = derive_seed(seed, "walk");
}

void ExperimentConfig::validate() const {
  if (mode == InputMode::files) {
    if (edges.empty() || partition.empty()) throw InputError("files mode needs both an edge list and a partition");
  } else {
    graph.validate();
    pool_params.validate();
  }
  walk.validate();
  if (k < 1) throw InputError("k must be >= 1");
  if (!(candidate_multiplier >= 1.0)) throw InputError("candidate_multiplier must be >= 1");
  if (trials < 1) throw InputError("trials must be >= 1");
  if (strategies.empty()) throw InputError("at least one strategy is required");
  for (double f : fractions)
    if (!(f >= 0.0 && f <= 1.0)) throw InputError("fractions must lie in [0, 1]");
}

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig c;
  try {
    check_keys(doc, "", {"seed", "out", "input", "walk", "selection", "simulation"});
    read(doc, "seed", c.seed);
    if (doc.contains("out")) c.out = doc.at("out").get<std::string>();

    if (doc.contains("input")) {
      const auto& in = doc.at("input");
      check_keys(in, "input", {"mode", "edges", "partition", "pool_file", "graph", "pool"});
      const bool has_files = in.contains("edges") || in.contains("partition") || in.contains("pool_file");
      const bool has_synthetic = in.contains("graph") || in.contains("pool");
      std::string mode = has_files ? "files" : "synthetic";
      read(in, "mode", mode);
      if (mode == "files") {
        if (has_synthetic) throw InputError("config: files mode cannot also set synthetic parameters");
        c.mode = InputMode::files;
        if (in.contains("edges")) c.edges = in.at("edges").get<std::string>();
        if (in.contains("partition")) c.partition = in.at("partition").get<std::string>();
        if (in.contains("pool_file")) c.pool = in.at("pool_file").get<std::string>();
      } else if (mode == "synthetic") {
        if (has_files) throw InputError("config: synthetic mode cannot also set input files");
        c.mode = InputMode::synthetic;
        if (in.contains("graph")) {
          const auto& g = in.at("graph");
          check_keys(g, "input.graph", {"nodes_per_side", "p_in", "p_out", "hub_count", "hub_in_degree_boost"});
          read(g, "nodes_per_side", c.graph.nodes_per_side);
          read(g, "p_in", c.graph.p_in);
          read(g, "p_out", c.graph.p_out);
          read(g, "hub_count", c.graph.hub_count);
          read(g, "hub_in_degree_boost", c.graph.hub_in_degree_boost);
        }
        if (in.contains("pool")) {
          const auto& p = in.at("pool");
          check_keys(p, "input.pool", {"pool_size", "degree", "neutrality"});
          read(p, "pool_size", c.pool_params.pool_size);
          if (p.contains("degree")) {
            const auto& d = p.at("degree");
            check_keys(d, "input.pool.degree", {"fixed", "uniform"});
            if (d.contains("fixed") == d.contains("uniform"))
              throw InputError("config: input.pool.degree needs exactly one of 'fixed' or 'uniform'");
            if (d.contains("fixed")) {
              c.pool_params.degree = FixedDegree{d.at("fixed").get<std::size_t>()};
            } else {
              const auto range = d.at("uniform").get<std::vector<std::size_t>>();
              if (range.size() != 2) throw InputError("config: input.pool.degree.uniform must be [lo, hi]");
              c.pool_params.degree = UniformDegree{range[0], range[1]};
            }
          }
          if (p.contains("neutrality")) {
            const auto& nu = p.at("neutrality");
            if (nu.is_string()) {
              if (nu.get<std::string>() != "uniform")
                throw InputError("config: input.pool.neutrality must be \"uniform\" or {\"fixed\": v}");
              c.pool_params.neutrality = UniformNeutrality{};
            } else {
              check_keys(nu, "input.pool.neutrality", {"fixed"});
              c.pool_params.neutrality = FixedNeutrality{nu.at("fixed").get<double>()};
            }
          }
        }
      } else {
        throw InputError("config: input.mode must be 'files' or 'synthetic'");
      }
    }

    if (doc.contains("walk")) {
      const auto& w = doc.at("walk");
      check_keys(w, "walk", {"walks_per_side", "hub_count_per_side", "max_steps", "edge_mode", "threads", "exact"});
      read(w, "walks_per_side", c.walk.walks_per_side);
      read(w, "hub_count_per_side", c.walk.hub_count_per_side);
      if (w.contains("max_steps") && !w.at("max_steps").is_null())
        c.walk.max_steps = w.at("max_steps").get<std::size_t>();
      if (w.contains("edge_mode")) c.walk.edge_mode = parse_edge_mode(w.at("edge_mode").get<std::string>());
      read(w, "threads", c.walk.threads);
      read(w, "exact", c.exact);
    }
    if (doc.contains("selection")) {
      const auto& s = doc.at("selection");
      check_keys(s, "selection", {"k", "candidate_multiplier"});
      read(s, "k", c.k);
      read(s, "candidate_multiplier", c.candidate_multiplier);
    }
    if (doc.contains("simulation")) {
      const auto& s = doc.at("simulation");
      check_keys(s, "simulation", {"fractions", "trials", "strategies"});
      read(s, "fractions", c.fractions);
      read(s, "trials", c.trials);
      if (s.contains("strategies")) {
        c.strategies.clear();
        for (const auto& name : s.at("strategies").get<std::vector<std::string>>())
          c.strategies.push_back(parse_strategy(name));
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

ordered_json config_to_json(const ExperimentConfig& c) {
  ordered_json input;
  if (c.mode == InputMode::files) {
    input = {{"mode", "files"}, {"edges", c.edges.string()}, {"partition", c.partition.string()},
             {"pool_file", c.pool.string()}};
  } else {
    ordered_json degree, neutrality;
    if (const auto* f = std::get_if<FixedDegree>(&c.pool_params.degree)) degree = {{"fixed", f->degree}};
    else {
      const auto& u = std::get<UniformDegree>(c.pool_params.degree);
      degree = {{"uniform", {u.lo, u.hi}}};
    }
    if (const auto* f = std::get_if<FixedNeutrality>(&c.pool_params.neutrality)) neutrality = {{"fixed", f->value}};
    else neutrality = "uniform";
    input = {{"mode", "synthetic"},
             {"graph",
              {{"nodes_per_side", c.graph.nodes_per_side},
               {"p_in", c.graph.p_in},
               {"p_out", c.graph.p_out},
               {"hub_count", c.graph.hub_count},
               {"hub_in_degree_boost", c.graph.hub_in_degree_boost}}},
             {"pool", {{"pool_size", c.pool_params.pool_size}, {"degree", degree}, {"neutrality", neutrality}}}};
  }
  ordered_json walk = to_json(c.walk);
  walk.erase("seed");
  walk["exact"] = c.exact;
  std::vector<std::string> strategies;
  for (Strategy s : c.strategies) strategies.emplace_back(to_string(s));
  return {{"seed", c.seed},
          {"out", c.out.string()},
          {"input", input},
          {"walk", walk},
          {"selection", {{"k", c.k}, {"candidate_multiplier", c.candidate_multiplier}}},
          {"simulation", {{"fractions", c.fractions}, {"trials", c.trials}, {"strategies", strategies}}}};
}

// ---------------------------------------------------------------------------
// Manifest

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot hash '" + path.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return hex.str();
}

ordered_json manifest_to_json(const RunManifest& m) {
  auto files = [](const std::vector<FileHash>& list) {
    ordered_json out = ordered_json::array();
    for (const auto& f : list) out.push_back({{"path", f.path}, {"sha256", f.sha256}});
    return out;
  };
  ordered_json stages = ordered_json::array();
  for (const auto& s : m.stages) stages.push_back({{"stage", s.name}, {"seconds", s.seconds}});
  return {{"tool", "rwc"},        {"version", kToolVersion},    {"command", m.command},
          {"config", m.config},   {"stages", stages},           {"inputs", files(m.inputs)},
          {"outputs", files(m.outputs)}};
}

// ---------------------------------------------------------------------------
// Commands

int cmd_rwc(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  RunManifest manifest{"rwc", config_to_json(config), {}, {}, {}};
  Stopwatch clock(manifest);
  const Inputs in = clock.stage("load", [&] { return load_inputs(config, false, manifest, err); });
  const RwcMethod method = method_of(config, RwcMethod::monte_carlo);
  const RwcEstimate estimate =
      clock.stage("estimate", [&] { return compute_rwc(in.graph, in.labeling, config.walk, method); });
  if (estimate.discarded_walks > 0) err << "note: " << estimate.discarded_walks << " walk(s) discarded\n";
  const std::string text = to_json(estimate).dump(2);
  out << text << '\n';
  write_output(manifest, config.out / "rwc.json", [&](std::ostream& o) { o << text << '\n'; });
  write_manifest(manifest, config.out);
  return 0;
}

int cmd_select(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  RunManifest manifest{"select", config_to_json(config), {}, {}, {}};
  Stopwatch clock(manifest);
  const Inputs in = clock.stage("load", [&] { return load_inputs(config, true, manifest, err); });
  const RwcMethod method = method_of(config, RwcMethod::automatic);
  const AdditionPlan plan = clock.stage("select", [&] {
    return select_addition_plan(in.graph, in.labeling, in.pool, config.k, config.candidate_multiplier, config.walk,
                                method);
  });
  if (plan.pool_exhausted)
    err << "warning: pool has " << in.pool.size() << " candidate(s), fewer than k = " << config.k
        << "; plan is partial\n";
  write_output(manifest, config.out / "plan.json", [&](std::ostream& o) { o << to_json(plan).dump(2) << '\n'; });
  write_output(manifest, config.out / "plan.csv", [&](std::ostream& o) { write_plan_csv(o, plan); });
  write_manifest(manifest, config.out);
  out << "baseline_rwc " << format_double(plan.baseline_rwc) << '\n'
      << "selected " << plan.selected.size() << '\n'
      << "final_rwc " << format_double(plan.cumulative_rwc.empty() ? plan.baseline_rwc : plan.cumulative_rwc.back())
      << '\n';
  return 0;
}

int cmd_simulate(const ExperimentConfig& config_in, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = config_in;
  if (std::find(config.fractions.begin(), config.fractions.end(), 0.0) == config.fractions.end()) {
    err << "notice: removal fractions did not include 0; inserted it\n";
    config.fractions.push_back(0.0);
  }
  std::sort(config.fractions.begin(), config.fractions.end());
  config.fractions.erase(std::unique(config.fractions.begin(), config.fractions.end()), config.fractions.end());

  RunManifest manifest{"simulate", config_to_json(config), {}, {}, {}};
  Stopwatch clock(manifest);
  const Inputs in = clock.stage("load", [&] { return load_inputs(config, true, manifest, err); });
  const RwcMethod method = method_of(config, RwcMethod::automatic);

  BaselineOptions options;
  options.strategies = config.strategies;
  options.candidate_multiplier = config.candidate_multiplier;
  options.random_seed = derive_seed(config.seed, "random_fixed");
  options.method = method;
  BaselineResult baseline = clock.stage(
      "baselines", [&] { return run_baseline_comparison(in.graph, in.labeling, in.pool, config.k, config.walk, options); });
  if (!baseline.plan)
    baseline.plan = clock.stage("select", [&] {
      return select_addition_plan(in.graph, in.labeling, in.pool, config.k, config.candidate_multiplier, config.walk,
                                  method);
    });
  const AdditionPlan& plan = *baseline.plan;
  if (plan.pool_exhausted) err << "warning: pool smaller than k = " << config.k << "; plan is partial\n";

  const UnfollowCurve curve = clock.stage("unfollow", [&] {
    return run_unfollow_simulation(in.graph, in.labeling, in.pool, plan, config.fractions, config.trials, config.walk,
                                   derive_seed(config.seed, "unfollow"), method);
  });

  const ordered_json echo = config_to_json(config);
  write_output(manifest, config.out / "baseline.csv", [&](std::ostream& o) { write_baseline_csv(o, baseline.rows); });
  write_output(manifest, config.out / "baseline.json", [&](std::ostream& o) {
    o << ordered_json{{"config", echo}, {"rwc_method", to_string(method)}, {"rows", to_json(baseline.rows)}}.dump(2)
      << '\n';
  });
  write_output(manifest, config.out / "unfollow.csv", [&](std::ostream& o) { write_unfollow_csv(o, curve); });
  write_output(manifest, config.out / "unfollow.json", [&](std::ostream& o) {
    o << ordered_json{{"config", echo}, {"rwc_method", to_string(method)}, {"curve", to_json(curve)}}.dump(2) << '\n';
  });
  write_output(manifest, config.out / "plan.json", [&](std::ostream& o) { o << to_json(plan).dump(2) << '\n'; });
  write_output(manifest, config.out / "plan.csv", [&](std::ostream& o) { write_plan_csv(o, plan); });
  write_manifest(manifest, config.out);

  out << "baseline_rwc " << format_double(curve.baseline_rwc) << '\n'
      << "augmented_rwc " << format_double(curve.augmented_rwc) << '\n'
      << "rows " << baseline.rows.size() << '\n';
  return 0;
}

int cmd_generate(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  if (config.mode != InputMode::synthetic) throw InputError("generate needs synthetic input parameters");
  RunManifest manifest{"generate", config_to_json(config), {}, {}, {}};
  Stopwatch clock(manifest);
  const Inputs in = clock.stage("generate", [&] { return load_inputs(config, true, manifest, err); });
  write_output(manifest, config.out / "edges.tsv", [&](std::ostream& o) { write_edge_list(o, in.graph); });
  write_output(manifest, config.out / "partition.tsv",
               [&](std::ostream& o) { write_partition(o, in.graph, in.labeling); });
  write_output(manifest, config.out / "pool.tsv", [&](std::ostream& o) { write_candidate_pool(o, in.graph, in.pool); });
  write_manifest(manifest, config.out);
  out << "nodes " << in.graph.node_count() << '\n'
      << "edges " << in.graph.edge_count() << '\n'
      << "candidates " << in.pool.size() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// Command line

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random walk controversy: measure polarization and pick depolarizing nodes", "rwc"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::string config_path, out_dir, edges, partition, pool, edge_mode, fractions, strategies;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t walks = 0, k_hub = 0, max_steps = 0, k = 0, trials = 0, nodes_per_side = 0, hub_count = 0, hub_boost = 0,
              pool_size = 0;
  double multiplier = 0, p_in = 0, p_out = 0;
  bool exact = false;

  auto* o_config = app.add_option("--config", config_path, "JSON experiment configuration");
  auto* o_seed = app.add_option("--seed", seed, "Global seed");
  auto* o_out = app.add_option("--out", out_dir, "Output directory");
  auto* o_threads = app.add_option("--threads", threads, "Worker threads (results do not depend on it)");
  auto* o_exact = app.add_flag("--exact", exact, "Use the exact absorbing-chain solver");
  auto* o_edges = app.add_option("--edges", edges, "Edge list (.tsv or .csv); selects files mode");
  auto* o_partition = app.add_option("--partition", partition, "Partition file");
  auto* o_pool = app.add_option("--pool", pool, "Candidate edge list (follower -> outside node)");
  auto* o_walks = app.add_option("--walks", walks, "Walks per side");
  auto* o_k_hub = app.add_option("--k-hub", k_hub, "Hubs per side");
  auto* o_max_steps = app.add_option("--max-steps", max_steps, "Step limit per walk");
  auto* o_edge_mode = app.add_option("--edge-mode", edge_mode, "symmetrized | directed_out");
  auto* o_k = app.add_option("--k", k, "Nodes to add");
  auto* o_mult = app.add_option("--multiplier", multiplier, "Candidates evaluated per selected node");
  auto* o_fractions = app.add_option("--fractions", fractions, "Comma-separated removal fractions");
  auto* o_trials = app.add_option("--trials", trials, "Unfollow trials per fraction");
  auto* o_strategies = app.add_option("--strategies", strategies, "Comma-separated baseline strategies");
  auto* o_nps = app.add_option("--nodes-per-side", nodes_per_side, "Synthetic graph: nodes per side");
  auto* o_p_in = app.add_option("--p-in", p_in, "Synthetic graph: intra-side edge probability");
  auto* o_p_out = app.add_option("--p-out", p_out, "Synthetic graph: cross-side edge probability");
  auto* o_hubs = app.add_option("--hub-count", hub_count, "Synthetic graph: planted hubs per side");
  auto* o_boost = app.add_option("--hub-boost", hub_boost, "Synthetic graph: extra followers per planted hub");
  auto* o_pool_size = app.add_option("--pool-size", pool_size, "Synthetic pool size");

  auto* rwc_cmd = app.add_subcommand("rwc", "Estimate the controversy score of a graph");
  auto* select_cmd = app.add_subcommand("select", "Choose nodes whose addition lowers the score most");
  auto* simulate_cmd = app.add_subcommand("simulate", "Baseline comparison and unfollow simulation");
  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic graph, partition and candidate pool");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig config = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    auto split = [](const std::string& text) {
      std::vector<std::string> parts;
      std::stringstream ss(text);
      for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) parts.push_back(item);
      return parts;
    };
    if (*o_seed) config.seed = seed;
    if (*o_out) config.out = out_dir;
    if (*o_threads) config.walk.threads = threads;
    if (*o_exact) config.exact = exact;
    if (*o_edges || *o_partition || *o_pool) {
      config.mode = InputMode::files;
      if (*o_edges) config.edges = edges;
      if (*o_partition) config.partition = partition;
      if (*o_pool) config.pool = pool;
    }
    if (*o_walks) config.walk.walks_per_side = walks;
    if (*o_k_hub) config.walk.hub_count_per_side = k_hub;
    if (*o_max_steps) config.walk.max_steps = max_steps;
    if (*o_edge_mode) config.walk.edge_mode = parse_edge_mode(edge_mode);
    if (*o_k) config.k = k;
    if (*o_mult) config.candidate_multiplier = multiplier;
    if (*o_fractions) {
      config.fractions.clear();
      for (const auto& f : split(fractions)) {
        try {
          config.fractions.push_back(std::stod(f));
        } catch (const std::exception&) {
          throw InputError("bad fraction '" + f + "'");
        }
      }
    }
    if (*o_trials) config.trials = trials;
    if (*o_strategies) {
      config.strategies.clear();
      for (const auto& s : split(strategies)) config.strategies.push_back(parse_strategy(s));
    }
    const bool synthetic_flag = *o_nps || *o_p_in || *o_p_out || *o_hubs || *o_boost || *o_pool_size;
    if (synthetic_flag && config.mode == InputMode::files)
      throw InputError("synthetic graph flags cannot be combined with input files");
    if (*o_nps) config.graph.nodes_per_side = nodes_per_side;
    if (*o_p_in) config.graph.p_in = p_in;
    if (*o_p_out) config.graph.p_out = p_out;
    if (*o_hubs) config.graph.hub_count = hub_count;
    if (*o_boost) config.graph.hub_in_degree_boost = hub_boost;
    if (*o_pool_size) config.pool_params.pool_size = pool_size;
    config.resolve_seeds();
    config.validate();

    if (rwc_cmd->parsed()) return cmd_rwc(config, out, err);
    if (select_cmd->parsed()) return cmd_select(config, out, err);
    if (simulate_cmd->parsed()) return cmd_simulate(config, out, err);
    if (generate_cmd->parsed()) return cmd_generate(config, out, err);
    return 2;
  } catch (const EstimationError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rwc::cli
