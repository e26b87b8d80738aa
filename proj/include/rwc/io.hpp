#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rwc/error.hpp"
#include "rwc/graph.hpp"

namespace rwc {

enum class EdgeFormat { tsv, csv };

struct LoadStats {
  std::size_t lines = 0;
  std::size_t edges = 0;
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Splits one record into fields. TSV lines split on tabs; a line without a
// tab falls back to whitespace so hand-written `a b` files also load.
inline std::vector<std::string_view> split_fields(std::string_view line, EdgeFormat format) {
  std::vector<std::string_view> fields;
  const char sep = format == EdgeFormat::csv ? ',' : '\t';
  if (format == EdgeFormat::tsv && line.find('\t') == std::string_view::npos) {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\r')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\r') ++j;
      fields.push_back(line.substr(i, j - i));
      i = j;
    }
    return fields;
  }
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  return out;
}

// Calls fn(fields, line_number) for every non-blank, non-comment record.
template <typename Fn>
void for_each_record(std::istream& in, EdgeFormat format, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    fn(split_fields(body, format), number);
  }
}

}  // namespace detail

inline EdgeFormat edge_format_for(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? EdgeFormat::csv : EdgeFormat::tsv;
}

/// Reads `source<sep>target` lines. Duplicate edges collapse and self-loops
/// are dropped (both counted in `stats`).
inline DirectedGraph read_edge_list(std::istream& in, EdgeFormat format,
                                    const std::string& source = "<edges>",
                                    LoadStats* stats = nullptr) {
  DirectedGraph graph;
  LoadStats local;
  detail::for_each_record(in, format, [&](const auto& fields, std::size_t line) {
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw ParseError(source, line, "expected 'source<sep>target'");
    ++local.lines;
    const NodeId u = graph.intern(fields[0]);
    const NodeId v = graph.intern(fields[1]);
    if (u == v) {
      ++local.self_loops;
    } else if (!graph.add_edge(u, v)) {
      ++local.duplicate_edges;
    }
  });
  if (graph.empty()) throw InputError(source + ": empty graph");
  local.edges = graph.edge_count();
  if (stats) *stats = local;
  return graph;
}

inline DirectedGraph load_edge_list(const std::filesystem::path& path, EdgeFormat format,
                                    LoadStats* stats = nullptr) {
  auto in = detail::open_input(path);
  return read_edge_list(in, format, path.string(), stats);
}

/// Format chosen from the file extension (.csv or anything else as TSV).
inline DirectedGraph load_edge_list(const std::filesystem::path& path, LoadStats* stats = nullptr) {
  return load_edge_list(path, edge_format_for(path), stats);
}

/// Reads `node<sep>X|Y` lines. Every node of `graph` must be labeled exactly
/// once; the result has no Unassigned entries.
inline PartitionLabeling read_partition(std::istream& in, const DirectedGraph& graph,
                                        EdgeFormat format = EdgeFormat::tsv,
                                        const std::string& source = "<partition>") {
  PartitionLabeling labeling(graph.node_count(), Side::Unassigned);
  detail::for_each_record(in, format, [&](const auto& fields, std::size_t line) {
    if (fields.size() != 2) throw ParseError(source, line, "expected 'node<sep>X|Y'");
    Side side;
    if (fields[1] == "X" || fields[1] == "x") side = Side::X;
    else if (fields[1] == "Y" || fields[1] == "y") side = Side::Y;
    else throw ParseError(source, line, "unknown label '" + std::string(fields[1]) + "'");
    const auto node = graph.find(fields[0]);
    if (!node) throw ParseError(source, line, "node '" + std::string(fields[0]) + "' is not in the graph");
    if (labeling[*node] != Side::Unassigned)
      throw ParseError(source, line, "node '" + std::string(fields[0]) + "' is labeled twice");
    labeling.set(*node, side);
  });
  std::vector<NodeId> missing = labeling.members(Side::Unassigned);
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << source << ": incomplete partition, " << missing.size() << " unlabeled node(s):";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg << ' ' << graph.external_id(missing[i]);
    if (missing.size() > 20) msg << " ...";
    throw InputError(msg.str());
  }
  return labeling;
}

inline PartitionLabeling load_partition(const std::filesystem::path& path, const DirectedGraph& graph) {
  auto in = detail::open_input(path);
  return read_partition(in, graph, edge_format_for(path), path.string());
}

struct PoolLoadStats {
  std::size_t candidate_edges = 0;
  std::size_t ignored_edges = 0;  // edges inside G, out of a candidate, or between outsiders
};

/// Reads a candidate file: an edge list over the potential graph. Every edge
/// `f -> c` with f in G and c outside G makes f a follower of candidate c.
/// Other edges (inside G, or leaving an outside node) are ignored, so a full
/// potential-graph edge list loads as-is. Candidates are numbered in order of
/// first appearance.
inline CandidatePool read_candidate_pool(std::istream& in, const DirectedGraph& graph,
                                         const PartitionLabeling& labeling, EdgeFormat format,
                                         const std::string& source = "<pool>",
                                         PoolLoadStats* stats = nullptr) {
  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> slot;
  std::vector<std::vector<NodeId>> followers;
  PoolLoadStats local;
  detail::for_each_record(in, format, [&](const auto& fields, std::size_t line) {
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw ParseError(source, line, "expected 'follower<sep>candidate'");
    const auto follower = graph.find(fields[0]);
    const auto target = graph.find(fields[1]);
    if (!follower || target) {
      ++local.ignored_edges;
      return;
    }
    std::string name(fields[1]);
    auto [it, inserted] = slot.try_emplace(name, names.size());
    if (inserted) {
      names.push_back(name);
      followers.emplace_back();
    }
    followers[it->second].push_back(*follower);
    ++local.candidate_edges;
  });
  if (names.empty()) throw InputError(source + ": candidate pool is empty");
  CandidatePool pool;
  pool.reserve(names.size());
  for (std::size_t j = 0; j < names.size(); ++j)
    pool.push_back(make_candidate(graph, labeling, static_cast<NodeId>(graph.node_count() + j),
                                  names[j], std::move(followers[j])));
  if (stats) *stats = local;
  return pool;
}

inline CandidatePool load_candidate_pool(const std::filesystem::path& path, const DirectedGraph& graph,
                                         const PartitionLabeling& labeling,
                                         PoolLoadStats* stats = nullptr) {
  auto in = detail::open_input(path);
  return read_candidate_pool(in, graph, labeling, edge_format_for(path), path.string(), stats);
}

inline void write_edge_list(std::ostream& out, const DirectedGraph& graph,
                            EdgeFormat format = EdgeFormat::tsv) {
  const char sep = format == EdgeFormat::csv ? ',' : '\t';
  for (NodeId u = 0; u < graph.node_count(); ++u)
    for (NodeId v : graph.out_neighbors(u))
      out << graph.external_id(u) << sep << graph.external_id(v) << '\n';
}

/// Writes X/Y labels only; Unassigned (added) nodes go to the sidecar file.
inline void write_partition(std::ostream& out, const DirectedGraph& graph,
                            const PartitionLabeling& labeling, EdgeFormat format = EdgeFormat::tsv) {
  const char sep = format == EdgeFormat::csv ? ',' : '\t';
  for (NodeId v = 0; v < graph.node_count(); ++v)
    if (labeling[v] != Side::Unassigned)
      out << graph.external_id(v) << sep << to_string(labeling[v]) << '\n';
}

inline void write_candidate_pool(std::ostream& out, const DirectedGraph& graph,
                                 const CandidatePool& pool, EdgeFormat format = EdgeFormat::tsv) {
  const char sep = format == EdgeFormat::csv ? ',' : '\t';
  for (const auto& c : pool)
    for (NodeId f : c.followers) out << graph.external_id(f) << sep << c.external_id << '\n';
}

/// One external id per line for every Unassigned node.
inline void write_added_nodes(std::ostream& out, const DirectedGraph& graph,
                              const PartitionLabeling& labeling) {
  for (NodeId v = 0; v < graph.node_count(); ++v)
    if (labeling[v] == Side::Unassigned) out << graph.external_id(v) << '\n';
}

struct AugmentedFiles {
  std::filesystem::path edges;
  std::filesystem::path partition;
  std::filesystem::path added;  // sidecar
};

inline void save_augmented(const AugmentedFiles& files, const DirectedGraph& graph,
                           const PartitionLabeling& labeling) {
  {
    auto out = detail::open_output(files.edges);
    write_edge_list(out, graph, edge_format_for(files.edges));
  }
  {
    auto out = detail::open_output(files.partition);
    write_partition(out, graph, labeling, edge_format_for(files.partition));
  }
  auto out = detail::open_output(files.added);
  write_added_nodes(out, graph, labeling);
}

/// Inverse of save_augmented: nodes listed in the sidecar are Unassigned and
/// must not appear in the partition file.
inline Augmented load_augmented(const AugmentedFiles& files) {
  Augmented result;
  result.graph = load_edge_list(files.edges, edge_format_for(files.edges));
  auto added = detail::open_input(files.added);
  std::vector<NodeId> added_ids;
  std::string line;
  while (std::getline(added, line)) {
    const auto name = detail::trim(line);
    if (name.empty() || name.front() == '#') continue;
    // an added node may have lost all edges, so it can be absent from the edge list
    added_ids.push_back(result.graph.intern(name));
  }
  result.labeling = PartitionLabeling(result.graph.node_count(), Side::Unassigned);
  auto part = detail::open_input(files.partition);
  const auto format = edge_format_for(files.partition);
  detail::for_each_record(part, format, [&](const auto& fields, std::size_t lineno) {
    if (fields.size() != 2) throw ParseError(files.partition.string(), lineno, "expected 'node<sep>X|Y'");
    const auto node = result.graph.find(fields[0]);
    if (!node) throw ParseError(files.partition.string(), lineno, "unknown node");
    if (fields[1] == "X") result.labeling.set(*node, Side::X);
    else if (fields[1] == "Y") result.labeling.set(*node, Side::Y);
    else throw ParseError(files.partition.string(), lineno, "unknown label");
  });
  for (NodeId a : added_ids)
    if (result.labeling[a] != Side::Unassigned)
      throw InputError("added node '" + result.graph.external_id(a) + "' also appears in the partition");
  for (NodeId v = 0; v < result.graph.node_count(); ++v)
    if (result.labeling[v] == Side::Unassigned &&
        std::find(added_ids.begin(), added_ids.end(), v) == added_ids.end())
      throw InputError("node '" + result.graph.external_id(v) + "' is neither labeled nor listed as added");
  if (!added_ids.empty()) result.added = added_ids.back();
  return result;
}

}  // namespace rwc
