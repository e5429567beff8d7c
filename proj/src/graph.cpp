#include "rgmx/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "rgmx/errors.hpp"

namespace rgmx {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_node_id(std::string_view tok, NodeId& out) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || v > 0xFFFFFFFFull) return false;
  out = static_cast<NodeId>(v);
  return true;
}

}  // namespace

DirectedGraph DirectedGraph::from_edges(NodeId num_nodes,
                                        std::vector<std::pair<NodeId, NodeId>> edges,
                                        const LoadOptions& options, ValidationReport* report) {
  if (num_nodes == 0) throw_error(ErrorCategory::Validate, "empty graph (no nodes)");
  for (const auto& [s, t] : edges) {
    if (s >= num_nodes || t >= num_nodes)
      throw_error(ErrorCategory::Validate,
                  "edge (" + std::to_string(s) + ", " + std::to_string(t) +
                      ") references a node outside [0, " + std::to_string(num_nodes) + ")");
  }

  ValidationReport rep;
  rep.num_nodes = num_nodes;

  std::sort(edges.begin(), edges.end());
  std::uint64_t self_loops_seen = 0;
  std::vector<std::pair<NodeId, NodeId>> kept;
  kept.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i > 0 && edges[i] == edges[i - 1]) {
      ++rep.duplicates_removed;
      continue;
    }
    if (edges[i].first == edges[i].second) {
      ++self_loops_seen;
      if (options.drop_self_loops) continue;
    }
    kept.push_back(edges[i]);
  }
  rep.self_loops = self_loops_seen;
  rep.num_edges = kept.size();

  DirectedGraph g;
  g.offsets_.assign(num_nodes + 1, 0);
  for (const auto& [s, t] : kept) ++g.offsets_[s + 1];
  for (std::size_t j = 0; j < num_nodes; ++j) g.offsets_[j + 1] += g.offsets_[j];
  g.targets_.resize(kept.size());
  {
    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [s, t] : kept) g.targets_[cursor[s]++] = t;
  }
  g.inv_out_degree_.resize(num_nodes);
  for (NodeId j = 0; j < num_nodes; ++j) {
    const auto k = g.out_degree(j);
    g.inv_out_degree_[j] = k == 0 ? 0.0 : 1.0 / static_cast<double>(k);
    if (k == 0) g.dangling_.push_back(j);
  }
  rep.dangling_nodes = g.dangling_.size();

  if (report) *report = rep;
  return g;
}

std::uint64_t DirectedGraph::count_dangling() const { return dangling_.size(); }

void DirectedGraph::set_labels(std::vector<std::string> labels) {
  if (labels.size() != num_nodes())
    throw_error(ErrorCategory::Validate, "label count " + std::to_string(labels.size()) +
                                             " does not match node count " +
                                             std::to_string(num_nodes()));
  labels_ = std::move(labels);
}

EdgeListData load_edge_list(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorCategory::Io, "cannot open edge list: " + path.string());

  std::vector<std::pair<NodeId, NodeId>> edges;
  NodeId declared_n = 0;
  bool has_declared_n = false;
  NodeId max_id = 0;
  bool saw_any_node = false;

  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = trim(sv.substr(0, hash));
    if (sv.empty()) continue;

    std::istringstream fields{std::string(sv)};
    std::string a, b, extra;
    fields >> a >> b;
    if (fields >> extra)
      throw_error(ErrorCategory::Parse,
                  path.filename().string() + ":" + std::to_string(line_no) + ": expected two fields");

    if (!has_declared_n && edges.empty() && a == "N") {
      if (b.empty() || !parse_node_id(b, declared_n) || declared_n == 0)
        throw_error(ErrorCategory::Parse, path.filename().string() + ":" + std::to_string(line_no) +
                                              ": bad node count in N line");
      has_declared_n = true;
      continue;
    }

    NodeId s = 0, t = 0;
    if (b.empty() || !parse_node_id(a, s) || !parse_node_id(b, t))
      throw_error(ErrorCategory::Parse, path.filename().string() + ":" + std::to_string(line_no) +
                                            ": malformed edge line '" + std::string(sv) + "'");
    if (has_declared_n && (s >= declared_n || t >= declared_n))
      throw_error(ErrorCategory::Validate,
                  path.filename().string() + ":" + std::to_string(line_no) + ": node id " +
                      std::to_string(std::max(s, t)) + " outside declared range N=" +
                      std::to_string(declared_n));
    max_id = std::max({max_id, s, t});
    saw_any_node = true;
    edges.emplace_back(s, t);
  }

  NodeId n = has_declared_n ? declared_n : (saw_any_node ? max_id + 1 : 0);
  if (n == 0) throw_error(ErrorCategory::Validate, "empty graph: " + path.string());

  EdgeListData out;
  out.graph = DirectedGraph::from_edges(n, std::move(edges), options, &out.report);
  return out;
}

void write_edge_list(const DirectedGraph& graph, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_error(ErrorCategory::Io, "cannot write edge list: " + path.string());
  out << "N " << graph.num_nodes() << "\n";
  for (NodeId j = 0; j < graph.num_nodes(); ++j)
    for (NodeId t : graph.out_targets(j)) out << j << "\t" << t << "\n";
  if (!out) throw_error(ErrorCategory::Io, "write failed: " + path.string());
}

std::vector<std::string> load_labels(const std::filesystem::path& path, std::size_t num_nodes) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorCategory::Io, "cannot open label file: " + path.string());
  std::vector<std::string> labels(num_nodes);
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    auto tab = sv.find('\t');
    if (tab == std::string_view::npos)
      throw_error(ErrorCategory::Parse, path.filename().string() + ":" + std::to_string(line_no) +
                                            ": expected 'node_id<TAB>label'");
    NodeId id = 0;
    if (!parse_node_id(trim(sv.substr(0, tab)), id) || id >= num_nodes)
      throw_error(ErrorCategory::Validate, path.filename().string() + ":" + std::to_string(line_no) +
                                               ": bad node id");
    labels[id] = std::string(trim(sv.substr(tab + 1)));
  }
  return labels;
}

std::string_view to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Io: return "io";
    case ErrorCategory::Parse: return "parse";
    case ErrorCategory::Validate: return "validate";
    case ErrorCategory::Numeric: return "numeric";
    case ErrorCategory::Config: return "config";
    case ErrorCategory::Internal: return "internal";
  }
  return "internal";
}

}  // namespace rgmx
