#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rgmx {

using NodeId = std::uint32_t;

/// Counters collected while building a graph from raw edges.
struct ValidationReport {
  std::uint64_t num_nodes = 0;
  std::uint64_t num_edges = 0;           ///< after dedupe / self-loop policy
  std::uint64_t duplicates_removed = 0;  ///< adjacency is binary, extra copies dropped
  std::uint64_t self_loops = 0;          ///< self-loops present in the input
  std::uint64_t dangling_nodes = 0;      ///< nodes with out-degree zero
};

struct LoadOptions {
  bool drop_self_loops = false;  ///< default keeps them (they count toward out-degree)
};

/// Immutable directed graph in compressed column-major-by-source form:
/// the sorted, distinct targets of source j are stored contiguously.
class DirectedGraph {
public:
  DirectedGraph() = default;

  /// Builds from an edge list. Edges may contain duplicates (collapsed) and
  /// self-loops (kept or dropped per options); both are counted in the report.
  static DirectedGraph from_edges(NodeId num_nodes,
                                  std::vector<std::pair<NodeId, NodeId>> edges,
                                  const LoadOptions& options = {},
                                  ValidationReport* report = nullptr);

  std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return targets_.size(); }

  std::span<const NodeId> out_targets(NodeId source) const {
    return {targets_.data() + offsets_[source], targets_.data() + offsets_[source + 1]};
  }
  std::uint32_t out_degree(NodeId source) const {
    return static_cast<std::uint32_t>(offsets_[source + 1] - offsets_[source]);
  }
  /// 1/k_out(source), or 0 for dangling nodes (precomputed; the transition
  /// kernels are division-free on the hot path).
  double inv_out_degree(NodeId source) const { return inv_out_degree_[source]; }
  bool is_dangling(NodeId source) const { return out_degree(source) == 0; }

  std::uint64_t count_dangling() const;

  /// Node IDs of every dangling node, ascending.
  const std::vector<NodeId>& dangling_nodes() const { return dangling_; }

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::string& label(NodeId v) const { return labels_[v]; }
  void set_labels(std::vector<std::string> labels);

  bool operator==(const DirectedGraph& other) const {
    return offsets_ == other.offsets_ && targets_ == other.targets_;
  }

private:
  std::vector<std::uint64_t> offsets_;  // size N+1
  std::vector<NodeId> targets_;         // sorted within each source block
  std::vector<double> inv_out_degree_;
  std::vector<NodeId> dangling_;
  std::vector<std::string> labels_;
};

struct EdgeListData {
  DirectedGraph graph;
  ValidationReport report;
};

/// Reads a "source<TAB>target" edge list (any whitespace accepted, '#' starts
/// a comment, optional leading "N <count>" line declares trailing isolated
/// nodes). Throws Error{Parse|Io|Validate} with the offending line number.
EdgeListData load_edge_list(const std::filesystem::path& path, const LoadOptions& options = {});

/// Writes the graph back in the same edge-list format (with an "N <count>"
/// header so isolated nodes survive the round trip).
void write_edge_list(const DirectedGraph& graph, const std::filesystem::path& path);

/// Optional sidecar mapping "node_id<TAB>label" used for display names.
std::vector<std::string> load_labels(const std::filesystem::path& path, std::size_t num_nodes);

}  // namespace rgmx
