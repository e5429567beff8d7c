#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rgmx/graph.hpp"

namespace rgmx {

struct SubsetMember {
  NodeId node = 0;
  std::string category;
  std::string display_name;
};

/// Ordered selection of Nr distinct nodes. Member order is the canonical
/// row/column order of every Nr x Nr matrix downstream.
class SubsetSpec {
public:
  SubsetSpec() = default;

  /// Validates against the graph: distinct IDs, all in range, non-empty.
  static SubsetSpec from_members(std::vector<SubsetMember> members, const DirectedGraph& graph);

  std::size_t size() const noexcept { return members_.size(); }
  const SubsetMember& member(std::size_t k) const { return members_[k]; }
  std::span<const SubsetMember> members() const { return members_; }

  std::optional<std::size_t> index_of_node(NodeId node) const;

  /// Member indices whose category equals `category`, in member order.
  std::vector<std::size_t> members_with_category(std::string_view category) const;

  /// Distinct categories in first-appearance order.
  std::vector<std::string> categories() const;

private:
  std::vector<SubsetMember> members_;
  std::unordered_map<NodeId, std::size_t> node_to_index_;
};

/// Reads "node_id<TAB>category<TAB>display name" lines, '#' comments allowed.
/// File order is preserved (it is not assumed to be rank order).
SubsetSpec load_subset(const std::filesystem::path& path, const DirectedGraph& graph);

}  // namespace rgmx
