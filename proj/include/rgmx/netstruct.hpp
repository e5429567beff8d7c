#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "rgmx/reduced.hpp"
#include "rgmx/subset.hpp"

namespace rgmx {

/// Predicate over a member's category; empty means "accept everything".
using CategoryFilter = std::function<bool(std::string_view)>;

struct FriendNode {
  std::size_t member = 0;          ///< subset member index
  bool seed = false;
  std::uint32_t generation = 0;    ///< iteration at which the node joined (seeds: 0)
};

struct FriendEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  double weight = 0.0;             ///< (grr + gqrnd)(to, from)
  std::uint32_t generation = 0;    ///< iteration at which the edge was added
};

/// Result of iterated top-k friend expansion. Every node that appears has
/// been expanded; every non-seed node is reachable from a seed.
struct FriendNetwork {
  std::vector<FriendNode> nodes;   ///< insertion order: seeds first, then by generation
  std::vector<FriendEdge> edges;
  std::uint32_t generations = 0;   ///< last generation that added anything
};

/// The k members i != j (passing the filter) carrying the largest weights in
/// column j of grr + gqrnd; ties by ascending local PageRank index. Only
/// strictly positive weights qualify unless keep_zero admits the rest, so
/// fewer than k may come back.
std::vector<std::size_t> top_friends(const ReducedSet& rs, const SubsetSpec& subset,
                                     std::size_t member, std::size_t k,
                                     const CategoryFilter& candidate_filter = {},
                                     bool keep_zero = false);

/// Breadth-first top-k expansion from the seeds until no new node joins.
FriendNetwork friend_closure(const ReducedSet& rs, const SubsetSpec& subset,
                             std::span<const std::size_t> seeds, std::size_t k,
                             const CategoryFilter& candidate_filter = {},
                             bool keep_zero = false);

/// Variant with two quotas per expanded node: its top k_groups friends among
/// non-country members and its top k_countries friends among country members.
FriendNetwork bipartite_closure(const ReducedSet& rs, const SubsetSpec& subset,
                                std::span<const std::size_t> seeds, std::size_t k_groups,
                                std::size_t k_countries,
                                std::string_view country_category = "country",
                                bool keep_zero = false);

}  // namespace rgmx
