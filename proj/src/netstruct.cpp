#include "rgmx/netstruct.hpp"

#include <algorithm>
#include <unordered_map>

#include "rgmx/errors.hpp"

namespace rgmx {

namespace {

struct Candidate {
  std::size_t member;
  double weight;
  std::uint32_t local_rank;
};

std::vector<std::size_t> pick_top(const ReducedSet& rs, const SubsetSpec& subset,
                                  std::size_t member, std::size_t k,
                                  const CategoryFilter& filter, bool keep_zero) {
  if (member >= rs.size())
    throw_error(ErrorCategory::Validate, "member index " + std::to_string(member) +
                                             " outside the " + std::to_string(rs.size()) +
                                             "-member set");
  if (k == 0) return {};
  const Eigen::Index j = static_cast<Eigen::Index>(member);
  std::vector<Candidate> candidates;
  candidates.reserve(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (i == member) continue;  // a friend list naming oneself is meaningless
    if (filter && !filter(subset.member(i).category)) continue;
    const double w = rs.grr(static_cast<Eigen::Index>(i), j) +
                     rs.gqrnd(static_cast<Eigen::Index>(i), j);
    if (!keep_zero && !(w > 0.0)) continue;
    candidates.push_back({i, w, rs.local_rank[i]});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.local_rank < b.local_rank;
  });
  if (candidates.size() > k) candidates.resize(k);
  std::vector<std::size_t> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(c.member);
  return out;
}

/// Shared closure loop: `select` yields the ordered friends of one member.
FriendNetwork close_over(const ReducedSet& rs, const SubsetSpec& subset,
                         std::span<const std::size_t> seeds,
                         const std::function<std::vector<std::size_t>(std::size_t)>& select) {
  if (seeds.empty()) throw_error(ErrorCategory::Validate, "friend closure needs at least one seed");
  for (std::size_t s : seeds)
    if (s >= rs.size())
      throw_error(ErrorCategory::Validate, "seed index " + std::to_string(s) + " outside the set");

  FriendNetwork net;
  std::unordered_map<std::size_t, std::size_t> known;  // member -> nodes index
  std::vector<std::size_t> frontier;
  for (std::size_t s : seeds) {
    if (known.count(s)) continue;
    known.emplace(s, net.nodes.size());
    net.nodes.push_back({s, true, 0});
    frontier.push_back(s);
  }

  std::uint32_t generation = 0;
  while (!frontier.empty()) {
    ++generation;
    std::vector<std::size_t> next;
    bool grew = false;
    for (std::size_t from : frontier) {
      for (std::size_t to : select(from)) {
        const double w = rs.grr(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) +
                         rs.gqrnd(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from));
        net.edges.push_back({from, to, w, generation});
        grew = true;
        if (!known.count(to)) {
          known.emplace(to, net.nodes.size());
          net.nodes.push_back({to, false, generation});
          next.push_back(to);
        }
      }
    }
    if (grew) net.generations = generation;
    frontier = std::move(next);
  }
  (void)subset;
  return net;
}

}  // namespace

std::vector<std::size_t> top_friends(const ReducedSet& rs, const SubsetSpec& subset,
                                     std::size_t member, std::size_t k,
                                     const CategoryFilter& candidate_filter, bool keep_zero) {
  if (k == 0) throw_error(ErrorCategory::Validate, "top_friends needs k >= 1");
  return pick_top(rs, subset, member, k, candidate_filter, keep_zero);
}

FriendNetwork friend_closure(const ReducedSet& rs, const SubsetSpec& subset,
                             std::span<const std::size_t> seeds, std::size_t k,
                             const CategoryFilter& candidate_filter, bool keep_zero) {
  return close_over(rs, subset, seeds, [&](std::size_t from) {
    return pick_top(rs, subset, from, k, candidate_filter, keep_zero);
  });
}

FriendNetwork bipartite_closure(const ReducedSet& rs, const SubsetSpec& subset,
                                std::span<const std::size_t> seeds, std::size_t k_groups,
                                std::size_t k_countries, std::string_view country_category,
                                bool keep_zero) {
  const std::string country(country_category);
  return close_over(rs, subset, seeds, [&, country](std::size_t from) {
    auto groups = pick_top(rs, subset, from, k_groups,
                           [&](std::string_view cat) { return cat != country; }, keep_zero);
    auto countries = pick_top(rs, subset, from, k_countries,
                              [&](std::string_view cat) { return cat == country; }, keep_zero);
    groups.insert(groups.end(), countries.begin(), countries.end());
    return groups;
  });
}

}  // namespace rgmx
