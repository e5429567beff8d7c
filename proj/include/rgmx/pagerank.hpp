#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rgmx/graph.hpp"
#include "rgmx/subset.hpp"

namespace rgmx {

/// Parameters of the Google matrix G = alpha*S + (1-alpha)/N and of the
/// power iteration that extracts its stationary vector.
struct GoogleParams {
  double alpha = 0.85;
  double tol = 1e-12;  ///< L1 change threshold between iterates
  std::uint32_t max_iters = 10000;

  void validate() const;
};

struct PageRankResult {
  std::vector<double> p;     ///< stationary probability per node, sums to 1
  std::vector<NodeId> rank;  ///< rank[k] = node with the (k+1)-th largest p; ties by ascending id
  std::uint32_t iterations = 0;
  double residual = 0.0;  ///< final L1 change
};

/// y = G*v without materializing G: one sparse pass over the out-adjacency,
/// with dangling-column mass and teleportation folded into two scalars.
/// `threads` = 0 picks the hardware count. For a fixed thread count the
/// result is bit-reproducible.
std::vector<double> apply_google(const DirectedGraph& graph, const GoogleParams& params,
                                 std::span<const double> v, int threads = 0);

/// Power iteration from the uniform vector until the L1 change drops below
/// params.tol. Throws Error{Numeric} with the residual on non-convergence.
PageRankResult pagerank(const DirectedGraph& graph, const GoogleParams& params = {},
                        int threads = 0);

struct LocalRankEntry {
  std::size_t member_index;  ///< position in the SubsetSpec
  NodeId node;
  double probability;        ///< global PageRank probability
  std::uint32_t local_rank;  ///< 1..Nr within the subset
};

/// Subset members ordered by descending global probability (ties by
/// ascending node id), with local indices 1..Nr attached.
std::vector<LocalRankEntry> local_rank(const PageRankResult& pr, const SubsetSpec& subset);

}  // namespace rgmx
