#pragma once

// Internal sparse kernels for the implicit Google operator. Not installed.

#include <span>
#include <utility>
#include <vector>

#include "rgmx/graph.hpp"
#include "rgmx/pagerank.hpp"

namespace rgmx::detail {

int resolve_threads(int requested, std::size_t work_items);

/// out[i] += alpha * in[j] / k_out(j) over all links of sources [lo, hi).
void scatter_links(const DirectedGraph& g, double alpha, std::span<const double> in,
                   std::span<double> out, NodeId lo, NodeId hi);

/// (total, dangling_total) of in over sources [lo, hi).
std::pair<double, double> mass_sums(const DirectedGraph& g, std::span<const double> in, NodeId lo,
                                    NodeId hi);

/// Full y = G*x for signed x, overwriting out. With threads > 1, sources are
/// partitioned into contiguous chunks scattered into per-worker buffers that
/// are merged in fixed worker order, so the result is bit-reproducible for a
/// fixed thread count. bufs is scratch reused across calls.
void apply_google_into(const DirectedGraph& g, const GoogleParams& params,
                       std::span<const double> in, std::span<double> out, int threads,
                       std::vector<std::vector<double>>& bufs);

}  // namespace rgmx::detail
