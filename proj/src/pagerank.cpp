#include "rgmx/pagerank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "rgmx/errors.hpp"
#include "sparse_ops.hpp"

namespace rgmx {

void GoogleParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw_error(ErrorCategory::Config, "alpha must lie in (0,1), got " + std::to_string(alpha));
  if (!(tol > 0.0)) throw_error(ErrorCategory::Config, "tol must be positive");
  if (max_iters == 0) throw_error(ErrorCategory::Config, "max_iters must be positive");
}

namespace detail {

int resolve_threads(int requested, std::size_t work_items) {
  int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  // keep chunks worth the spawn cost; depends only on the input size
  std::size_t max_useful = std::max<std::size_t>(1, work_items / 4096);
  return static_cast<int>(std::min<std::size_t>(t, max_useful));
}

void scatter_links(const DirectedGraph& g, double alpha, std::span<const double> in,
                   std::span<double> out, NodeId lo, NodeId hi) {
  for (NodeId j = lo; j < hi; ++j) {
    const double w = alpha * in[j] * g.inv_out_degree(j);
    if (w == 0.0) continue;
    for (NodeId t : g.out_targets(j)) out[t] += w;
  }
}

std::pair<double, double> mass_sums(const DirectedGraph& g, std::span<const double> in, NodeId lo,
                                    NodeId hi) {
  double total = 0.0, dangling = 0.0;
  for (NodeId j = lo; j < hi; ++j) total += in[j];
  const auto& dang = g.dangling_nodes();
  auto it = std::lower_bound(dang.begin(), dang.end(), lo);
  for (; it != dang.end() && *it < hi; ++it) dangling += in[*it];
  return {total, dangling};
}

void apply_google_into(const DirectedGraph& g, const GoogleParams& params,
                       std::span<const double> in, std::span<double> out, int threads,
                       std::vector<std::vector<double>>& bufs) {
  const std::size_t n = g.num_nodes();
  const int t = resolve_threads(threads, n);
  const double alpha = params.alpha;

  double total = 0.0, dangling = 0.0;
  if (t == 1) {
    std::fill(out.begin(), out.end(), 0.0);
    scatter_links(g, alpha, in, out, 0, static_cast<NodeId>(n));
    std::tie(total, dangling) = mass_sums(g, in, 0, static_cast<NodeId>(n));
  } else {
    bufs.resize(t);
    std::vector<std::pair<double, double>> partial(t);
    std::vector<std::thread> workers;
    workers.reserve(t);
    for (int w = 0; w < t; ++w) {
      workers.emplace_back([&, w] {
        auto& buf = bufs[w];
        buf.assign(n, 0.0);
        const NodeId lo = static_cast<NodeId>(n * w / t);
        const NodeId hi = static_cast<NodeId>(n * (w + 1) / t);
        scatter_links(g, alpha, in, buf, lo, hi);
        partial[w] = mass_sums(g, in, lo, hi);
      });
    }
    for (auto& w : workers) w.join();
    // fixed reduction order over workers
    for (int w = 0; w < t; ++w) {
      total += partial[w].first;
      dangling += partial[w].second;
    }
    std::vector<std::thread> mergers;
    mergers.reserve(t);
    for (int w = 0; w < t; ++w) {
      mergers.emplace_back([&, w] {
        const std::size_t lo = n * w / t;
        const std::size_t hi = n * (w + 1) / t;
        for (std::size_t i = lo; i < hi; ++i) {
          double acc = bufs[0][i];
          for (int b = 1; b < t; ++b) acc += bufs[b][i];
          out[i] = acc;
        }
      });
    }
    for (auto& w : mergers) w.join();
  }

  const double uniform = (alpha * dangling + (1.0 - alpha) * total) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] += uniform;
}

}  // namespace detail

std::vector<double> apply_google(const DirectedGraph& graph, const GoogleParams& params,
                                 std::span<const double> v, int threads) {
  params.validate();
  if (v.size() != graph.num_nodes())
    throw_error(ErrorCategory::Validate, "vector length " + std::to_string(v.size()) +
                                             " does not match node count " +
                                             std::to_string(graph.num_nodes()));
  std::vector<double> out(v.size());
  std::vector<std::vector<double>> bufs;
  detail::apply_google_into(graph, params, v, out, threads, bufs);
  return out;
}

PageRankResult pagerank(const DirectedGraph& graph, const GoogleParams& params, int threads) {
  params.validate();
  const std::size_t n = graph.num_nodes();
  if (n == 0) throw_error(ErrorCategory::Validate, "empty graph");

  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  std::vector<std::vector<double>> bufs;

  double residual = 0.0;
  std::uint32_t iter = 0;
  for (iter = 1; iter <= params.max_iters; ++iter) {
    detail::apply_google_into(graph, params, p, next, threads, bufs);
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual += std::abs(next[i] - p[i]);
    p.swap(next);
    if (residual < params.tol) break;
  }
  if (iter > params.max_iters)
    throw_error(ErrorCategory::Numeric,
                "pagerank did not converge in " + std::to_string(params.max_iters) +
                    " iterations (residual " + std::to_string(residual) + ")");

  const double mass = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= mass;

  PageRankResult res;
  res.rank.resize(n);
  std::iota(res.rank.begin(), res.rank.end(), NodeId{0});
  std::sort(res.rank.begin(), res.rank.end(), [&](NodeId a, NodeId b) {
    if (p[a] != p[b]) return p[a] > p[b];
    return a < b;
  });
  res.p = std::move(p);
  res.iterations = iter;
  res.residual = residual;
  return res;
}

std::vector<LocalRankEntry> local_rank(const PageRankResult& pr, const SubsetSpec& subset) {
  std::vector<LocalRankEntry> entries;
  entries.reserve(subset.size());
  for (std::size_t k = 0; k < subset.size(); ++k) {
    const auto& m = subset.member(k);
    entries.push_back({k, m.node, pr.p.at(m.node), 0});
  }
  std::sort(entries.begin(), entries.end(), [](const LocalRankEntry& a, const LocalRankEntry& b) {
    if (a.probability != b.probability) return a.probability > b.probability;
    return a.node < b.node;
  });
  for (std::size_t i = 0; i < entries.size(); ++i)
    entries[i].local_rank = static_cast<std::uint32_t>(i + 1);
  return entries;
}

}  // namespace rgmx
