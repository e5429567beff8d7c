#include "rgmx/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "rgmx/errors.hpp"
#include "sparse_ops.hpp"

namespace rgmx {

namespace {

struct ScatterSet {
  std::vector<NodeId> member_node;       // r in member order
  std::vector<std::uint8_t> in_subset;   // mask over nodes
  std::size_t ns = 0;
};

ScatterSet make_scatter_set(const DirectedGraph& graph, const SubsetSpec& subset) {
  ScatterSet s;
  s.member_node.reserve(subset.size());
  s.in_subset.assign(graph.num_nodes(), 0);
  for (const auto& m : subset.members()) {
    s.member_node.push_back(m.node);
    s.in_subset[m.node] = 1;
  }
  s.ns = graph.num_nodes() - subset.size();
  return s;
}

/// One multiplication by G for a vector supported on the scattering set,
/// single-threaded. On return, out rows over the subset hold the projection
/// onto the subset (G_rs x) and the rest holds G_ss x.
void apply_full_once(const DirectedGraph& g, const GoogleParams& params,
                     std::span<const double> in, std::span<double> out) {
  const std::size_t n = g.num_nodes();
  std::fill(out.begin(), out.end(), 0.0);
  detail::scatter_links(g, params.alpha, in, out, 0, static_cast<NodeId>(n));
  auto [total, dangling] = detail::mass_sums(g, in, 0, static_cast<NodeId>(n));
  const double uniform = (params.alpha * dangling + (1.0 - params.alpha) * total) / double(n);
  for (std::size_t i = 0; i < n; ++i) out[i] += uniform;
}

double l1_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct ScatteringEigenpair {
  double lambda_c = 0.0;
  std::vector<double> psi_r;  // length N, zero on the subset, sums to 1
  std::vector<double> psi_l;  // length N, zero on the subset, psi_l . psi_r = 1
};

/// Leading eigenpair of the scattering block by power iteration on the
/// implicit operator. The right sweep is sequential; the left sweep is a
/// gather and therefore bit-stable for any thread count.
///
/// Convergence needs both the eigenvalue change below eig_tol and the vector
/// change below a scale-aware threshold: downstream, eigenpair error is
/// amplified by 1/(1 - lambda_c), which for small subsets of huge graphs
/// reaches ~1e4. When the vector change bottoms out at the rounding floor
/// instead, the iterate is accepted as converged.
ScatteringEigenpair scattering_eigenpair(const DirectedGraph& g, const GoogleParams& params,
                                         const ScatterSet& set, const ReducedOptions& opts,
                                         int threads) {
  const std::size_t n = g.num_nodes();
  ScatteringEigenpair pair;
  pair.psi_r.assign(n, 0.0);
  const double init = 1.0 / static_cast<double>(set.ns);
  for (std::size_t v = 0; v < n; ++v)
    if (!set.in_subset[v]) pair.psi_r[v] = init;

  auto vec_tol = [&](double lambda) { return std::max((1.0 - lambda) * 1e-11, 1e-15); };

  std::vector<double> work(n);
  double lambda_prev = -1.0, change_prev = 0.0, radius_est = 0.0;
  bool converged = false;
  int streak = 0, plateau = 0;
  double best_vec_change = std::numeric_limits<double>::max();
  for (std::uint32_t it = 0; it < opts.max_eig_iters; ++it) {
    apply_full_once(g, params, pair.psi_r, work);
    for (NodeId r : set.member_node) work[r] = 0.0;
    const double lambda = std::accumulate(work.begin(), work.end(), 0.0);
    if (!(lambda > 0.0))
      throw_error(ErrorCategory::Numeric, "scattering eigenpair: nonpositive eigenvalue estimate");
    double vec_change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      const double next = work[v] / lambda;
      vec_change += std::abs(next - pair.psi_r[v]);
      pair.psi_r[v] = next;
    }
    const double change = std::abs(lambda - lambda_prev);
    if (change_prev > 0.0) radius_est = change / change_prev;
    lambda_prev = lambda;
    change_prev = change;
    streak = change < opts.eig_tol ? streak + 1 : 0;
    if (streak >= 2) {  // eigenvalue settled; now drive the vector down
      plateau = vec_change < best_vec_change ? 0 : plateau + 1;
      if (vec_change < vec_tol(lambda) || plateau >= 20) {
        converged = true;
        break;
      }
    }
    best_vec_change = std::min(best_vec_change, vec_change);
  }
  if (!converged)
    throw_error(ErrorCategory::Numeric,
                "scattering eigenpair stagnated after " + std::to_string(opts.max_eig_iters) +
                    " iterations (eigenvalue change ratio ~" + std::to_string(radius_est) +
                    "); the subleading eigenvalue is too close to the leading one");
  pair.lambda_c = lambda_prev;
  if (!(pair.lambda_c > 0.0 && pair.lambda_c < 1.0))
    throw_error(ErrorCategory::Numeric,
                "scattering eigenvalue outside (0,1): " + std::to_string(pair.lambda_c));

  // Left vector: gather z[m] = sum_i G(i,m) x[i] over scattering sources m.
  std::vector<double> x(n, 0.0), z(n, 0.0);
  for (std::size_t v = 0; v < n; ++v)
    if (!set.in_subset[v]) x[v] = init;

  const int t = detail::resolve_threads(threads, n);
  auto gather_pass = [&](double total_x) {
    auto run = [&](NodeId lo, NodeId hi) {
      for (NodeId m = lo; m < hi; ++m) {
        if (set.in_subset[m]) {
          z[m] = 0.0;
          continue;
        }
        auto targets = g.out_targets(m);
        double acc;
        if (targets.empty()) {
          acc = total_x / static_cast<double>(n);
        } else {
          double link = 0.0;
          for (NodeId i : targets) link += x[i];
          acc = params.alpha * link * g.inv_out_degree(m) +
                (1.0 - params.alpha) * total_x / static_cast<double>(n);
        }
        z[m] = acc;
      }
    };
    if (t == 1) {
      run(0, static_cast<NodeId>(n));
    } else {
      std::vector<std::thread> workers;
      for (int w = 0; w < t; ++w)
        workers.emplace_back(run, static_cast<NodeId>(n * w / t),
                             static_cast<NodeId>(n * (w + 1) / t));
      for (auto& th : workers) th.join();
    }
  };

  lambda_prev = -1.0;
  converged = false;
  streak = 0;
  plateau = 0;
  best_vec_change = std::numeric_limits<double>::max();
  for (std::uint32_t it = 0; it < opts.max_eig_iters; ++it) {
    gather_pass(std::accumulate(x.begin(), x.end(), 0.0));
    const double lambda = std::accumulate(z.begin(), z.end(), 0.0);
    if (!(lambda > 0.0))
      throw_error(ErrorCategory::Numeric, "scattering eigenpair: nonpositive left estimate");
    double vec_change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      const double next = z[v] / lambda;
      vec_change += std::abs(next - x[v]);
      x[v] = next;
    }
    const double change = std::abs(lambda - lambda_prev);
    lambda_prev = lambda;
    streak = change < opts.eig_tol ? streak + 1 : 0;
    if (streak >= 2) {
      plateau = vec_change < best_vec_change ? 0 : plateau + 1;
      if (vec_change < vec_tol(lambda) || plateau >= 20) {
        converged = true;
        break;
      }
    }
    best_vec_change = std::min(best_vec_change, vec_change);
  }
  if (!converged)
    throw_error(ErrorCategory::Numeric, "scattering left eigenvector stagnated");

  const double scale = dot(x, pair.psi_r);
  if (!(scale > 0.0))
    throw_error(ErrorCategory::Numeric, "scattering eigenvectors are numerically orthogonal");
  pair.psi_l.resize(n);
  for (std::size_t v = 0; v < n; ++v) pair.psi_l[v] = x[v] / scale;
  return pair;
}

// Right-hand-side columns are solved in interleaved blocks: t holds kBlock
// column values per node (node-major), so one pass over the adjacency feeds
// every column of the block. Per-column arithmetic order is unchanged, which
// keeps results bit-identical for any thread count.
constexpr std::size_t kBlock = 8;

struct BlockResult {
  Eigen::MatrixXd gqr_cols;  // nr x width
  std::vector<double> term_mass;  // max column mass per summed term
  double tail_bound = 0.0;
  bool failed = false;
  double radius_est = 0.0;
};

BlockResult solve_deflated_block(const DirectedGraph& g, const GoogleParams& params,
                                 const ScatterSet& set, const ScatteringEigenpair& pair,
                                 const ReducedOptions& opts, std::size_t col_begin,
                                 std::size_t width) {
  const std::size_t n = g.num_nodes();
  const std::size_t nr = set.member_node.size();
  const double alpha = params.alpha;

  BlockResult res;
  res.gqr_cols = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nr),
                                       static_cast<Eigen::Index>(width));

  std::vector<double> t(n * width, 0.0), y(n * width);
  // s-rows of G's columns for the block members
  for (std::size_t b = 0; b < width; ++b) {
    const NodeId src = set.member_node[col_begin + b];
    const bool dang = g.out_degree(src) == 0;
    const double uniform = ((1.0 - alpha) + (dang ? alpha : 0.0)) / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) t[m * width + b] = uniform;
    const double w = alpha * g.inv_out_degree(src);
    for (NodeId tgt : g.out_targets(src)) t[tgt * width + b] += w;
  }
  for (NodeId r : set.member_node)
    for (std::size_t b = 0; b < width; ++b) t[r * width + b] = 0.0;

  double dots[kBlock], tmp[kBlock], mass[kBlock], totals[kBlock], dangs[kBlock];
  auto deflate = [&](std::vector<double>& v) {
    std::fill(dots, dots + width, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      const double pl = pair.psi_l[m];
      if (pl == 0.0) continue;
      for (std::size_t b = 0; b < width; ++b) dots[b] += pl * v[m * width + b];
    }
    for (std::size_t m = 0; m < n; ++m) {
      const double pr = pair.psi_r[m];
      if (pr == 0.0) continue;
      for (std::size_t b = 0; b < width; ++b) v[m * width + b] -= dots[b] * pr;
    }
  };
  deflate(t);

  while (true) {
    std::fill(mass, mass + width, 0.0);
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t b = 0; b < width; ++b) mass[b] += std::abs(t[m * width + b]);
    const double block_mass = *std::max_element(mass, mass + width);

    if (block_mass < opts.series_tol) {
      double radius = 0.0;
      const auto& tm = res.term_mass;
      for (std::size_t i = tm.size() >= 3 ? tm.size() - 3 : 1; i < tm.size(); ++i)
        if (tm[i - 1] > 0.0) radius = std::max(radius, tm[i] / tm[i - 1]);
      // geometric tail estimate from the observed contraction, capped so an
      // oscillating transient still yields a finite (very conservative) bound
      res.radius_est = radius;
      res.tail_bound = block_mass / (1.0 - std::min(radius, 0.999));
      return res;
    }
    if (res.term_mass.size() >= opts.max_series_terms) {
      res.failed = true;
      const auto& tm = res.term_mass;
      res.radius_est =
          tm.size() >= 2 && tm[tm.size() - 2] > 0.0 ? tm.back() / tm[tm.size() - 2] : 1.0;
      return res;
    }
    res.term_mass.push_back(block_mass);

    // y = G t for the whole block in a single adjacency pass
    std::fill(y.begin(), y.end(), 0.0);
    std::fill(totals, totals + width, 0.0);
    std::fill(dangs, dangs + width, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      const double w = alpha * g.inv_out_degree(m);
      const double* tm_row = &t[m * width];
      for (std::size_t b = 0; b < width; ++b) {
        totals[b] += tm_row[b];
        tmp[b] = w * tm_row[b];
      }
      for (NodeId tgt : g.out_targets(m)) {
        double* y_row = &y[static_cast<std::size_t>(tgt) * width];
        for (std::size_t b = 0; b < width; ++b) y_row[b] += tmp[b];
      }
    }
    for (NodeId m : g.dangling_nodes())
      for (std::size_t b = 0; b < width; ++b) dangs[b] += t[static_cast<std::size_t>(m) * width + b];
    for (std::size_t b = 0; b < width; ++b)
      tmp[b] = (alpha * dangs[b] + (1.0 - alpha) * totals[b]) / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t b = 0; b < width; ++b) y[m * width + b] += tmp[b];

    for (std::size_t i = 0; i < nr; ++i) {
      const double* y_row = &y[static_cast<std::size_t>(set.member_node[i]) * width];
      for (std::size_t b = 0; b < width; ++b)
        res.gqr_cols(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b)) += y_row[b];
    }
    for (NodeId r : set.member_node)
      for (std::size_t b = 0; b < width; ++b) y[static_cast<std::size_t>(r) * width + b] = 0.0;
    deflate(y);
    t.swap(y);
  }
}

std::vector<std::uint32_t> ranks_from_reduced_pagerank(const Eigen::VectorXd& pr,
                                                       const ScatterSet& set) {
  const std::size_t nr = set.member_node.size();
  std::vector<std::size_t> order(nr);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double pa = pr[static_cast<Eigen::Index>(a)], pb = pr[static_cast<Eigen::Index>(b)];
    if (pa != pb) return pa > pb;
    return set.member_node[a] < set.member_node[b];
  });
  std::vector<std::uint32_t> ranks(nr);
  for (std::size_t i = 0; i < nr; ++i) ranks[order[i]] = static_cast<std::uint32_t>(i + 1);
  return ranks;
}

ComponentWeights raw_weights(const ReducedSet& rs) {
  const double nr = static_cast<double>(rs.size());
  return {rs.grr.sum() / nr, rs.gpr.sum() / nr, (rs.gqrd.sum() + rs.gqrnd.sum()) / nr};
}

}  // namespace

Eigen::VectorXd dense_stationary(const Eigen::MatrixXd& m, double tol, std::uint32_t max_iters) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n)
    throw_error(ErrorCategory::Validate, "dense_stationary needs a square nonempty matrix");
  Eigen::VectorXd p = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd next(n);
  for (std::uint32_t it = 0; it < max_iters; ++it) {
    next.noalias() = m * p;
    const double mass = next.sum();
    if (!(mass > 0.0))
      throw_error(ErrorCategory::Numeric, "dense_stationary: vanishing iterate");
    next /= mass;
    const double change = (next - p).cwiseAbs().sum();
    p.swap(next);
    if (change < tol) return p;
  }
  throw_error(ErrorCategory::Numeric,
              "dense_stationary did not converge in " + std::to_string(max_iters) + " iterations");
}

ReducedSet compute_reduced(const DirectedGraph& graph, const GoogleParams& params,
                           const SubsetSpec& subset, const ReducedOptions& options, int threads) {
  params.validate();
  const std::size_t n = graph.num_nodes();
  const std::size_t nr = subset.size();
  const auto set = make_scatter_set(graph, subset);

  ReducedSet rs;
  rs.pr_tol = options.pr_tol;
  rs.pr_max_iters = options.pr_max_iters;

  if (set.ns == 0) {
    // Whole-graph subset: no scattering set, the reduced matrix is G itself
    // (in member order), and the direct component carries all the weight.
    rs.grr.resize(nr, nr);
    for (std::size_t j = 0; j < nr; ++j) {
      const NodeId src = set.member_node[j];
      const bool dang = graph.out_degree(src) == 0;
      const double uniform =
          ((1.0 - params.alpha) + (dang ? params.alpha : 0.0)) / static_cast<double>(n);
      for (std::size_t i = 0; i < nr; ++i) rs.grr(i, j) = uniform;
      if (!dang) {
        const double w = params.alpha / static_cast<double>(graph.out_degree(src));
        for (NodeId tgt : graph.out_targets(src)) {
          // every node is a member here, so the reverse map is positional
          rs.grr(static_cast<Eigen::Index>(*subset.index_of_node(tgt)), j) += w;
        }
      }
    }
    rs.gr = rs.grr;
    rs.gpr = Eigen::MatrixXd::Zero(nr, nr);
    rs.gqrd = Eigen::MatrixXd::Zero(nr, nr);
    rs.gqrnd = Eigen::MatrixXd::Zero(nr, nr);
    rs.lambda_c = std::nullopt;
    rs.weights = {1.0, 0.0, 0.0};
    rs.pr_reduced = dense_stationary(rs.gr, options.pr_tol, options.pr_max_iters);
    rs.local_rank = ranks_from_reduced_pagerank(rs.pr_reduced, set);
    return rs;
  }

  const auto pair = scattering_eigenpair(graph, params, set, options, threads);
  rs.lambda_c = pair.lambda_c;

  // direct block
  rs.grr.resize(nr, nr);
  for (std::size_t j = 0; j < nr; ++j) {
    const NodeId src = set.member_node[j];
    const bool dang = graph.out_degree(src) == 0;
    const double uniform =
        ((1.0 - params.alpha) + (dang ? params.alpha : 0.0)) / static_cast<double>(n);
    for (std::size_t i = 0; i < nr; ++i) rs.grr(i, j) = uniform;
    if (!dang) {
      const double w = params.alpha / static_cast<double>(graph.out_degree(src));
      for (NodeId tgt : graph.out_targets(src))
        if (auto idx = subset.index_of_node(tgt)) rs.grr(static_cast<Eigen::Index>(*idx), j) += w;
    }
  }

  // rank-one component from the eigenpair
  Eigen::VectorXd proj_in(nr);  // G_rs psi_R
  {
    std::vector<double> y(n);
    apply_full_once(graph, params, pair.psi_r, y);
    for (std::size_t i = 0; i < nr; ++i) proj_in[static_cast<Eigen::Index>(i)] = y[set.member_node[i]];
  }
  Eigen::VectorXd proj_out(nr);  // psi_L' G_sr
  {
    const double psi_l_total = std::accumulate(pair.psi_l.begin(), pair.psi_l.end(), 0.0);
    for (std::size_t k = 0; k < nr; ++k) {
      const NodeId src = set.member_node[k];
      const bool dang = graph.out_degree(src) == 0;
      double acc = ((1.0 - params.alpha) + (dang ? params.alpha : 0.0)) / static_cast<double>(n) *
                   psi_l_total;
      if (!dang) {
        double link = 0.0;
        for (NodeId tgt : graph.out_targets(src)) link += pair.psi_l[tgt];
        acc += params.alpha * link / static_cast<double>(graph.out_degree(src));
      }
      proj_out[static_cast<Eigen::Index>(k)] = acc;
    }
  }
  rs.gpr = proj_in * proj_out.transpose() / (1.0 - pair.lambda_c);

  // deflated series, solved per block of right-hand-side columns
  Eigen::MatrixXd gqr(nr, nr);
  const std::size_t num_blocks = (nr + kBlock - 1) / kBlock;
  std::vector<BlockResult> blocks(num_blocks);
  {
    const int t = std::max(1, std::min<int>(detail::resolve_threads(threads, num_blocks * 4096),
                                            static_cast<int>(num_blocks)));
    auto run = [&](int w) {
      for (std::size_t blk = static_cast<std::size_t>(w); blk < num_blocks;
           blk += static_cast<std::size_t>(t)) {
        const std::size_t begin = blk * kBlock;
        const std::size_t width = std::min(kBlock, nr - begin);
        blocks[blk] = solve_deflated_block(graph, params, set, pair, options, begin, width);
      }
    };
    if (t == 1) {
      run(0);
    } else {
      std::vector<std::thread> workers;
      for (int w = 0; w < t; ++w) workers.emplace_back(run, w);
      for (auto& th : workers) th.join();
    }
  }
  std::size_t max_terms = 0, mass_len = 0;
  double max_tail = 0.0;
  for (std::size_t blk = 0; blk < num_blocks; ++blk) {
    const auto& b = blocks[blk];
    if (b.failed)
      throw_error(ErrorCategory::Numeric,
                  "hidden-link series did not reach tol " + std::to_string(options.series_tol) +
                      " within " + std::to_string(options.max_series_terms) +
                      " terms on columns starting at " + std::to_string(blk * kBlock) +
                      " (contraction ratio ~" + std::to_string(b.radius_est) + ")");
    const std::size_t begin = blk * kBlock;
    gqr.middleCols(static_cast<Eigen::Index>(begin), b.gqr_cols.cols()) = b.gqr_cols;
    max_terms = std::max(max_terms, b.term_mass.size());
    max_tail = std::max(max_tail, b.tail_bound);
    mass_len = std::max(mass_len, b.term_mass.size());
  }
  rs.series_terms = max_terms;
  rs.truncation_error = max_tail;
  rs.series_term_mass.assign(mass_len, 0.0);
  for (const auto& b : blocks)
    for (std::size_t l = 0; l < b.term_mass.size(); ++l)
      rs.series_term_mass[l] = std::max(rs.series_term_mass[l], b.term_mass[l]);

  rs.gqrd = gqr.diagonal().asDiagonal();
  rs.gqrnd = gqr;
  rs.gqrnd.diagonal().setZero();
  rs.gr = rs.grr + rs.gpr + rs.gqrd + rs.gqrnd;
  rs.weights = raw_weights(rs);
  rs.pr_reduced = dense_stationary(rs.gr, options.pr_tol, options.pr_max_iters);
  rs.local_rank = ranks_from_reduced_pagerank(rs.pr_reduced, set);
  return rs;
}

}  // namespace rgmx
