#include <algorithm>
#include <numeric>

#include <Eigen/Dense>

#include "rgmx/errors.hpp"
#include "rgmx/reduced.hpp"

// Brute-force reference path: everything dense, direct LU solves, and the
// scattering eigenpair by shift-and-invert on the same factorization. Kept
// deliberately separate from the series implementation so the two routes
// share no numerical machinery beyond the graph itself.

namespace rgmx {

namespace {

std::vector<std::uint32_t> member_ranks(const Eigen::VectorXd& pr,
                                        const std::vector<NodeId>& member_node) {
  const std::size_t nr = member_node.size();
  std::vector<std::size_t> order(nr);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double pa = pr[static_cast<Eigen::Index>(a)], pb = pr[static_cast<Eigen::Index>(b)];
    if (pa != pb) return pa > pb;
    return member_node[a] < member_node[b];
  });
  std::vector<std::uint32_t> ranks(nr);
  for (std::size_t i = 0; i < nr; ++i) ranks[order[i]] = static_cast<std::uint32_t>(i + 1);
  return ranks;
}

}  // namespace

Eigen::MatrixXd dense_google(const DirectedGraph& graph, const GoogleParams& params,
                             std::size_t max_dense_nodes) {
  params.validate();
  const std::size_t n = graph.num_nodes();
  if (n > max_dense_nodes)
    throw_error(ErrorCategory::Validate, "graph of " + std::to_string(n) +
                                             " nodes exceeds the dense cap of " +
                                             std::to_string(max_dense_nodes));
  Eigen::MatrixXd g(n, n);
  const double tele = (1.0 - params.alpha) / static_cast<double>(n);
  g.setConstant(tele);
  for (NodeId j = 0; j < n; ++j) {
    auto targets = graph.out_targets(j);
    if (targets.empty()) {
      g.col(j).array() += params.alpha / static_cast<double>(n);
    } else {
      const double w = params.alpha / static_cast<double>(targets.size());
      for (NodeId t : targets) g(t, j) += w;
    }
  }
  return g;
}

ReducedSet dense_oracle_reduced(const DirectedGraph& graph, const GoogleParams& params,
                                const SubsetSpec& subset, std::size_t max_dense_nodes) {
  const std::size_t n = graph.num_nodes();
  const std::size_t nr = subset.size();
  const std::size_t ns = n - nr;

  std::vector<NodeId> member_node;
  member_node.reserve(nr);
  for (const auto& m : subset.members()) member_node.push_back(m.node);

  const Eigen::MatrixXd g = dense_google(graph, params, max_dense_nodes);

  ReducedSet rs;
  rs.pr_tol = ReducedOptions{}.pr_tol;
  rs.pr_max_iters = ReducedOptions{}.pr_max_iters;

  if (ns == 0) {
    rs.grr.resize(nr, nr);
    for (std::size_t j = 0; j < nr; ++j)
      for (std::size_t i = 0; i < nr; ++i) rs.grr(i, j) = g(member_node[i], member_node[j]);
    rs.gr = rs.grr;
    rs.gpr = Eigen::MatrixXd::Zero(nr, nr);
    rs.gqrd = Eigen::MatrixXd::Zero(nr, nr);
    rs.gqrnd = Eigen::MatrixXd::Zero(nr, nr);
    rs.lambda_c = std::nullopt;
    rs.weights = {1.0, 0.0, 0.0};
    rs.pr_reduced = dense_stationary(rs.gr, rs.pr_tol, rs.pr_max_iters);
    rs.local_rank = member_ranks(rs.pr_reduced, member_node);
    return rs;
  }

  std::vector<NodeId> rest;
  rest.reserve(ns);
  {
    std::vector<std::uint8_t> in_subset(n, 0);
    for (NodeId v : member_node) in_subset[v] = 1;
    for (NodeId v = 0; v < n; ++v)
      if (!in_subset[v]) rest.push_back(v);
  }

  Eigen::MatrixXd grr(nr, nr), grs(nr, ns), gsr(ns, nr), gss(ns, ns);
  for (std::size_t j = 0; j < nr; ++j) {
    for (std::size_t i = 0; i < nr; ++i) grr(i, j) = g(member_node[i], member_node[j]);
    for (std::size_t i = 0; i < ns; ++i) gsr(i, j) = g(rest[i], member_node[j]);
  }
  for (std::size_t j = 0; j < ns; ++j) {
    for (std::size_t i = 0; i < nr; ++i) grs(i, j) = g(member_node[i], rest[j]);
    for (std::size_t i = 0; i < ns; ++i) gss(i, j) = g(rest[i], rest[j]);
  }

  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(ns, ns) - gss;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);

  const Eigen::MatrixXd x = lu.solve(gsr);
  rs.gr = grr + grs * x;
  rs.grr = grr;

  // Leading eigenpair by inverse iteration with shift 1: the resolvent's
  // dominant eigenvalue is 1/(1 - lambda_c), and the gap to the rest of the
  // spectrum makes this converge in a handful of solves.
  Eigen::VectorXd psi_r = Eigen::VectorXd::Constant(ns, 1.0 / static_cast<double>(ns));
  double lambda = 0.0, lambda_prev = -1.0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd y = lu.solve(psi_r);
    const double nu = y.sum();
    if (!(nu > 0.0)) throw_error(ErrorCategory::Numeric, "oracle eigenpair: nonpositive iterate");
    psi_r = y / nu;
    lambda = 1.0 - 1.0 / nu;
    if (std::abs(lambda - lambda_prev) < 1e-15) break;
    lambda_prev = lambda;
  }
  Eigen::VectorXd psi_l = Eigen::VectorXd::Constant(ns, 1.0);
  double lt_prev = -1.0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd y = lu.transpose().solve(psi_l);
    const double nu = y.sum();
    if (!(nu > 0.0)) throw_error(ErrorCategory::Numeric, "oracle eigenpair: nonpositive left iterate");
    psi_l = y / nu;
    const double lt = 1.0 - 1.0 / nu;
    if (std::abs(lt - lt_prev) < 1e-15) break;
    lt_prev = lt;
  }
  if (!(lambda > 0.0 && lambda < 1.0))
    throw_error(ErrorCategory::Numeric, "oracle scattering eigenvalue outside (0,1)");
  psi_l /= psi_l.dot(psi_r);
  rs.lambda_c = lambda;

  rs.gpr = (grs * psi_r) * (psi_l.transpose() * gsr) / (1.0 - lambda);
  const Eigen::MatrixXd gqr = rs.gr - rs.grr - rs.gpr;
  rs.gqrd = gqr.diagonal().asDiagonal();
  rs.gqrnd = gqr;
  rs.gqrnd.diagonal().setZero();

  const double nrd = static_cast<double>(nr);
  rs.weights = {rs.grr.sum() / nrd, rs.gpr.sum() / nrd, gqr.sum() / nrd};
  rs.pr_reduced = dense_stationary(rs.gr, rs.pr_tol, rs.pr_max_iters);
  rs.local_rank = member_ranks(rs.pr_reduced, member_node);
  return rs;
}

}  // namespace rgmx
