#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rgmx/graph.hpp"
#include "rgmx/pagerank.hpp"
#include "rgmx/subset.hpp"

namespace rgmx {

struct ComponentWeights {
  double wrr = 0.0;
  double wpr = 0.0;
  double wqr = 0.0;
};

struct ReducedOptions {
  double series_tol = 1e-12;              ///< stop once the next series term's column L1 mass is below this
  std::uint64_t max_series_terms = 100000;
  double eig_tol = 1e-13;                 ///< eigenvalue-change threshold for the scattering eigenpair
  std::uint32_t max_eig_iters = 100000;
  double pr_tol = 1e-14;                  ///< dense power iteration tolerance for the reduced PageRank
  std::uint32_t pr_max_iters = 1000000;
};

/// Reduced Google matrix of a node subset and its exact decomposition
/// gr = grr + gpr + gqrd + gqrnd. All matrices are dense Nr x Nr in
/// SubsetSpec member order with entry (i,j) = transition j -> i.
struct ReducedSet {
  Eigen::MatrixXd gr;     ///< effective column-stochastic matrix on the subset
  Eigen::MatrixXd grr;    ///< direct-link block of G
  Eigen::MatrixXd gpr;    ///< rank-one component aligned with the scattering eigenpair
  Eigen::MatrixXd gqrd;   ///< diagonal part of the indirect-path component
  Eigen::MatrixXd gqrnd;  ///< off-diagonal part of the indirect-path component

  std::optional<double> lambda_c;  ///< leading eigenvalue of the scattering block; absent when Nr = N
  ComponentWeights weights;        ///< per component: sum of all elements divided by Nr
  Eigen::VectorXd pr_reduced;      ///< stationary vector of gr, sums to 1

  std::uint64_t series_terms = 0;      ///< summed terms (max over columns)
  double truncation_error = 0.0;       ///< geometric bound on the dropped series tail (column L1)
  std::vector<double> series_term_mass;  ///< max column L1 mass of each summed term

  /// 1-based local PageRank index per member (descending pr_reduced,
  /// ties by ascending node id).
  std::vector<std::uint32_t> local_rank;

  // Dense-iteration settings the set was built with; reused when the same
  // fixed point must be reproduced bit-for-bit (e.g. null perturbations).
  double pr_tol = 1e-14;
  std::uint32_t pr_max_iters = 1000000;

  std::size_t size() const { return static_cast<std::size_t>(gr.rows()); }
};

/**
 * Computes the reduced Google matrix without ever forming G or inverting the
 * scattering block. Writing r for the subset (size Nr) and s for the rest
 * (size Ns), the effective matrix is
 *
 *     gr = G_rr + G_rs (1 - G_ss)^{-1} G_sr .
 *
 * The resolvent is split along the leading eigenpair of G_ss (eigenvalue
 * lambda_c, right/left vectors psi_R, psi_L with sum(psi_R) = 1 and
 * psi_L'psi_R = 1): the rank-one part gives gpr, and the remainder is summed
 * as a projected series
 *
 *     gqr = G_rs Q [ sum_l (Q G_ss Q)^l ] Q G_sr ,   Q = 1 - psi_R psi_L' ,
 *
 * which contracts at the subleading spectral radius of G_ss instead of
 * lambda_c. Each of the Nr right-hand-side columns is solved independently
 * (and in parallel); per-column arithmetic is sequential, so results are
 * bit-identical for any thread count.
 *
 * Throws Error{Numeric} if the eigenpair iteration stagnates or the series
 * fails to reach series_tol within max_series_terms (both report the
 * estimated subleading radius).
 */
ReducedSet compute_reduced(const DirectedGraph& graph, const GoogleParams& params,
                           const SubsetSpec& subset, const ReducedOptions& options = {},
                           int threads = 0);

/// Brute-force reference: materializes G densely, solves (1 - G_ss) X = G_sr
/// by LU, and extracts the scattering eigenpair by shift-and-invert on the
/// same factorization. Intended for verification; refuses graphs larger than
/// max_dense_nodes.
ReducedSet dense_oracle_reduced(const DirectedGraph& graph, const GoogleParams& params,
                                const SubsetSpec& subset, std::size_t max_dense_nodes = 2000);

/// Stationary vector of a column-stochastic dense matrix by power iteration
/// (L1 change < tol), normalized to unit sum. Deterministic.
Eigen::VectorXd dense_stationary(const Eigen::MatrixXd& m, double tol = 1e-14,
                                 std::uint32_t max_iters = 1000000);

/// Dense Google matrix of the whole graph (test/oracle helper; capped).
Eigen::MatrixXd dense_google(const DirectedGraph& graph, const GoogleParams& params,
                             std::size_t max_dense_nodes = 2000);

}  // namespace rgmx
