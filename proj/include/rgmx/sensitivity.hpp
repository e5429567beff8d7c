#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rgmx/reduced.hpp"

namespace rgmx {

/// Relative boost of one reduced-matrix element: entry (target, source) is
/// multiplied by (1 + delta) and the source column renormalized to unit sum.
struct Perturbation {
  std::size_t source = 0;  ///< member index j (column)
  std::size_t target = 0;  ///< member index i (row); i == j allowed
  double delta = 0.03;

  void validate(std::size_t nr) const;  ///< throws Error{Validate} on delta <= 0 or bad indices
};

struct SensitivityReport {
  Perturbation perturbation;
  std::vector<double> d;      ///< logarithmic derivative per member k
  Eigen::VectorXd p_prime;    ///< stationary vector of the perturbed matrix, sums to 1
};

/// Copy of rs.gr with the boost applied and the source column rescaled to
/// unit sum. A zero element leaves the matrix bit-identical (nothing to
/// boost, column already normalized).
Eigen::MatrixXd perturb_and_normalize(const ReducedSet& rs, const Perturbation& pert);

/// d(k) = (P'_k - P_k) / (delta * P_k), with P = rs.pr_reduced and P' the
/// stationary vector of the perturbed matrix recomputed from scratch.
SensitivityReport sensitivity(const ReducedSet& rs, const Perturbation& pert);

/// Row/column-labelled block of derivative values from a batch of
/// single-link perturbations.
struct InfluenceTable {
  std::vector<std::size_t> row_members;
  std::vector<std::size_t> col_members;
  Eigen::MatrixXd values;  ///< (row, col) cell
  double delta = 0.0;
  double value_min = 0.0;
  double value_max = 0.0;
};

/// One cell per (country j, group i): boost j -> i, record the derivative at
/// the country itself, d(j). Rows are countries, columns groups. Cells are
/// independent and computed in parallel.
InfluenceTable influence_map(const ReducedSet& rs, std::span<const std::size_t> group_members,
                             std::span<const std::size_t> country_members, double delta,
                             int threads = 0);

/// One row per group i: boost c -> i once, record d(j) for every country
/// j != c. Rows are groups, columns the remaining countries.
InfluenceTable country_link_matrix(const ReducedSet& rs, std::size_t country,
                                   std::span<const std::size_t> group_members,
                                   std::span<const std::size_t> country_members, double delta,
                                   int threads = 0);

}  // namespace rgmx
