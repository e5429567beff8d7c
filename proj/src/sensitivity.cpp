#include "rgmx/sensitivity.hpp"

#include <algorithm>
#include <thread>

#include "rgmx/errors.hpp"
#include "sparse_ops.hpp"

namespace rgmx {

void Perturbation::validate(std::size_t nr) const {
  if (!(delta > 0.0))
    throw_error(ErrorCategory::Validate, "perturbation delta must be positive");
  if (source >= nr || target >= nr)
    throw_error(ErrorCategory::Validate,
                "perturbation indices (" + std::to_string(source) + ", " + std::to_string(target) +
                    ") outside the " + std::to_string(nr) + "-member set");
}

Eigen::MatrixXd perturb_and_normalize(const ReducedSet& rs, const Perturbation& pert) {
  pert.validate(rs.size());
  Eigen::MatrixXd m = rs.gr;
  const Eigen::Index i = static_cast<Eigen::Index>(pert.target);
  const Eigen::Index j = static_cast<Eigen::Index>(pert.source);
  if (m(i, j) == 0.0) return m;  // nothing to boost, column already normalized
  m(i, j) *= 1.0 + pert.delta;
  m.col(j) /= m.col(j).sum();
  return m;
}

SensitivityReport sensitivity(const ReducedSet& rs, const Perturbation& pert) {
  pert.validate(rs.size());
  const std::size_t nr = rs.size();
  if (rs.pr_reduced.size() != static_cast<Eigen::Index>(nr))
    throw_error(ErrorCategory::Validate, "reduced set carries no PageRank vector");
  for (Eigen::Index k = 0; k < rs.pr_reduced.size(); ++k)
    if (!(rs.pr_reduced[k] > 0.0))
      throw_error(ErrorCategory::Validate, "reduced PageRank has a nonpositive entry");

  SensitivityReport rep;
  rep.perturbation = pert;
  const Eigen::MatrixXd m = perturb_and_normalize(rs, pert);
  // An untouched matrix reproduces the stored fixed point bit-for-bit, so a
  // zero element yields an exactly zero derivative.
  rep.p_prime = dense_stationary(m, rs.pr_tol, rs.pr_max_iters);
  rep.d.resize(nr);
  for (std::size_t k = 0; k < nr; ++k) {
    const auto ki = static_cast<Eigen::Index>(k);
    rep.d[k] = (rep.p_prime[ki] - rs.pr_reduced[ki]) / (pert.delta * rs.pr_reduced[ki]);
  }
  return rep;
}

namespace {

void run_cells(std::span<const std::size_t> rows, std::span<const std::size_t> cols, int threads,
               const std::function<double(std::size_t, std::size_t)>& cell,
               Eigen::MatrixXd& out) {
  const std::size_t total = rows.size() * cols.size();
  const int t = std::max(1, std::min<int>(detail::resolve_threads(threads, total * 4096),
                                          static_cast<int>(total)));
  auto run = [&](int w) {
    for (std::size_t idx = static_cast<std::size_t>(w); idx < total;
         idx += static_cast<std::size_t>(t)) {
      const std::size_t r = idx / cols.size();
      const std::size_t c = idx % cols.size();
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = cell(r, c);
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

void fill_range(InfluenceTable& table) {
  if (table.values.size() == 0) {
    table.value_min = table.value_max = 0.0;
    return;
  }
  table.value_min = table.values.minCoeff();
  table.value_max = table.values.maxCoeff();
}

}  // namespace

InfluenceTable influence_map(const ReducedSet& rs, std::span<const std::size_t> group_members,
                             std::span<const std::size_t> country_members, double delta,
                             int threads) {
  for (std::size_t c : country_members)
    for (std::size_t g : group_members)
      if (c == g)
        throw_error(ErrorCategory::Validate,
                    "group and country member lists overlap at index " + std::to_string(c));

  InfluenceTable table;
  table.delta = delta;
  table.row_members.assign(country_members.begin(), country_members.end());
  table.col_members.assign(group_members.begin(), group_members.end());
  table.values.resize(static_cast<Eigen::Index>(country_members.size()),
                      static_cast<Eigen::Index>(group_members.size()));
  run_cells(
      table.row_members, table.col_members, threads,
      [&](std::size_t r, std::size_t c) {
        const std::size_t country = table.row_members[r];
        const std::size_t group = table.col_members[c];
        return sensitivity(rs, {country, group, delta}).d[country];
      },
      table.values);
  fill_range(table);
  return table;
}

InfluenceTable country_link_matrix(const ReducedSet& rs, std::size_t country,
                                   std::span<const std::size_t> group_members,
                                   std::span<const std::size_t> country_members, double delta,
                                   int threads) {
  if (std::find(country_members.begin(), country_members.end(), country) == country_members.end())
    throw_error(ErrorCategory::Validate,
                "selected country member " + std::to_string(country) + " is not in the country list");

  InfluenceTable table;
  table.delta = delta;
  table.row_members.assign(group_members.begin(), group_members.end());
  for (std::size_t c : country_members)
    if (c != country) table.col_members.push_back(c);
  table.values.resize(static_cast<Eigen::Index>(table.row_members.size()),
                      static_cast<Eigen::Index>(table.col_members.size()));

  // one perturbation per group row; all country columns read the same report
  const std::size_t rows = table.row_members.size();
  const int t = std::max(1, std::min<int>(detail::resolve_threads(threads, rows * 4096),
                                          static_cast<int>(std::max<std::size_t>(rows, 1))));
  auto run = [&](int w) {
    for (std::size_t r = static_cast<std::size_t>(w); r < rows; r += static_cast<std::size_t>(t)) {
      const auto rep = sensitivity(rs, {country, table.row_members[r], delta});
      for (std::size_t c = 0; c < table.col_members.size(); ++c)
        table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            rep.d[table.col_members[c]];
    }
  };
  if (t == 1) {
    run(0);
  } else {
    std::vector<std::thread> workers;
    for (int w = 0; w < t; ++w) workers.emplace_back(run, w);
    for (auto& th : workers) th.join();
  }
  fill_range(table);
  return table;
}

}  // namespace rgmx
