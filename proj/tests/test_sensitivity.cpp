#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "rgmx/errors.hpp"
#include "rgmx/reduced.hpp"
#include "rgmx/sensitivity.hpp"
#include "support/dense_checks.hpp"
#include "support/graph_gen.hpp"

using namespace rgmx;
using rgmx::testing::direct_sensitivity;
using rgmx::testing::direct_stationary;

namespace {

DirectedGraph five_node() {
  return DirectedGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
}

SubsetSpec five_node_subset3(const DirectedGraph& g) {
  return SubsetSpec::from_members(
      {{0, "country", "Avalon"}, {1, "C1", "Borealis"}, {2, "C2", "Cascadia"}}, g);
}

/// Reduced set fabricated from a bare column-stochastic matrix.
ReducedSet fake_rs(Eigen::MatrixXd gr) {
  ReducedSet rs;
  const auto n = gr.rows();
  rs.grr = Eigen::MatrixXd::Zero(n, n);
  rs.gpr = Eigen::MatrixXd::Zero(n, n);
  rs.gqrd = Eigen::MatrixXd::Zero(n, n);
  rs.gqrnd = Eigen::MatrixXd::Zero(n, n);
  rs.gr = std::move(gr);
  rs.pr_reduced = dense_stationary(rs.gr, rs.pr_tol, rs.pr_max_iters);
  rs.local_rank.assign(static_cast<std::size_t>(n), 1);
  return rs;
}

}  // namespace

TEST_CASE("perturb_and_normalize: boosted half column becomes (2/3, 1/3)") {
  Eigen::MatrixXd gr(2, 2);
  gr << 0.5, 0.4, 0.5, 0.6;
  auto rs = fake_rs(gr);
  const auto m = perturb_and_normalize(rs, {0, 0, 1.0});
  CHECK(m(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(m(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(m(0, 1) == 0.4);  // other columns untouched
  CHECK(m.col(0).sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("perturb_and_normalize: zero element leaves the matrix bit-identical") {
  Eigen::MatrixXd gr(2, 2);
  gr << 0.0, 0.5, 1.0, 0.5;
  auto rs = fake_rs(gr);
  const auto m = perturb_and_normalize(rs, {0, 0, 0.25});
  CHECK(std::memcmp(m.data(), rs.gr.data(), sizeof(double) * m.size()) == 0);
}

TEST_CASE("perturb_and_normalize: column with all mass at the target is unchanged") {
  Eigen::MatrixXd gr(2, 2);
  gr << 1.0, 0.3, 0.0, 0.7;
  auto rs = fake_rs(gr);
  const auto m = perturb_and_normalize(rs, {0, 0, 0.5});
  CHECK(std::memcmp(m.data(), rs.gr.data(), sizeof(double) * m.size()) == 0);
}

TEST_CASE("perturbation validation") {
  Eigen::MatrixXd gr(2, 2);
  gr << 0.5, 0.5, 0.5, 0.5;
  auto rs = fake_rs(gr);
  CHECK_THROWS_AS(perturb_and_normalize(rs, {0, 0, 0.0}), Error);
  CHECK_THROWS_AS(perturb_and_normalize(rs, {0, 0, -0.1}), Error);
  CHECK_THROWS_AS(perturb_and_normalize(rs, {2, 0, 0.1}), Error);
  CHECK_THROWS_AS(perturb_and_normalize(rs, {0, 5, 0.1}), Error);
  CHECK_NOTHROW(perturb_and_normalize(rs, {1, 1, 0.1}));  // diagonal boost allowed
}

TEST_CASE("five-node fixture: derivative matches the frozen direct solution") {
  auto g = five_node();
  auto subset = five_node_subset3(g);
  const auto rs = compute_reduced(g, {}, subset);

  const auto rep = sensitivity(rs, {0, 1, 0.03});
  // frozen from the direct 3x3 stationary solve of the perturbed matrix
  CHECK(rep.d[0] == doctest::Approx(-0.03994469128463426).epsilon(1e-9));
  CHECK(rep.d[1] == doctest::Approx(0.06414011928189675).epsilon(1e-9));
  CHECK(rep.d[2] == doctest::Approx(-0.01352198171974477).epsilon(1e-9));
  CHECK(rep.p_prime.sum() == doctest::Approx(1.0).epsilon(1e-12));

  const auto d_direct = direct_sensitivity(rs.gr, {0, 1, 0.03});
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(std::abs(rep.d[k] - d_direct[k]) < 1e-9);
}

TEST_CASE("five-node fixture: derivative is stable between delta 1e-3 and 3e-3") {
  auto g = five_node();
  auto subset = five_node_subset3(g);
  const auto rs = compute_reduced(g, {}, subset);
  const auto d1 = sensitivity(rs, {0, 1, 1e-3}).d;
  const auto d3 = sensitivity(rs, {0, 1, 3e-3}).d;
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(std::abs(d1[k] - d3[k]) / std::abs(d1[k]) < 0.01);
}

TEST_CASE("zero matrix element gives an exactly zero derivative") {
  Eigen::MatrixXd gr(3, 3);
  gr << 0.0, 0.2, 0.3,  //
      0.5, 0.3, 0.3,    //
      0.5, 0.5, 0.4;
  auto rs = fake_rs(gr);
  const auto rep = sensitivity(rs, {0, 0, 0.03});
  for (double d : rep.d) CHECK(d == 0.0);
  CHECK(std::memcmp(rep.p_prime.data(), rs.pr_reduced.data(),
                    sizeof(double) * rep.p_prime.size()) == 0);
}

TEST_CASE("random reduced sets: direct-solve agreement, mass conservation, slope stability") {
  for (std::uint64_t seed : {61ull, 62ull, 63ull}) {
    auto g = rgmx::testing::er_graph(150, 900, seed);
    auto subset = rgmx::testing::random_subset(g, 10, seed + 17);
    const auto rs = compute_reduced(g, {}, subset);
    rgmx::testing::Rng rng(seed * 3);
    for (int trial = 0; trial < 5; ++trial) {
      const std::size_t i = rng.below(10), j = rng.below(10);
      for (double delta : {1e-3, 3e-3, 3e-2}) {
        const Perturbation pert{j, i, delta};
        const auto rep = sensitivity(rs, pert);

        const auto d_direct = direct_sensitivity(rs.gr, pert);
        double mass = 0.0;
        for (std::size_t k = 0; k < 10; ++k) {
          CHECK(std::abs(rep.d[k] - d_direct[k]) < 1e-9);
          mass += rep.d[k] * rs.pr_reduced[static_cast<Eigen::Index>(k)];
        }
        CHECK(std::abs(mass) < 1e-10);
        CHECK(rep.p_prime.sum() == doctest::Approx(1.0).epsilon(1e-12));

        const auto rep_half = sensitivity(rs, {j, i, delta / 2.0});
        for (std::size_t k = 0; k < 10; ++k)
          CHECK(std::abs(rep.d[k] - rep_half.d[k]) <=
                2.0 * delta * (std::abs(rep.d[k]) + 1e-3));
      }
    }
  }
}

TEST_CASE("influence_map: cells equal standalone runs") {
  auto g = five_node();
  auto subset = five_node_subset3(g);
  const auto rs = compute_reduced(g, {}, subset);
  const std::vector<std::size_t> countries{0}, groups{1, 2};

  const auto table = influence_map(rs, groups, countries, 0.03);
  REQUIRE(table.values.rows() == 1);
  REQUIRE(table.values.cols() == 2);
  CHECK(table.row_members == countries);
  CHECK(table.col_members == groups);
  for (int c = 0; c < 2; ++c) {
    const auto standalone = sensitivity(rs, {0, groups[c], 0.03});
    CHECK(table.values(0, c) == standalone.d[0]);
  }
  CHECK(table.value_min == table.values.minCoeff());
  CHECK(table.value_max == table.values.maxCoeff());
}

TEST_CASE("influence_map: zero links from every country give an all-zero column") {
  // member 3 receives nothing from the two countries (members 0 and 1)
  Eigen::MatrixXd gr(4, 4);
  gr << 0.2, 0.3, 0.25, 0.4,  //
      0.3, 0.2, 0.25, 0.3,    //
      0.5, 0.5, 0.25, 0.3,    //
      0.0, 0.0, 0.25, 0.0;
  auto rs = fake_rs(gr);
  const std::vector<std::size_t> countries{0, 1}, groups{2, 3};
  const auto table = influence_map(rs, groups, countries, 0.05);
  CHECK(table.values(0, 1) == 0.0);
  CHECK(table.values(1, 1) == 0.0);
  CHECK(table.values(0, 0) != 0.0);
}

TEST_CASE("influence_map rejects overlapping member lists") {
  auto rs = fake_rs(Eigen::MatrixXd::Constant(3, 3, 1.0 / 3.0));
  const std::vector<std::size_t> a{0, 1}, b{1, 2};
  CHECK_THROWS_AS(influence_map(rs, a, b, 0.03), Error);
}

TEST_CASE("influence_map is bit-identical across thread counts") {
  auto g = rgmx::testing::er_graph(120, 700, 71);
  auto subset = rgmx::testing::random_subset(g, 9, 72);
  const auto rs = compute_reduced(g, {}, subset);
  const auto countries = subset.members_with_category("country");
  std::vector<std::size_t> groups;
  for (std::size_t k = 0; k < subset.size(); ++k)
    if (subset.member(k).category != "country") groups.push_back(k);

  const auto t1 = influence_map(rs, groups, countries, 0.03, 1);
  const auto t4 = influence_map(rs, groups, countries, 0.03, 4);
  CHECK(std::memcmp(t1.values.data(), t4.values.data(), sizeof(double) * t1.values.size()) == 0);
}

TEST_CASE("country_link_matrix: layout and standalone agreement") {
  auto g = rgmx::testing::er_graph(100, 600, 81);
  auto subset = rgmx::testing::random_subset(g, 8, 82);  // categories cycle country,C1,C2
  const auto rs = compute_reduced(g, {}, subset);
  const auto countries = subset.members_with_category("country");
  std::vector<std::size_t> groups;
  for (std::size_t k = 0; k < subset.size(); ++k)
    if (subset.member(k).category != "country") groups.push_back(k);
  REQUIRE(countries.size() >= 2);

  const std::size_t c = countries[0];
  const auto table = country_link_matrix(rs, c, groups, countries, 0.03);
  CHECK(table.row_members == groups);
  CHECK(table.col_members.size() == countries.size() - 1);
  for (std::size_t col = 0; col < table.col_members.size(); ++col)
    CHECK(table.col_members[col] != c);

  for (std::size_t r = 0; r < groups.size(); ++r) {
    const auto standalone = sensitivity(rs, {c, groups[r], 0.03});
    for (std::size_t col = 0; col < table.col_members.size(); ++col)
      CHECK(table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) ==
            standalone.d[table.col_members[col]]);
  }
  CHECK(table.value_min <= table.value_max);
}

TEST_CASE("country_link_matrix: one group and two countries give a 1x1 table") {
  auto rs = fake_rs(Eigen::MatrixXd::Constant(3, 3, 1.0 / 3.0));
  const std::vector<std::size_t> groups{2}, countries{0, 1};
  const auto table = country_link_matrix(rs, 0, groups, countries, 0.03);
  CHECK(table.values.rows() == 1);
  CHECK(table.values.cols() == 1);
  CHECK(table.col_members == std::vector<std::size_t>{1});

  CHECK_THROWS_AS(country_link_matrix(rs, 2, groups, countries, 0.03), Error);
}

TEST_CASE("sensitivity rejects a reduced set without positive PageRank") {
  auto rs = fake_rs(Eigen::MatrixXd::Constant(2, 2, 0.5));
  rs.pr_reduced[0] = 0.0;
  CHECK_THROWS_AS(sensitivity(rs, {0, 1, 0.03}), Error);
}
