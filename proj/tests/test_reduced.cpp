#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "rgmx/errors.hpp"
#include "rgmx/pagerank.hpp"
#include "rgmx/reduced.hpp"
#include "support/graph_gen.hpp"

using namespace rgmx;

namespace {

DirectedGraph five_node() {
  return DirectedGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
}

SubsetSpec five_node_subset2(const DirectedGraph& g) {
  return SubsetSpec::from_members({{0, "country", "Avalon"}, {1, "C1", "Borealis"}}, g);
}

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

void check_structure(const ReducedSet& rs, double tol = 1e-10) {
  const auto nr = static_cast<Eigen::Index>(rs.size());
  for (Eigen::Index j = 0; j < nr; ++j)
    CHECK(rs.gr.col(j).sum() == doctest::Approx(1.0).epsilon(tol));
  CHECK(max_abs_diff(rs.gr, rs.grr + rs.gpr + rs.gqrd + rs.gqrnd) < tol);
  for (Eigen::Index i = 0; i < nr; ++i) CHECK(rs.gqrnd(i, i) == 0.0);
  for (Eigen::Index i = 0; i < nr; ++i)
    for (Eigen::Index j = 0; j < nr; ++j)
      if (i != j) CHECK(rs.gqrd(i, j) == 0.0);
  CHECK(rs.weights.wrr + rs.weights.wpr + rs.weights.wqr == doctest::Approx(1.0).epsilon(tol));
  CHECK(rs.gr.minCoeff() >= -1e-14);
  CHECK(rs.grr.minCoeff() >= -1e-14);
  CHECK(rs.gpr.minCoeff() >= 0.0);
  if (rs.lambda_c) {
    CHECK(*rs.lambda_c > 0.0);
    CHECK(*rs.lambda_c < 1.0);
  }
  CHECK(rs.pr_reduced.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rs.pr_reduced.minCoeff() > 0.0);
}

}  // namespace

// Reference values for the five-node fixture, subset {0,1}, computed with the
// dense route (direct solve of the 3x3 scattering block) and frozen here.
TEST_CASE("five-node fixture matches the frozen dense solution") {
  auto g = five_node();
  auto subset = five_node_subset2(g);

  Eigen::MatrixXd gr_expect(2, 2), grr_expect(2, 2), gpr_expect(2, 2), gqrd_expect(2, 2),
      gqrnd_expect(2, 2);
  gr_expect << 0.10807472206115923, 0.8662112083091743,  //
      0.8919252779388409, 0.1337887916908262;
  grr_expect << 0.03, 0.03,  //
      0.88, 0.03;
  gpr_expect << 0.08081865864028588, 0.6843701423784029,  //
      0.01198277312997163, 0.1014697879303701;
  gqrd_expect << -0.00274393657912665, 0.0,  //
      0.0, 0.00231900376045609;
  gqrnd_expect << 0.0, 0.1518410659307714,  //
      -5.749519113072178e-05, 0.0;

  for (bool use_oracle : {false, true}) {
    CAPTURE(use_oracle);
    const ReducedSet rs = use_oracle ? dense_oracle_reduced(g, {}, subset)
                                     : compute_reduced(g, {}, subset);
    CHECK(max_abs_diff(rs.gr, gr_expect) < 1e-10);
    CHECK(max_abs_diff(rs.grr, grr_expect) < 1e-12);
    CHECK(max_abs_diff(rs.gpr, gpr_expect) < 1e-10);
    CHECK(max_abs_diff(rs.gqrd, gqrd_expect) < 1e-10);
    CHECK(max_abs_diff(rs.gqrnd, gqrnd_expect) < 1e-10);
    REQUIRE(rs.lambda_c.has_value());
    CHECK(*rs.lambda_c == doctest::Approx(0.7676628837990594).epsilon(1e-11));
    CHECK(rs.weights.wrr == doctest::Approx(0.485).epsilon(1e-11));
    CHECK(rs.weights.wpr == doctest::Approx(0.43932068103951527).epsilon(1e-10));
    CHECK(rs.weights.wqr == doctest::Approx(0.07567931896048508).epsilon(1e-10));
    CHECK(rs.pr_reduced[0] == doctest::Approx(0.4926871236019501).epsilon(1e-10));
    CHECK(rs.pr_reduced[1] == doctest::Approx(0.5073128763980499).epsilon(1e-10));
    check_structure(rs);
    // member 1 outranks member 0
    CHECK(rs.local_rank == std::vector<std::uint32_t>{2, 1});
  }
}

TEST_CASE("single-member subset of the three-cycle") {
  auto g = DirectedGraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
  auto subset = SubsetSpec::from_members({{0, "C1", "only"}}, g);
  for (bool use_oracle : {false, true}) {
    const ReducedSet rs =
        use_oracle ? dense_oracle_reduced(g, {}, subset) : compute_reduced(g, {}, subset);
    REQUIRE(rs.size() == 1);
    CHECK(rs.gr(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rs.pr_reduced[0] == 1.0);
  }
}

TEST_CASE("whole-graph subset degenerates to the dense Google matrix") {
  auto g = rgmx::testing::er_graph(40, 200, 91);
  std::vector<SubsetMember> members;
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    members.push_back({v, "C1", "n" + std::to_string(v)});
  auto subset = SubsetSpec::from_members(std::move(members), g);

  const auto rs = compute_reduced(g, {}, subset);
  const auto oracle = dense_oracle_reduced(g, {}, subset);
  const auto dense = dense_google(g, {});

  CHECK(max_abs_diff(rs.gr, dense) == 0.0);
  CHECK(max_abs_diff(oracle.gr, dense) == 0.0);
  CHECK(rs.weights.wrr == 1.0);
  CHECK(rs.weights.wpr == 0.0);
  CHECK(rs.weights.wqr == 0.0);
  CHECK(rs.gpr.isZero(0.0));
  CHECK(rs.gqrd.isZero(0.0));
  CHECK(rs.gqrnd.isZero(0.0));
  CHECK_FALSE(rs.lambda_c.has_value());
  CHECK(rs.series_terms == 0);
}

TEST_CASE("series route agrees with the dense oracle on random graphs") {
  struct Case {
    NodeId n;
    std::uint64_t edges;
    std::size_t nr;
    std::uint64_t seed;
    bool scale_free;
  };
  const Case cases[] = {
      {25, 90, 2, 101, false},  {60, 300, 7, 102, false}, {120, 700, 12, 103, false},
      {200, 900, 25, 104, false}, {150, 0, 10, 105, true}, {250, 0, 20, 106, true},
  };
  for (const auto& c : cases) {
    CAPTURE(c.seed);
    auto g = c.scale_free ? rgmx::testing::scale_free_graph(c.n, 4, c.seed)
                          : rgmx::testing::er_graph(c.n, c.edges, c.seed);
    auto subset = rgmx::testing::random_subset(g, c.nr, c.seed * 13);
    const auto fast = compute_reduced(g, {}, subset);
    const auto oracle = dense_oracle_reduced(g, {}, subset);

    CHECK(max_abs_diff(fast.gr, oracle.gr) < 1e-9);
    CHECK(max_abs_diff(fast.grr, oracle.grr) < 1e-9);
    CHECK(max_abs_diff(fast.gpr, oracle.gpr) < 1e-9);
    CHECK(max_abs_diff(fast.gqrd, oracle.gqrd) < 1e-9);
    CHECK(max_abs_diff(fast.gqrnd, oracle.gqrnd) < 1e-9);
    CHECK(*fast.lambda_c == doctest::Approx(*oracle.lambda_c).epsilon(1e-11));
    check_structure(fast);
    check_structure(oracle);
  }
}

TEST_CASE("reduced PageRank matches the restricted global PageRank") {
  for (std::uint64_t seed : {201ull, 202ull, 203ull}) {
    auto g = rgmx::testing::er_graph(300, 1800, seed);
    auto subset = rgmx::testing::random_subset(g, 20, seed + 5);
    const auto rs = compute_reduced(g, {}, subset);
    const auto pr = pagerank(g);

    double mass = 0.0;
    for (const auto& m : subset.members()) mass += pr.p[m.node];
    double worst = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < subset.size(); ++k) {
      const double restricted = pr.p[subset.member(k).node] / mass;
      worst = std::max(worst, std::abs(rs.pr_reduced[static_cast<Eigen::Index>(k)] - restricted));
      scale = std::max(scale, restricted);
    }
    CHECK(worst / scale < 1e-6);
  }
}

TEST_CASE("series terms decay and the truncation bound holds") {
  auto g = rgmx::testing::er_graph(200, 1200, 301);
  auto subset = rgmx::testing::random_subset(g, 15, 302);

  ReducedOptions loose;
  loose.series_tol = 1e-12;
  const auto rs = compute_reduced(g, {}, subset, loose);

  REQUIRE(rs.series_term_mass.size() == rs.series_terms);
  REQUIRE(rs.series_terms > 3);
  for (std::size_t l = 3; l + 1 < rs.series_term_mass.size(); ++l)
    CHECK(rs.series_term_mass[l + 1] <= rs.series_term_mass[l] * (1.0 + 1e-9));

  ReducedOptions tight;
  tight.series_tol = 1e-15;
  const auto exact = compute_reduced(g, {}, subset, tight);
  const Eigen::MatrixXd gqr_loose = rs.gqrd + rs.gqrnd;
  const Eigen::MatrixXd gqr_tight = exact.gqrd + exact.gqrnd;
  double worst_col = 0.0;
  for (Eigen::Index j = 0; j < gqr_loose.cols(); ++j)
    worst_col = std::max(worst_col, (gqr_loose.col(j) - gqr_tight.col(j)).cwiseAbs().sum());
  CHECK(worst_col <= rs.truncation_error + exact.truncation_error + 1e-15);
}

TEST_CASE("column solves are bit-identical across thread counts") {
  auto g = rgmx::testing::er_graph(150, 900, 401);
  auto subset = rgmx::testing::random_subset(g, 12, 402);
  const auto a = compute_reduced(g, {}, subset, {}, 1);
  const auto b = compute_reduced(g, {}, subset, {}, 4);
  CHECK(std::memcmp(a.gr.data(), b.gr.data(), sizeof(double) * a.gr.size()) == 0);
  CHECK(std::memcmp(a.gqrnd.data(), b.gqrnd.data(), sizeof(double) * a.gqrnd.size()) == 0);
  CHECK(std::memcmp(a.pr_reduced.data(), b.pr_reduced.data(), sizeof(double) * a.pr_reduced.size()) ==
        0);
  CHECK(a.lambda_c == b.lambda_c);
}

TEST_CASE("series cap reports the contraction estimate") {
  auto g = rgmx::testing::er_graph(100, 600, 501);
  auto subset = rgmx::testing::random_subset(g, 8, 502);
  ReducedOptions opts;
  opts.max_series_terms = 1;
  try {
    compute_reduced(g, {}, subset, opts);
    FAIL("expected numeric error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Numeric);
    CHECK(std::string(e.what()).find("contraction") != std::string::npos);
  }
}

TEST_CASE("dense oracle refuses graphs above its cap") {
  auto g = rgmx::testing::er_graph(50, 200, 601);
  auto subset = rgmx::testing::random_subset(g, 5, 602);
  CHECK_THROWS_AS(dense_oracle_reduced(g, {}, subset, 20), Error);
  CHECK_THROWS_AS(dense_google(g, {}, 20), Error);
}

TEST_CASE("dense_stationary rejects bad input") {
  CHECK_THROWS_AS(dense_stationary(Eigen::MatrixXd::Zero(2, 3)), Error);
}
