#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "rgmx/errors.hpp"
#include "rgmx/pagerank.hpp"
#include "support/graph_gen.hpp"

using namespace rgmx;

namespace {

double l1_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

}  // namespace

TEST_CASE("apply_google: three-cycle fixes the uniform vector") {
  auto g = DirectedGraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
  std::vector<double> v(3, 1.0 / 3.0);
  auto y = apply_google(g, {}, v);
  for (double x : y) CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("apply_google: dangling column spreads uniformly") {
  // 0 -> 1, node 1 dangling; column 0 of G is (0.075, 0.925)
  auto g = DirectedGraph::from_edges(2, {{0, 1}});
  auto y = apply_google(g, {}, std::vector<double>{1.0, 0.0});
  CHECK(y[0] == doctest::Approx(0.075).epsilon(1e-15));
  CHECK(y[1] == doctest::Approx(0.925).epsilon(1e-15));
}

TEST_CASE("apply_google: zero vector maps to zero") {
  auto g = DirectedGraph::from_edges(4, {{0, 1}, {1, 2}});
  auto y = apply_google(g, {}, std::vector<double>(4, 0.0));
  for (double x : y) CHECK(x == 0.0);
}

TEST_CASE("apply_google: length mismatch rejected") {
  auto g = DirectedGraph::from_edges(3, {{0, 1}});
  CHECK_THROWS_AS(apply_google(g, {}, std::vector<double>(2, 0.5)), Error);
}

TEST_CASE("apply_google preserves probability mass") {
  for (std::uint64_t seed : {21ull, 22ull, 23ull, 24ull}) {
    auto g = rgmx::testing::er_graph(300, 1500, seed);
    auto v = rgmx::testing::random_probability(300, seed * 7);
    auto y = apply_google(g, {}, v);
    double total = 0.0;
    for (double x : y) total += x;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    for (double x : y) CHECK(x >= 0.0);
  }
}

TEST_CASE("pagerank: three-cycle is uniform") {
  auto g = DirectedGraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
  auto pr = pagerank(g);
  for (double p : pr.p) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(pr.residual < GoogleParams{}.tol);
  // tie rule: equal probabilities rank by ascending node id
  CHECK(pr.rank == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("pagerank: two-node dangling chain") {
  auto g = DirectedGraph::from_edges(2, {{0, 1}});
  auto pr = pagerank(g);
  // fixed point of ((0.075, 0.5), (0.925, 0.5)): (1/2.85, 1.85/2.85)
  CHECK(pr.p[0] == doctest::Approx(0.35087719298245614).epsilon(1e-9));
  CHECK(pr.p[1] == doctest::Approx(0.64912280701754386).epsilon(1e-9));
  CHECK(pr.rank == std::vector<NodeId>{1, 0});
}

TEST_CASE("pagerank: four-node star with dangling hub") {
  auto g = DirectedGraph::from_edges(4, {{1, 0}, {2, 0}, {3, 0}});
  auto pr = pagerank(g);
  CHECK(pr.p[0] == doctest::Approx(0.54198473282442747).epsilon(1e-9));
  for (int leaf : {1, 2, 3})
    CHECK(pr.p[leaf] == doctest::Approx(0.15267175572519084).epsilon(1e-9));
}

TEST_CASE("pagerank satisfies the fixed-point residual bound") {
  for (std::uint64_t seed : {31ull, 32ull}) {
    auto g = rgmx::testing::er_graph(400, 2400, seed);
    GoogleParams params;
    auto pr = pagerank(g, params);
    auto gp = apply_google(g, params, pr.p);
    CHECK(l1_diff(gp, pr.p) < 10.0 * params.tol);
    double total = 0.0;
    const double floor = (1.0 - params.alpha) / static_cast<double>(g.num_nodes()) - 1e-15;
    for (double p : pr.p) {
      total += p;
      CHECK(p >= floor);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("pagerank: non-convergence reports the residual") {
  auto g = rgmx::testing::er_graph(50, 200, 5);
  GoogleParams params;
  params.max_iters = 2;
  try {
    pagerank(g, params);
    FAIL("expected numeric error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Numeric);
    CHECK(std::string(e.what()).find("residual") != std::string::npos);
  }
}

TEST_CASE("pagerank: single node") {
  auto g = DirectedGraph::from_edges(1, {});
  auto pr = pagerank(g);
  CHECK(pr.p[0] == 1.0);
}

TEST_CASE("pagerank determinism") {
  auto g = rgmx::testing::er_graph(500, 3000, 77);
  GoogleParams params;
  auto a = pagerank(g, params, 2);
  auto b = pagerank(g, params, 2);
  CHECK(std::memcmp(a.p.data(), b.p.data(), a.p.size() * sizeof(double)) == 0);

  auto c = pagerank(g, params, 1);
  auto d = pagerank(g, params, 3);
  CHECK(l1_diff(a.p, c.p) < 10.0 * params.tol);
  CHECK(l1_diff(c.p, d.p) < 10.0 * params.tol);
}

TEST_CASE("local_rank orders members by global probability") {
  auto g = DirectedGraph::from_edges(3, {});
  auto subset = SubsetSpec::from_members(
      {{0, "C1", "a"}, {1, "C1", "b"}, {2, "C1", "c"}}, g);
  PageRankResult pr;
  pr.p = {0.1, 0.3, 0.2};
  auto entries = local_rank(pr, subset);
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].member_index == 1);
  CHECK(entries[1].member_index == 2);
  CHECK(entries[2].member_index == 0);
  CHECK(entries[0].local_rank == 1);
  CHECK(entries[2].local_rank == 3);
}

TEST_CASE("local_rank breaks ties by ascending node id") {
  auto g = DirectedGraph::from_edges(4, {});
  auto subset = SubsetSpec::from_members({{3, "C1", "d"}, {1, "C1", "b"}}, g);
  PageRankResult pr;
  pr.p = {0.25, 0.25, 0.25, 0.25};
  auto entries = local_rank(pr, subset);
  CHECK(entries[0].node == 1);
  CHECK(entries[1].node == 3);
}
