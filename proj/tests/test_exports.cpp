#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "rgmx/exports.hpp"
#include "rgmx/netstruct.hpp"
#include "rgmx/reduced.hpp"
#include "support/graph_gen.hpp"
#include "support/test_util.hpp"

using namespace rgmx;
using rgmx::testing::TempDir;
using rgmx::testing::read_file;

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, -2.75e-13, 0.0, 123456.789, 1e308, -0.3222546161318909}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("csv_field quotes only when needed") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("with,comma") == "\"with,comma\"");
  CHECK(csv_field("with \"quote\"") == "\"with \"\"quote\"\"\"");
  CHECK(csv_field("Al-Shabaab (militant group)") == "Al-Shabaab (militant group)");
}

TEST_CASE("category colors cover the catalog codes and fall back deterministically") {
  CHECK(category_color("C1") == "#3531FF");
  CHECK(category_color("BL") == "#3531FF");
  CHECK(category_color("C2") == "#FE0000");
  CHECK(category_color("C4") == "#009901");
  CHECK(category_color("C6") == "#000000");
  CHECK(category_color("country") == "#00FFFF");
  CHECK(category_color("odd-tag") == category_color("odd-tag"));
  CHECK(category_color("odd-tag").size() == 7);
}

TEST_CASE("matrix csv carries member names on both axes") {
  TempDir tmp("exports");
  auto g = DirectedGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto subset = SubsetSpec::from_members({{0, "C1", "alpha"}, {2, "C2", "be,ta"}}, g);
  Eigen::MatrixXd m(2, 2);
  m << 0.25, 0.5, 0.75, 0.5;
  write_matrix_csv(tmp.file("m.csv"), m, subset);
  const auto text = read_file(tmp.file("m.csv"));
  CHECK(text == ",alpha,\"be,ta\"\nalpha,0.25,0.5\n\"be,ta\",0.75,0.5\n");
}

TEST_CASE("heatmap orders members by local rank within the category") {
  TempDir tmp("exports");
  auto g = rgmx::testing::er_graph(60, 300, 17);
  auto subset = rgmx::testing::random_subset(g, 6, 18);  // categories country,C1,C2 cycling
  const auto rs = compute_reduced(g, {}, subset);
  write_heatmap_csv(tmp.file("h.csv"), rs, subset, "C1");

  std::istringstream in(read_file(tmp.file("h.csv")));
  std::string line;
  std::getline(in, line);
  CHECK(line == "row_member,col_member,component,value");
  const auto c1 = subset.members_with_category("C1");
  REQUIRE(c1.size() == 2);
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5 * c1.size() * c1.size());
}

TEST_CASE("gexf and dot are well-formed and complete") {
  TempDir tmp("exports");
  auto g = rgmx::testing::er_graph(50, 260, 19);
  auto subset = rgmx::testing::random_subset(g, 6, 20);
  const auto rs = compute_reduced(g, {}, subset);
  std::vector<std::size_t> seeds{0};
  const auto net = friend_closure(rs, subset, seeds, 2);

  write_gexf(tmp.file("n.gexf"), net, subset, rs);
  write_dot(tmp.file("n.dot"), net, subset, rs);
  write_friend_edges_csv(tmp.file("n.csv"), net, subset);

  const auto gexf = read_file(tmp.file("n.gexf"));
  CHECK(gexf.find("<?xml") == 0);
  CHECK(gexf.find("defaultedgetype=\"directed\"") != std::string::npos);
  for (const auto& node : net.nodes)
    CHECK(gexf.find("<node id=\"" + std::to_string(node.member) + "\"") != std::string::npos);
  CHECK(gexf.rfind("</gexf>\n") == gexf.size() - 8);

  const auto dot = read_file(tmp.file("n.dot"));
  CHECK(dot.find("digraph friends {") == 0);
  for (const auto& edge : net.edges)
    CHECK(dot.find("n" + std::to_string(edge.from) + " -> n" + std::to_string(edge.to)) !=
          std::string::npos);
  CHECK(dot.rfind("}\n") == dot.size() - 2);

  std::istringstream in(read_file(tmp.file("n.csv")));
  std::string line;
  std::size_t rows = 0;
  std::getline(in, line);
  while (std::getline(in, line)) ++rows;
  CHECK(rows == net.edges.size());
}

TEST_CASE("sha256 matches a known vector") {
  TempDir tmp("exports");
  CHECK(sha256_string("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  rgmx::testing::write_file(tmp.file("x"), "abc");
  CHECK(sha256_file(tmp.file("x")) == sha256_string("abc"));
}
