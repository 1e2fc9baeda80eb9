#include <doctest.h>

#include "dagcover/error.hpp"
#include "dagcover/graph_io.hpp"
#include "dagcover/ratio.hpp"

using namespace dagcover;

TEST_CASE("edge-list text format") {
  Digraph g = parse_graph("3 2\n0 1\n2 1\n");
  CHECK(g.num_vertices() == 3);
  CHECK(g.has_edge(2, 1));
  CHECK(to_edge_list(g) == "3 2\n0 1\n2 1\n");
  CHECK(parse_graph(to_edge_list(g)) == g);
  CHECK_THROWS_AS(parse_graph("2 1\n0 0\n"), Error);
  CHECK_THROWS_AS(parse_graph("2 2\n0 1\n0 1\n"), Error);
  CHECK_THROWS_AS(parse_graph("2 2\n0 1\n"), Error);
  CHECK_THROWS_AS(parse_graph("2 1\n0 x\n"), Error);
  CHECK_THROWS_AS(parse_graph(""), Error);
}

TEST_CASE("JSON graph format") {
  Digraph g = parse_graph(R"({"n": 3, "edges": [[0, 1], [1, 2]]})");
  CHECK(g == make_directed_path(2));
  CHECK(graph_from_json(to_json(g)) == g);
  CHECK(to_json(g).dump() == R"({"edges":[[0,1],[1,2]],"n":3})");
  CHECK_THROWS_AS(parse_graph(R"({"n": 2, "edges": [[1, 1]]})"), Error);
  CHECK_THROWS_AS(parse_graph(R"({"n": 2})"), Error);
  CHECK_THROWS_AS(parse_graph(R"({"n": 2, "edges": [[0, 1)"), Error);
}

TEST_CASE("permutation lines hold positions") {
  auto perms = parse_permutations("2 0 1\n\n0 1 2\n");
  REQUIRE(perms.size() == 2);
  CHECK(perms[0].position(0) == 2);
  CHECK(perms[0].order()[0] == 1);
  CHECK(to_permutation_lines(perms) == "2 0 1\n0 1 2\n");
  CHECK_THROWS_AS(parse_permutations("0 1\n0 1 2\n"), Error);
  CHECK_THROWS_AS(parse_permutations("0 0 1\n"), Error);
}

TEST_CASE("exact ratios") {
  CHECK(Ratio(6, 4) == Ratio(3, 2));
  CHECK(Ratio(3, -6) == Ratio(-1, 2));
  CHECK(Ratio(2, 3) < Ratio(3, 4));
  CHECK(Ratio(5).to_string() == "5/1");
  CHECK(Ratio::parse("5/4") == Ratio(5, 4));
  CHECK(Ratio::parse("1.25") == Ratio(5, 4));
  CHECK(Ratio::parse("0.9") == Ratio(9, 10));
  CHECK(Ratio::parse("2") == Ratio(2));
  CHECK_THROWS_AS(Ratio::parse("1/0"), Error);
  CHECK_THROWS_AS(Ratio::parse("abc"), Error);
  CHECK_THROWS_AS(Ratio(1, 0), Error);
}
