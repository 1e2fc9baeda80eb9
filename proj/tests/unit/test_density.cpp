#include <doctest.h>

#include <random>

#include "dagcover/density.hpp"
#include "dagcover/error.hpp"
#include "dagcover/experiments.hpp"
#include "oracles.hpp"

using namespace dagcover;

namespace {

UndirectedGraph random_tree(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({static_cast<Vertex>(rng() % v), v});
  return UndirectedGraph(n, edges);
}

void check_witness(const Digraph& g, const DensityReport& r, DensityKind kind) {
  const auto size = static_cast<std::int64_t>(r.witness.size());
  CHECK(std::is_sorted(r.witness.begin(), r.witness.end()));
  const auto inside = static_cast<std::int64_t>(edges_inside(g, r.witness));
  CHECK(inside > 0);
  if (kind == DensityKind::arboricity) {
    REQUIRE(size >= 2);
    CHECK(Ratio(inside, size - 1) == r.value);
    CHECK(fractional_arboricity(g.induced(r.witness)).value == r.value);
  } else {
    CHECK(Ratio(inside, size) == r.value);
  }
}

}  // namespace

TEST_CASE("transitive tournaments have arboricity h/2") {
  for (int h = 2; h <= 8; ++h) {
    DensityReport r = fractional_arboricity(make_transitive_tournament(h));
    CHECK(r.value == Ratio(h, 2));
    CHECK(r.totally_balanced);
    CHECK(is_totally_balanced(make_transitive_tournament(h)));
  }
  CHECK(densest_subset_enum(make_transitive_tournament(6), DensityKind::arboricity).value == Ratio(3));
}

TEST_CASE("forests have arboricity one") {
  for (int seed = 0; seed < 20; ++seed) {
    UndirectedGraph t = random_tree(2 + seed % 15, seed);
    DensityReport r = fractional_arboricity(t);
    CHECK(r.value == Ratio(1));
    CHECK(is_totally_balanced(t));
  }
}

TEST_CASE("single edge and small examples") {
  Digraph edge(2, {{0, 1}});
  CHECK(fractional_arboricity(edge).value == Ratio(1));
  CHECK(fractional_arboricity(edge).totally_balanced);
  CHECK(maximal_density(edge).value == Ratio(1, 2));
  CHECK(maximal_density(make_transitive_tournament(3)).value == Ratio(1));
  CHECK(maximal_density(Digraph(2, {{0, 1}, {1, 0}})).value == Ratio(1));
}

TEST_CASE("figure-1 graph") {
  Digraph f = figure1_graph();
  DensityReport a = fractional_arboricity(f);
  CHECK(a.value == Ratio(3, 2));
  CHECK(a.witness == std::vector<Vertex>{2, 3, 4});
  CHECK_FALSE(a.totally_balanced);
  CHECK_FALSE(is_totally_balanced(f));
  CHECK(maximal_density(f).value == Ratio(1));
}

TEST_CASE("balance examples") {
  // Cycle C5 and K4 with a pendant edge.
  UndirectedGraph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  CHECK(is_totally_balanced(c5));
  UndirectedGraph k4_pendant(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}});
  CHECK(fractional_arboricity(k4_pendant).value == Ratio(2));
  CHECK_FALSE(is_totally_balanced(k4_pendant));
  CHECK_THROWS_AS(is_totally_balanced(Digraph(3, {{0, 1}})), Error);
}

TEST_CASE("undefined and oversized inputs") {
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  CHECK(kind_of([] { fractional_arboricity(Digraph(3)); }) == static_cast<int>(ErrorKind::undefined_parameter));
  CHECK(kind_of([] { maximal_density(Digraph(1)); }) == static_cast<int>(ErrorKind::undefined_parameter));
  CHECK(kind_of([] { densest_subset_enum(Digraph(21, {{0, 1}}), DensityKind::density); }) ==
        static_cast<int>(ErrorKind::size_limit));
  CHECK_THROWS_AS(UndirectedGraph(3, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(UndirectedGraph(3, {{1, 1}}), Error);
}

TEST_CASE("flow search and subset enumeration agree with the oracle") {
  for (int seed = 0; seed < 150; ++seed) {
    int n = 2 + seed % 9;
    Digraph g = oracle::random_digraph(n, 0.15 + 0.1 * (seed % 7), seed);
    if (g.num_edges() == 0) continue;
    const Ratio a = oracle::arboricity(g);
    const Ratio rho = oracle::density(g);

    DensityReport flow_a = fractional_arboricity(g);
    DensityReport flow_rho = maximal_density(g);
    CHECK(flow_a.value == a);
    CHECK(flow_rho.value == rho);
    check_witness(g, flow_a, DensityKind::arboricity);
    check_witness(g, flow_rho, DensityKind::density);

    DensityReport enum_a = densest_subset_enum(g, DensityKind::arboricity, Exec::serial);
    DensityReport enum_rho = densest_subset_enum(g, DensityKind::density, Exec::serial);
    CHECK(enum_a.value == a);
    CHECK(enum_rho.value == rho);
    check_witness(g, enum_a, DensityKind::arboricity);
    check_witness(g, enum_rho, DensityKind::density);

    CHECK(a >= rho);
    CHECK(a >= Ratio(static_cast<std::int64_t>(g.num_edges()), g.num_non_isolated() - 1));
  }
}

TEST_CASE("serial and parallel enumeration agree on value and witness") {
  for (int seed = 0; seed < 20; ++seed) {
    Digraph g = oracle::random_digraph(10 + seed % 7, 0.3, 1000 + seed);
    for (DensityKind kind : {DensityKind::arboricity, DensityKind::density}) {
      DensityReport s = densest_subset_enum(g, kind, Exec::serial);
      DensityReport p = densest_subset_enum(g, kind, Exec::parallel);
      CHECK(s.value == p.value);
      CHECK(s.witness == p.witness);
    }
  }
}

TEST_CASE("undirected graphs match the oracle") {
  for (int seed = 0; seed < 60; ++seed) {
    UndirectedGraph g = sample_undirected(3 + seed % 8, 0.5, seed);
    if (g.num_edges() == 0) continue;
    CHECK(fractional_arboricity(g).value == oracle::arboricity(g));
    CHECK(densest_subset_enum(g, DensityKind::arboricity).value == oracle::arboricity(g));
  }
}

TEST_CASE("density report JSON") {
  auto j = to_json(fractional_arboricity(make_transitive_tournament(3)));
  CHECK(j.dump() == R"({"totally_balanced":true,"value":"3/2","witness":[0,1,2]})");
}
