#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dagcover/covering.hpp"
#include "dagcover/error.hpp"
#include "dagcover/experiments.hpp"
#include "oracles.hpp"

using namespace dagcover;

namespace {

std::set<std::vector<Edge>> edge_sets(const CopySet& c) {
  std::set<std::vector<Edge>> out;
  for (const Copy& copy : c.copies) out.insert(copy.edges);
  return out;
}

std::vector<Permutation> random_perms(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Permutation> perms;
  for (int i = 0; i < count; ++i) {
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    perms.emplace_back(order);
  }
  return perms;
}

// Copies {0,1,2} with 0->1 and {1,0,3} with 1->0: G_H holds the 2-cycle 0<->1.
Digraph two_triangles() {
  return Digraph(4, {{0, 1}, {0, 2}, {1, 2}, {1, 0}, {1, 3}, {0, 3}});
}

}  // namespace

TEST_CASE("copy enumeration examples") {
  Digraph t3 = make_transitive_tournament(3);
  CHECK(enumerate_copies(make_transitive_tournament(4), t3).copies.size() == 4);
  CHECK(enumerate_copies(Digraph(3, {{0, 1}, {1, 2}, {2, 0}}), t3).copies.empty());
  CHECK(enumerate_copies(t3, t3).copies.size() == 1);
  CHECK(enumerate_copies(make_complete_digraph(3), t3).copies.size() == 6);
  CHECK_THROWS_AS(enumerate_copies(make_complete_digraph(12), make_transitive_tournament(11)), Error);
  for (const Copy& c : enumerate_copies(make_transitive_tournament(5), t3).copies) {
    CHECK(std::is_sorted(c.edges.begin(), c.edges.end()));
    CHECK(c.embedding.size() == 3);
    for (const Edge& e : t3.edges()) CHECK(std::binary_search(c.edges.begin(), c.edges.end(), Edge{c.embedding[e.from], c.embedding[e.to]}));
  }
}

TEST_CASE("copy enumeration matches the brute-force oracle") {
  std::vector<Digraph> patterns{make_transitive_tournament(3), make_directed_path(2), make_directed_path(3),
                                make_rooted_star(4, StarRoot::sink), Digraph(4, {{0, 1}, {2, 3}}),
                                figure1_graph()};
  for (int seed = 0; seed < 30; ++seed) {
    Digraph g = oracle::random_digraph(4 + seed % 4, 0.5, seed);
    for (const Digraph& h : patterns) {
      CopySet c = enumerate_copies(g, h, kDefaultCopyCap, Exec::serial);
      CHECK(edge_sets(c) == oracle::copies(g, h));
      CHECK(edge_sets(c).size() == c.copies.size());
      CHECK_FALSE(c.truncated);
    }
  }
}

TEST_CASE("parallel enumeration returns the serial list") {
  Digraph t3 = make_transitive_tournament(3);
  for (int seed = 0; seed < 8; ++seed) {
    Digraph g = sample_digraph(150 + 20 * seed, 0.08, seed);
    CopySet s = enumerate_copies(g, t3, kDefaultCopyCap, Exec::serial);
    CopySet p = enumerate_copies(g, t3, kDefaultCopyCap, Exec::parallel);
    REQUIRE(s.copies.size() == p.copies.size());
    for (std::size_t i = 0; i < s.copies.size(); ++i) {
      CHECK(s.copies[i].edges == p.copies[i].edges);
      CHECK(s.copies[i].embedding == p.copies[i].embedding);
    }
  }
}

TEST_CASE("the cap truncates identically on both paths") {
  Digraph g = make_complete_digraph(9);
  Digraph t3 = make_transitive_tournament(3);
  for (std::size_t cap : {1, 5, 100, 503}) {
    CopySet s = enumerate_copies(g, t3, cap, Exec::serial);
    CopySet p = enumerate_copies(g, t3, cap, Exec::parallel);
    CHECK(s.truncated);
    CHECK(p.truncated);
    CHECK(s.copies.size() == cap);
    REQUIRE(p.copies.size() == cap);
    for (std::size_t i = 0; i < cap; ++i) CHECK(s.copies[i].edges == p.copies[i].edges);
  }
  CopySet all = enumerate_copies(g, t3, 504, Exec::parallel);
  CHECK(all.copies.size() == 504);
  CHECK_FALSE(all.truncated);
}

TEST_CASE("union graph and tau <= 1") {
  Digraph t3 = make_transitive_tournament(3);
  CHECK(union_copy_graph(make_transitive_tournament(4), t3).graph == make_transitive_tournament(4));
  CHECK(union_copy_graph(Digraph(2, {{0, 1}}), make_directed_path(2)).graph.num_edges() == 0);

  TauOneResult none = tau_le_one(Digraph(5, {{0, 1}}), t3);
  CHECK(none.holds);
  TauOneResult tn = tau_le_one(make_transitive_tournament(7), t3);
  REQUIRE(tn.holds);
  CopySet copies = enumerate_copies(make_transitive_tournament(7), t3);
  CHECK(verify_cover(copies, CoverSolution{{*tn.cover}, std::vector<int>(copies.copies.size(), 0)}));

  TauOneResult clash = tau_le_one(two_triangles(), t3);
  CHECK_FALSE(clash.holds);
  REQUIRE(clash.cycle.has_value());
  CHECK(clash.cycle->size() == 2);
}

TEST_CASE("compatibility") {
  Digraph t3 = make_transitive_tournament(3);
  CopySet tri = enumerate_copies(two_triangles(), t3);
  std::vector<std::size_t> one{0}, both{0, 1};
  CHECK(compatible(tri, one));
  // Some pair in this host clashes on the 2-cycle.
  bool clash = false;
  for (std::size_t i = 0; i < tri.copies.size(); ++i)
    for (std::size_t j = i + 1; j < tri.copies.size(); ++j) {
      std::vector<std::size_t> pair{i, j};
      CHECK(compatible(tri, pair) == !conflict(tri.copies[i], tri.copies[j]));
      clash = clash || conflict(tri.copies[i], tri.copies[j]);
    }
  CHECK(clash);

  // Three 2-edge paths around a directed 6-cycle.
  Digraph hex(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  CopySet paths = enumerate_copies(hex, make_directed_path(2));
  std::vector<std::size_t> picks;
  for (std::size_t i = 0; i < paths.copies.size(); ++i)
    if (paths.copies[i].embedding[0] % 2 == 0) picks.push_back(i);
  REQUIRE(picks.size() == 3);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a + 1; b < 3; ++b) {
      std::vector<std::size_t> pair{picks[a], picks[b]};
      CHECK(compatible(paths, pair));
    }
  CHECK_FALSE(compatible(paths, picks));
}

TEST_CASE("incompatibility is inherited by supersets") {
  Digraph p3 = make_directed_path(2);
  for (int seed = 0; seed < 20; ++seed) {
    Digraph g = oracle::random_digraph(6, 0.4, 50 + seed);
    CopySet c = enumerate_copies(g, p3);
    if (c.copies.size() < 4) continue;
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::size_t> set;
      for (std::size_t i = 0; i < c.copies.size(); ++i)
        if (rng() % 3 == 0) set.push_back(i);
      if (compatible(c, set)) continue;
      std::vector<std::size_t> bigger = set;
      for (std::size_t i = 0; i < c.copies.size(); ++i)
        if (rng() % 2 == 0 && std::find(set.begin(), set.end(), i) == set.end()) bigger.push_back(i);
      CHECK_FALSE(compatible(c, bigger));
    }
  }
}

TEST_CASE("greedy, clique and exact bounds") {
  Digraph t3 = make_transitive_tournament(3);
  CopySet empty = enumerate_copies(Digraph(4), t3);
  CHECK(tau_greedy(empty, 1).permutations.empty());
  CHECK(tau_lower_clique(empty, 1) == 0);
  CHECK(tau_exact(empty, 1).upper == 0);

  CopySet tn = enumerate_copies(make_transitive_tournament(6), t3);
  CHECK(tau_greedy(tn, 3).permutations.size() == 1);
  CHECK(tau_lower_clique(tn, 3) == 1);
  CHECK(tau_exact(tn, 3).upper == 1);

  CopySet d3 = enumerate_copies(make_complete_digraph(3), t3);
  CHECK(tau_greedy(d3, 1).permutations.size() >= 2);
  CHECK(tau_lower_clique(d3, 1) >= 2);
  TauExact e = tau_exact(d3, 1);
  CHECK(e.exact);
  CHECK(e.upper == oracle::tau(make_complete_digraph(3), t3));
  CHECK(verify_cover(d3, e.solution));

  CopySet d4 = enumerate_copies(make_complete_digraph(4), t3);
  TauExact e4 = tau_exact(d4, 1);
  CHECK(e4.exact);
  CHECK(e4.upper == oracle::tau(make_complete_digraph(4), t3));

  // Clique bound 6 but tau 7: the search has to prove 6 groups impossible.
  for (const Digraph& h : {t3, make_directed_path(2)}) {
    CopySet d5 = enumerate_copies(make_complete_digraph(5), h);
    TauExact e5 = tau_exact(d5, 2);
    CHECK(e5.exact);
    CHECK(e5.upper == 7);
    CHECK(e5.upper == oracle::tau(make_complete_digraph(5), h));
    CHECK(verify_cover(d5, e5.solution));
  }
}

TEST_CASE("tau sandwich and oracle on random hosts") {
  std::vector<Digraph> patterns{make_transitive_tournament(3), make_directed_path(2)};
  for (int seed = 0; seed < 60; ++seed) {
    int n = 3 + seed % 4;
    Digraph g = oracle::random_digraph(n, 0.6, 400 + seed);
    for (const Digraph& h : patterns) {
      CopySet c = enumerate_copies(g, h);
      CoverSolution greedy = tau_greedy(c, seed);
      CHECK(verify_cover(c, greedy));
      TauExact exact = tau_exact(c, seed);
      REQUIRE(exact.exact);
      CHECK(verify_cover(c, exact.solution));
      CHECK(exact.solution.permutations.size() == static_cast<std::size_t>(exact.upper));
      CHECK(tau_lower_clique(c, seed) <= exact.upper);
      CHECK(exact.upper <= static_cast<int>(greedy.permutations.size()));
      if (n <= 5) CHECK(exact.upper == oracle::tau(g, h));
    }
  }
}

TEST_CASE("greedy on a large host is valid and deterministic") {
  Digraph g = sample_digraph(400, 0.05, 3);
  CopySet c = enumerate_copies(g, make_transitive_tournament(3));
  CoverSolution a = tau_greedy(c, 9), b = tau_greedy(c, 9);
  CHECK(verify_cover(c, a));
  CHECK(a.assignment == b.assignment);
  CHECK(tau_lower_clique(c, 9) <= static_cast<int>(a.permutations.size()));
}

TEST_CASE("node budget yields bounds") {
  CopySet c = enumerate_copies(make_complete_digraph(5), make_directed_path(2));
  TauExact t = tau_exact(c, 1, 50);
  CHECK(t.lower <= t.upper);
  CHECK(verify_cover(c, t.solution));
  if (!t.exact) CHECK(t.lower < t.upper);
}

TEST_CASE("verify_cover rejects bad assignments") {
  CopySet c = enumerate_copies(make_complete_digraph(3), make_transitive_tournament(3));
  CoverSolution one{{Permutation::identity(3)}, std::vector<int>(c.copies.size(), 0)};
  CHECK_FALSE(verify_cover(c, one));
  CHECK_FALSE(verify_cover(c, CoverSolution{}));
}

TEST_CASE("consistent sets") {
  SUBCASE("identity halves") {
    std::vector<Permutation> x{Permutation::identity(8)};
    ConsistentFamily f = consistent_sets(x, 1);
    CHECK(f.sets == std::vector<std::vector<Vertex>>{{0, 1, 2, 3}, {4, 5, 6, 7}});
    CHECK(f.r == 2);
    CHECK(f.x == 1);
  }
  SUBCASE("identity and reverse") {
    std::vector<Permutation> x{Permutation::identity(8), reverse(Permutation::identity(8))};
    ConsistentFamily f = consistent_sets(x, 1);
    REQUIRE(f.sets.size() == 2);
    CHECK(f.sets[0].size() == 2);
    CHECK(f.sets[1].size() == 2);
    CHECK(verify_consistent(x, f));
  }
  SUBCASE("random families") {
    for (int seed = 0; seed < 30; ++seed) {
      int x = 1 + seed % 3, t = 1 + seed % 2;
      int n = 256 + seed;
      auto perms = random_perms(n, x, seed);
      ConsistentFamily f = consistent_sets(perms, t);
      CHECK(verify_consistent(perms, f));
      CHECK(f.sets.size() == static_cast<std::size_t>(1 << t));
      int floor = n;
      for (int i = 0; i < x; ++i) floor /= 1 << t;
      for (const auto& s : f.sets) CHECK(static_cast<int>(s.size()) >= floor);
    }
  }
  SUBCASE("errors") {
    auto perms = random_perms(3, 2, 1);
    try {
      consistent_sets(perms, 1);
      FAIL("expected infeasible_size");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::infeasible_size);
    }
    CHECK_NOTHROW(consistent_sets(random_perms(4, 2, 1), 1));
    CHECK_THROWS_AS(consistent_sets({}, 1), Error);
  }
}

TEST_CASE("verify_consistent") {
  std::vector<Permutation> x{Permutation::identity(4)};
  CHECK_FALSE(verify_consistent(x, ConsistentFamily{{{0, 2}, {1, 3}}, 2, 1}));
  auto perms = random_perms(6, 3, 4);
  CHECK(verify_consistent(perms, ConsistentFamily{{{0}, {3}, {5}}, 4, 3}));
  CHECK_FALSE(verify_consistent(perms, ConsistentFamily{{{0, 1}, {1}}, 2, 3}));
}

TEST_CASE("constrained copies") {
  Digraph t6 = make_transitive_tournament(6);
  Digraph t3 = make_transitive_tournament(3);
  std::vector<std::vector<Vertex>> tuple{{0, 1}, {2, 3}, {4, 5}};
  auto found = find_consistent_copy(t6, t3, Partition::singletons(3), tuple);
  REQUIRE(found.has_value());
  for (int u = 0; u < 3; ++u)
    CHECK(std::count(tuple[u].begin(), tuple[u].end(), found->embedding[u]) == 1);

  Digraph no_cross(6, {{0, 1}, {2, 3}, {4, 5}});
  CHECK_FALSE(find_consistent_copy(no_cross, Digraph(2, {{0, 1}}), Partition::singletons(2), tuple).has_value());

  std::vector<int> slot{2, 0, 1};
  CHECK_FALSE(find_consistent_copy(t6, t3, Partition::singletons(3), tuple, slot).has_value());

  for (int seed = 0; seed < 20; ++seed) {
    Digraph g = oracle::random_digraph(12, 0.5, seed);
    Partition c(3, {{0, 2}, {1}});
    std::vector<std::vector<Vertex>> sets{{0, 1, 2, 3, 4}, {5, 6, 7, 8}};
    auto copy = find_consistent_copy(g, t3, c, sets);
    if (!copy) continue;
    CHECK(copy->embedding[0] <= 4);
    CHECK(copy->embedding[2] <= 4);
    CHECK(copy->embedding[1] >= 5);
  }
}

TEST_CASE("pipeline guarantee") {
  Digraph t3 = make_transitive_tournament(3);
  std::vector<Permutation> one = random_perms(20, 1, 1);
  PipelineResult r = skew_witness_pipeline(make_complete_digraph(20), t3, one);
  REQUIRE(r.copy.has_value());
  CHECK(r.skewness == 2);
  CHECK(r.profile.size() == 1);
  CHECK(forward_count(r.copy->edges, one[0]) <= 2);

  PipelineResult none = skew_witness_pipeline(make_complete_digraph(5), t3, {});
  CHECK(none.copy.has_value());
  CHECK(none.profile.empty());

  for (int seed = 0; seed < 25; ++seed) {
    Digraph g = sample_digraph(30, 0.5, seed);
    auto perms = random_perms(30, 3, 100 + seed);
    PipelineResult p = skew_witness_pipeline(g, t3, perms);
    CHECK(verify_consistent(perms, p.family));
    if (!p.copy) continue;
    for (const Permutation& pi : perms) CHECK(forward_count(p.copy->edges, pi) <= p.skewness);
  }

  CHECK_THROWS_AS(skew_witness_pipeline(make_complete_digraph(5), make_rooted_star(3, StarRoot::source), one), Error);
  try {
    skew_witness_pipeline(make_complete_digraph(5), t3, random_perms(5, 3, 2));
    FAIL("expected infeasible_size");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::infeasible_size);
  }
}

TEST_CASE("cycle configurations") {
  Digraph t3 = make_transitive_tournament(3);
  CHECK_FALSE(extract_cycle_configuration(enumerate_copies(make_transitive_tournament(5), t3)).has_value());

  CopySet c = enumerate_copies(two_triangles(), t3);
  auto config = extract_cycle_configuration(c);
  REQUIRE(config.has_value());
  CHECK(config->cycle.size() == 2);
  CHECK(config->copies.size() == 2);

  for (int seed = 0; seed < 30; ++seed) {
    Digraph g = oracle::random_digraph(8, 0.4, 60 + seed);
    CopySet copies = enumerate_copies(g, t3);
    auto cfg = extract_cycle_configuration(copies);
    CHECK(cfg.has_value() == !is_dag(union_copy_graph(copies).graph));
    if (!cfg) continue;
    const auto& cyc = cfg->cycle;
    CHECK(cfg->copies.size() <= cyc.size());
    auto covers = [&](std::size_t skip) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        Edge e{cyc[i], cyc[(i + 1) % cyc.size()]};
        bool hit = false;
        for (std::size_t k = 0; k < cfg->copies.size(); ++k)
          if (k != skip && std::binary_search(copies.copies[cfg->copies[k]].edges.begin(),
                                              copies.copies[cfg->copies[k]].edges.end(), e))
            hit = true;
        if (!hit) return false;
      }
      return true;
    };
    CHECK(covers(cfg->copies.size()));
    for (std::size_t k = 0; k < cfg->copies.size(); ++k) CHECK_FALSE(covers(k));
  }
}

TEST_CASE("cover and family JSON") {
  CopySet c = enumerate_copies(make_complete_digraph(3), make_transitive_tournament(3));
  auto j = to_json(tau_exact(c, 1).solution);
  CHECK(j.at("tau") == 6);
  CHECK(j.at("perms").size() == 6);
  CHECK(j.at("assignment").size() == 6);
  auto f = to_json(consistent_sets(std::vector<Permutation>{Permutation::identity(4)}, 1));
  CHECK(f.dump() == R"({"sets":[[0,1],[2,3]]})");
}
