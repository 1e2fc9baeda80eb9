#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "dagcover/digraph.hpp"
#include "dagcover/parallel.hpp"
#include "dagcover/skewness.hpp"

namespace dagcover {

/// One H-copy of a host graph: the embedding that first produced it and the
/// image edge set, which is the copy's identity.
struct Copy {
  std::vector<Vertex> embedding;  // embedding[u] = image of pattern vertex u
  std::vector<Edge> edges;        // sorted
};

struct CopySet {
  int host_vertices = 0;
  std::vector<Copy> copies;
  bool truncated = false;  // enumeration stopped at the cap
};

constexpr std::size_t kDefaultCopyCap = 1'000'000;

/// All subgraphs of g isomorphic to h (not necessarily induced), one per
/// distinct edge set, in the order a sequential search over root images
/// 0..n-1 first meets them. The OpenMP path searches root images in parallel
/// and merges in root order, so both paths return the same list. The pattern
/// may have at most 10 vertices.
CopySet enumerate_copies(const Digraph& g, const Digraph& h, std::size_t cap = kDefaultCopyCap,
                         Exec exec = Exec::parallel);

struct UnionGraph {
  Digraph graph;  // spanning subgraph G_H
  bool truncated = false;
};

UnionGraph union_copy_graph(const CopySet& copies);
UnionGraph union_copy_graph(const Digraph& g, const Digraph& h, std::size_t cap = kDefaultCopyCap);

struct TauOneResult {
  bool holds = false;                         // tau(H, G) <= 1
  std::optional<Permutation> cover;           // covers every copy when holds
  std::optional<std::vector<Vertex>> cycle;   // shortest cycle of G_H otherwise
  bool truncated = false;
};

/// tau(H, G) <= 1 iff G_H is a dag.
TauOneResult tau_le_one(const Digraph& g, const Digraph& h, std::size_t cap = kDefaultCopyCap);

/// One permutation covers a family of copies iff the union of their edge
/// sets is acyclic: a topological order of the union puts every edge forward,
/// and a directed cycle in the union cannot be forward under any order.
bool compatible(const CopySet& copies, std::span<const std::size_t> indices);
/// Pairwise conflict: the two copies' union has a directed cycle.
bool conflict(const Copy& a, const Copy& b);

struct CoverSolution {
  std::vector<Permutation> permutations;
  std::vector<int> assignment;  // copy index -> permutation index
};

/// Checks that every copy is covered by its assigned permutation.
bool verify_cover(const CopySet& copies, const CoverSolution& solution);

/// First-fit grouping over a seeded random copy order: a copy joins the first
/// group whose union stays acyclic. Groups keep a dynamic topological order
/// (Pearce-Kelly) so insertions stay cheap on large hosts.
CoverSolution tau_greedy(const CopySet& copies, std::uint64_t seed);

/// Size of a greedily grown clique of pairwise-conflicting copies; a lower
/// bound on tau. Every start copy (in seeded random order) is tried, growing
/// the clique among copies sharing at least two vertices with it, which is
/// necessary for a conflict. Returns 0 for an empty copy set.
int tau_lower_clique(const CopySet& copies, std::uint64_t seed);

struct TauExact {
  bool exact = false;  // false when the work budget ran out
  int lower = 0;
  int upper = 0;
  CoverSolution solution;  // achieves `upper`
};

constexpr std::uint64_t kDefaultNodeBudget = 20'000'000;

/// Minimum number of compatible groups partitioning the copies, which is
/// tau(H, G). Branch and bound: the next copy is the one fitting the fewest
/// open groups (clique members first on ties), a copy may open at most one
/// new group, and nodes are pruned by the conflict clique overall and among
/// copies that fit no open group. The budget counts search nodes plus group
/// feasibility checks.
TauExact tau_exact(const CopySet& copies, std::uint64_t seed,
                   std::uint64_t node_budget = kDefaultNodeBudget);

struct ConsistentFamily {
  std::vector<std::vector<Vertex>> sets;  // each sorted
  int r = 0;
  int x = 0;
};

/// Disjoint sets A_1..A_r (r = 2^t) such that in every permutation of
/// `perms` any two sets occur one entirely before the other. Built by
/// repeated halving: the first and last halves of the first permutation,
/// then refined through the others keeping the pair that stays separated;
/// every set has at least floor(n / r^x) vertices. Throws
/// Error(infeasible_size) when n < r^x.
ConsistentFamily consistent_sets(std::span<const Permutation> perms, int t);

bool verify_consistent(std::span<const Permutation> perms, const ConsistentFamily& family);

/// A copy whose embedding sends block i of `coloring` into tuple[slot[i]],
/// where slot defaults to i. Constrained backtracking; nullopt if none.
std::optional<Copy> find_consistent_copy(const Digraph& g, const Digraph& h, const Partition& coloring,
                                         std::span<const std::vector<Vertex>> tuple,
                                         std::span<const int> slot = {});

struct PipelineResult {
  std::optional<Copy> copy;
  std::vector<int> profile;  // forward_count of the copy under each permutation
  int skewness = 0;
  Partition coloring;
  ConsistentFamily family;
};

/// Builds a copy on which every permutation of `perms` puts at most s(H)
/// edges forward: take the skewness witness coloring, pad its color count to
/// a power of two r, extract r consistent sets, and embed each color class in
/// its own set. Within the copy each color class is then consecutive in every
/// permutation, so the skewness bound applies. Which set each class lands in
/// is decided during the search, distinct classes in distinct sets.
PipelineResult skew_witness_pipeline(const Digraph& g, const Digraph& h,
                                     std::span<const Permutation> perms);

struct CycleConfiguration {
  std::vector<Vertex> cycle;        // shortest directed cycle of G_H
  std::vector<std::size_t> copies;  // indices into the CopySet
};

/// A shortest cycle of G_H together with a minimal set of copies whose union
/// contains all of its edges. nullopt when G_H is a dag.
std::optional<CycleConfiguration> extract_cycle_configuration(const CopySet& copies);

nlohmann::json to_json(const CoverSolution& solution);
nlohmann::json to_json(const ConsistentFamily& family);

}  // namespace dagcover
