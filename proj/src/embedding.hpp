#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dagcover/digraph.hpp"

namespace dagcover::detail {

/// Optional placement constraints for an embedding search. Pattern vertices
/// are grouped into blocks; host vertices into regions (-1: no region).
/// A block either has a fixed region or, when `fixed_region[b] == -1`, picks
/// one during the search; distinct blocks always use distinct regions.
struct RegionConstraint {
  std::vector<int> block_of_pattern;  // per pattern vertex
  std::vector<int> fixed_region;      // per block
  std::vector<int> region_of_host;    // per host vertex
};

/// Backtracking search for injective homomorphisms of a small pattern into a
/// host (subgraph isomorphism, not induced). Pattern vertices are placed in a
/// connectivity-first order; each later vertex is drawn from the neighbour
/// list of an already-placed pattern neighbour and checked against degree
/// bounds and every earlier pattern edge.
class Embedder {
 public:
  /// Receives embedding[u] for every pattern vertex u; return false to stop.
  using Visitor = std::function<bool(std::span<const Vertex>)>;

  Embedder(const Digraph& host, const Digraph& pattern, const RegionConstraint* constraint = nullptr);

  /// Pattern vertex placed first.
  Vertex root() const { return steps_.front().u; }
  bool root_feasible(Vertex x) const;
  /// All embeddings with the root mapped to x. Returns false if the visitor
  /// asked to stop.
  bool search_from(Vertex x, const Visitor& visit);
  /// All embeddings, roots in increasing order.
  bool search(const Visitor& visit);

 private:
  struct Check {
    Vertex earlier;
    bool earlier_to_u;  // pattern edge (earlier, u); otherwise (u, earlier)
  };
  struct Step {
    Vertex u = 0;
    int anchor = -1;  // >= 0 when some pattern neighbour is already placed
    std::vector<Check> checks;
  };

  bool feasible(int depth, Vertex x) const;
  bool extend(int depth, const Visitor& visit);
  bool place(int depth, Vertex x, const Visitor& visit);

  const Digraph& g_;
  const Digraph& h_;
  const RegionConstraint* constraint_;
  std::vector<Step> steps_;
  std::vector<Vertex> phi_;
  std::vector<char> used_;
  std::vector<int> block_region_;     // current region of each block
  std::vector<int> region_owner_;     // block holding each region, or -1
};

}  // namespace dagcover::detail
