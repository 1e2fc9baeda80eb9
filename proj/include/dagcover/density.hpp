#pragma once

#include <utility>
#include <vector>

#include <json.hpp>

#include "dagcover/digraph.hpp"
#include "dagcover/parallel.hpp"
#include "dagcover/ratio.hpp"

namespace dagcover {

/// Simple undirected graph; pairs are stored as (min, max) and sorted.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(int n) : n_(n) {}
  /// Throws Error(invalid_input) on self-loops, repeated pairs (in either
  /// orientation) or endpoints out of range.
  UndirectedGraph(int n, std::vector<std::pair<Vertex, Vertex>> edges);

  int num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const noexcept { return edges_; }
  bool has_isolated_vertex() const;

 private:
  int n_ = 0;
  std::vector<std::pair<Vertex, Vertex>> edges_;
};

/// Which ratio a density search maximizes over vertex subsets S.
enum class DensityKind {
  arboricity,  // e(S) / (|S| - 1), |S| >= 2
  density,     // e(S) / |S|, |S| >= 1
};

struct DensityReport {
  Ratio value;
  std::vector<Vertex> witness;  // sorted vertex subset attaining value
  /// Arboricity reports: value == m / (n - 1) with the declared n.
  /// Density reports: value == m / n.
  bool totally_balanced = false;
};

// Parametric min-cut route. Directed inputs count each ordered pair once,
// so a 2-cycle contributes two edges. Throws Error(undefined_parameter) on
// graphs with fewer than two vertices or no edges.
DensityReport fractional_arboricity(const Digraph& g);
DensityReport fractional_arboricity(const UndirectedGraph& g);
DensityReport maximal_density(const Digraph& g);
DensityReport maximal_density(const UndirectedGraph& g);

/// a(g) == |E| / (|V| - 1). Throws Error(invalid_input) if g has an isolated
/// vertex and Error(undefined_parameter) if it has no edges.
bool is_totally_balanced(const Digraph& g);
bool is_totally_balanced(const UndirectedGraph& g);

/// Exhaustive subset oracle for n <= 20 (Error(size_limit) above). Ties
/// resolve to the numerically smallest vertex bitmask, so the serial and
/// OpenMP paths agree on the witness as well as the value.
DensityReport densest_subset_enum(const Digraph& g, DensityKind kind,
                                  Exec exec = Exec::parallel);
DensityReport densest_subset_enum(const UndirectedGraph& g, DensityKind kind,
                                  Exec exec = Exec::parallel);

/// Edges with both endpoints in `subset` (directed: ordered pairs).
std::size_t edges_inside(const Digraph& g, std::span<const Vertex> subset);

nlohmann::json to_json(const DensityReport& report);

}  // namespace dagcover
