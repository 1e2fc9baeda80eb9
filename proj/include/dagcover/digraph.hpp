#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dagcover {

using Vertex = int;

struct Edge {
  Vertex from = 0;
  Vertex to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple digraph on vertices 0..n-1. Self-loops and repeated pairs are
/// rejected; opposite pairs (2-cycles) are allowed. Immutable once built.
///
/// Edges are kept sorted lexicographically so every traversal is
/// reproducible, and membership is answered from a packed adjacency bitmap.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n);
  /// Throws Error(invalid_input) on self-loops, duplicates or endpoints
  /// outside [0, n).
  Digraph(int n, std::vector<Edge> edges);

  int num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  bool has_edge(Vertex u, Vertex v) const noexcept;

  std::span<const Vertex> out_neighbors(Vertex v) const noexcept;
  std::span<const Vertex> in_neighbors(Vertex v) const noexcept;
  int out_degree(Vertex v) const noexcept;
  int in_degree(Vertex v) const noexcept;

  /// Vertices with nonzero total degree.
  int num_non_isolated() const noexcept;
  bool has_isolated_vertex() const noexcept { return num_non_isolated() < n_; }

  /// Subgraph induced on `vertices` (relabelled 0..k-1 in the given order).
  Digraph induced(std::span<const Vertex> vertices) const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  // CSR adjacency; out-lists and in-lists are both sorted.
  std::vector<std::uint32_t> out_offset_, in_offset_;
  std::vector<Vertex> out_adj_, in_adj_;
  std::vector<std::uint64_t> bits_;
  std::size_t words_per_row_ = 0;
};

/// A bijection from vertices to positions. `order()[i]` is the vertex at
/// position i and `position(v)` is its inverse.
class Permutation {
 public:
  Permutation() = default;
  /// Throws Error(invalid_input) unless `order` is a permutation of 0..n-1.
  explicit Permutation(std::vector<Vertex> order);

  static Permutation identity(int n);
  /// Builds the permutation whose vertex v sits at `positions[v]`.
  static Permutation from_positions(std::span<const int> positions);

  int size() const noexcept { return static_cast<int>(order_.size()); }
  std::span<const Vertex> order() const noexcept { return order_; }
  std::span<const int> positions() const noexcept { return position_; }
  int position(Vertex v) const noexcept { return position_[v]; }

  Permutation reversed() const;

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.order_ == b.order_;
  }

 private:
  std::vector<Vertex> order_;
  std::vector<int> position_;
};

struct EdgeSplit {
  Digraph left;   // edges going forward under the permutation
  Digraph right;  // edges going backward
};

EdgeSplit split(const Digraph& g, const Permutation& p);
Permutation reverse(const Permutation& p);

bool is_dag(const Digraph& g);

/// Lexicographically smallest topological order, or nullopt on a cycle.
std::optional<Permutation> topological_order(const Digraph& g);

/// Number of edges (u,v) with position(u) < position(v).
int forward_count(std::span<const Edge> edges, const Permutation& p);

/// A minimum-length directed cycle as the vertex sequence v0 -> v1 -> ... ->
/// v0, or nullopt when g is a dag. Ties go to the smallest start vertex.
std::optional<std::vector<Vertex>> shortest_directed_cycle(const Digraph& g);

enum class StarRoot { source, sink };

Digraph make_transitive_tournament(int h);
Digraph make_rooted_star(int h, StarRoot root);
Digraph make_directed_path(int length);
/// D_n: all n(n-1) ordered pairs.
Digraph make_complete_digraph(int n);

/// True iff every edge shares one endpoint c and c is a source or a sink.
/// Isolated vertices are ignored.
bool is_rooted_star(const Digraph& g);

/// Ordering of `n` vertices that puts every edge of `edges` forward:
/// a topological order of the touched vertices followed by the untouched
/// ones in index order. Returns nullopt if the edges contain a cycle.
std::optional<Permutation> covering_order(int n, std::span<const Edge> edges);

}  // namespace dagcover
