#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "dagcover/digraph.hpp"
#include "dagcover/parallel.hpp"

namespace dagcover {

/// A coloring of a pattern graph's vertices into nonempty disjoint blocks.
/// Canonical form: each block sorted, blocks ordered by their minimum.
class Partition {
 public:
  Partition() = default;
  /// Throws Error(invalid_input) unless the blocks are nonempty, disjoint and
  /// cover 0..n-1 exactly.
  Partition(int n, std::vector<std::vector<Vertex>> blocks);

  /// From a color per vertex; unused colors simply produce no block.
  static Partition from_colors(std::span<const int> colors);
  static Partition singletons(int n);
  static Partition single_block(int n);

  int num_vertices() const noexcept { return n_; }
  int num_blocks() const noexcept { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<Vertex>>& blocks() const noexcept { return blocks_; }
  /// Block index of every vertex.
  std::vector<int> block_of() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  int n_ = 0;
  std::vector<std::vector<Vertex>> blocks_;
};

struct ColoringSkew {
  int value = 0;
  /// Block indices in the order they are laid out.
  std::vector<int> block_order;
  /// Full vertex order: blocks in block_order, each block topologically
  /// sorted. forward_count over it equals `value`.
  Permutation order;
};

/// s_H(C): the most forward edges any coloring-respecting order can have.
///
/// Inside a block every edge can be made forward at once, because the block
/// induces a dag and a topological order of it can be chosen independently of
/// where the block sits. So the maximum splits into (edges inside blocks) plus
/// a maximum-weight linear ordering of the quotient, where w(i,j) counts edges
/// from block i to block j. The quotient is solved exactly by a subset DP over
/// blocks; ties pick the lexicographically smallest block sequence.
///
/// Throws Error(invalid_input) if h is not a dag or c does not partition
/// V(h), Error(size_limit) for more than 24 blocks.
ColoringSkew coloring_skew(const Digraph& h, const Partition& c);

struct SkewReport {
  int value = 0;
  Partition coloring;
  std::vector<int> block_order;
  Permutation order;
};

/// s(H), minimizing coloring_skew over every set partition of V(h), in
/// restricted-growth-string order with prefix pruning. The witness is the
/// first optimal partition in that order under both execution paths.
/// Requires a dag with at most 10 vertices (Error(size_limit) otherwise).
SkewReport skewness_exact(const Digraph& h, Exec exec = Exec::parallel);

struct RandomSkew {
  int value = 0;
  Partition coloring;
};

/// Upper bound on s(H) from random k-colorings. Color counts are
/// k0 = ceil((m/h)^(1/5)) together with 2..k0+2. Each count gets `trials`
/// uniform colorings plus `trials` colorings with equal class sizes (a random
/// order dealt round-robin), since balanced classes are what tend to push the
/// value toward m/2 and uniform draws rarely produce them once k grows.
/// Deterministic in `seed`.
RandomSkew skewness_upper_random(const Digraph& h, int trials, std::uint64_t seed);

/// ceil((m/h)^(1/5)) computed in integers.
int random_coloring_width(int m, int h);

/// Checks ceil(m/2) <= s(H) <= m and (s(H) == m iff h is a rooted star).
bool skew_bound_check(const Digraph& h);

nlohmann::json to_json(const SkewReport& report);
nlohmann::json to_json(const Partition& partition);

}  // namespace dagcover
