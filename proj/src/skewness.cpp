#include "dagcover/skewness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "dagcover/error.hpp"
#include "dagcover/rng.hpp"

namespace dagcover {

Partition::Partition(int n, std::vector<std::vector<Vertex>> blocks) : n_(n), blocks_(std::move(blocks)) {
  std::vector<char> seen(n, 0);
  int covered = 0;
  for (auto& block : blocks_) {
    if (block.empty()) fail(ErrorKind::invalid_input, "partition has an empty block");
    for (Vertex v : block) {
      if (v < 0 || v >= n || seen[v])
        fail(ErrorKind::invalid_input, "partition blocks overlap or leave the vertex range");
      seen[v] = 1;
      ++covered;
    }
    std::sort(block.begin(), block.end());
  }
  if (covered != n) fail(ErrorKind::invalid_input, "partition does not cover every vertex");
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

Partition Partition::from_colors(std::span<const int> colors) {
  std::vector<std::vector<Vertex>> blocks;
  std::vector<int> slot;
  for (std::size_t v = 0; v < colors.size(); ++v) {
    int c = colors[v];
    if (c < 0) fail(ErrorKind::invalid_input, "negative color");
    if (c >= static_cast<int>(slot.size())) slot.resize(c + 1, -1);
    if (slot[c] < 0) {
      slot[c] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[c]].push_back(static_cast<Vertex>(v));
  }
  return Partition(static_cast<int>(colors.size()), std::move(blocks));
}

Partition Partition::singletons(int n) {
  std::vector<std::vector<Vertex>> blocks(n);
  for (int v = 0; v < n; ++v) blocks[v] = {v};
  return Partition(n, std::move(blocks));
}

Partition Partition::single_block(int n) {
  std::vector<Vertex> all(n);
  for (int v = 0; v < n; ++v) all[v] = v;
  return Partition(n, {std::move(all)});
}

std::vector<int> Partition::block_of() const {
  std::vector<int> owner(n_, -1);
  for (int b = 0; b < num_blocks(); ++b)
    for (Vertex v : blocks_[b]) owner[v] = b;
  return owner;
}

namespace {

constexpr int kMaxBlocks = 24;
constexpr int kMaxExactVertices = 10;

struct QuotientValue {
  int inside = 0;
  int cross = 0;  // best forward cross-block edges
  std::vector<int> block_order;
};

// Exact max-weight linear ordering of k blocks. best[S] is the largest number
// of forward cross edges obtainable for the blocks outside S once the blocks
// of S have been placed first.
QuotientValue order_blocks(const Digraph& h, std::span<const int> owner, int k, bool want_order) {
  std::vector<int> weight(static_cast<std::size_t>(k) * k, 0);
  QuotientValue out;
  for (const Edge& e : h.edges()) {
    int a = owner[e.from], b = owner[e.to];
    if (a == b)
      ++out.inside;
    else
      ++weight[a * k + b];
  }
  const std::uint32_t full = (k == 32) ? ~0U : ((std::uint32_t{1} << k) - 1);
  std::vector<int> best(std::size_t{full} + 1, 0);
  auto gain = [&](std::uint32_t placed, int b) {
    int sum = 0;
    for (std::uint32_t rest = placed; rest; rest &= rest - 1) sum += weight[std::countr_zero(rest) * k + b];
    return sum;
  };
  for (std::uint32_t s = full; s-- > 0;) {
    int value = std::numeric_limits<int>::min();
    for (std::uint32_t free = full & ~s; free; free &= free - 1) {
      int b = std::countr_zero(free);
      value = std::max(value, gain(s, b) + best[s | (std::uint32_t{1} << b)]);
    }
    best[s] = value;
  }
  out.cross = k == 0 ? 0 : best[0];
  if (want_order) {
    std::uint32_t placed = 0;
    while (placed != full) {
      for (std::uint32_t free = full & ~placed; free; free &= free - 1) {
        int b = std::countr_zero(free);
        if (gain(placed, b) + best[placed | (std::uint32_t{1} << b)] == best[placed]) {
          out.block_order.push_back(b);
          placed |= std::uint32_t{1} << b;
          break;
        }
      }
    }
  }
  return out;
}

// Lexicographically smallest topological order of each block, concatenated
// in block order.
Permutation layout(const Digraph& h, const Partition& c, std::span<const int> block_order) {
  std::vector<int> owner = c.block_of();
  std::vector<int> indegree(h.num_vertices(), 0);
  for (const Edge& e : h.edges())
    if (owner[e.from] == owner[e.to]) ++indegree[e.to];
  std::vector<Vertex> order;
  order.reserve(h.num_vertices());
  for (int b : block_order) {
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
    for (Vertex v : c.blocks()[b])
      if (indegree[v] == 0) ready.push(v);
    while (!ready.empty()) {
      Vertex v = ready.top();
      ready.pop();
      order.push_back(v);
      for (Vertex w : h.out_neighbors(v))
        if (owner[w] == b && --indegree[w] == 0) ready.push(w);
    }
  }
  return Permutation(std::move(order));
}

void require_dag(const Digraph& h) {
  if (!is_dag(h)) fail(ErrorKind::invalid_input, "skewness needs a directed acyclic graph");
}

// --- exact search over set partitions ---------------------------------------

struct SearchState {
  const Digraph* h = nullptr;
  int n = 0;
  int m = 0;
  int floor_value = 0;                      // ceil(m/2), the global lower bound
  std::vector<std::uint32_t> lower_adj;     // neighbours j < i of vertex i
};

struct StripeResult {
  int value = std::numeric_limits<int>::max();
  std::vector<int> colors;
};

class PartitionSearch {
 public:
  PartitionSearch(const SearchState& state, std::atomic<int>* global_best,
                  std::atomic<int>* earliest_optimal, int stripe)
      : s_(state), global_best_(global_best), earliest_optimal_(earliest_optimal), stripe_(stripe),
        colors_(state.n, 0), members_(state.n, 0) {}

  // Continues from a fixed prefix of restricted-growth colors.
  StripeResult run(std::span<const int> prefix) {
    int inside = 0, used = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      int c = prefix[i];
      inside += std::popcount(s_.lower_adj[i] & members_[c]);
      members_[c] |= std::uint32_t{1} << i;
      colors_[i] = c;
      used = std::max(used, c + 1);
    }
    extend(static_cast<int>(prefix.size()), used, inside);
    return result_;
  }

 private:
  bool pruned(int bound) const {
    if (bound >= result_.value) return true;
    if (global_best_ && bound > global_best_->load(std::memory_order_relaxed)) return true;
    return false;
  }

  bool stop() const {
    if (result_.value == s_.floor_value) return true;
    return earliest_optimal_ && earliest_optimal_->load(std::memory_order_relaxed) < stripe_;
  }

  void extend(int i, int used, int inside) {
    if (stop()) return;
    // Every completion has at least this many forward edges.
    if (pruned(inside + (s_.m - inside + 1) / 2)) return;
    if (i == s_.n) {
      QuotientValue q = order_blocks(*s_.h, colors_, used, false);
      int value = q.inside + q.cross;
      if (value < result_.value) {
        result_.value = value;
        result_.colors = colors_;
        if (global_best_) {
          int seen = global_best_->load();
          while (value < seen && !global_best_->compare_exchange_weak(seen, value)) {
          }
        }
        if (earliest_optimal_ && value == s_.floor_value) {
          int seen = earliest_optimal_->load();
          while (stripe_ < seen && !earliest_optimal_->compare_exchange_weak(seen, stripe_)) {
          }
        }
      }
      return;
    }
    for (int c = 0; c <= used && c < s_.n; ++c) {
      int added = std::popcount(s_.lower_adj[i] & members_[c]);
      members_[c] |= std::uint32_t{1} << i;
      colors_[i] = c;
      extend(i + 1, std::max(used, c + 1), inside + added);
      members_[c] &= ~(std::uint32_t{1} << i);
      if (stop()) return;
    }
  }

  const SearchState& s_;
  std::atomic<int>* global_best_;
  std::atomic<int>* earliest_optimal_;
  int stripe_;
  std::vector<int> colors_;
  std::vector<std::uint32_t> members_;
  StripeResult result_;
};

void restricted_growth_prefixes(int length, std::vector<int>& current, int used,
                                std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == length) {
    out.push_back(current);
    return;
  }
  for (int c = 0; c <= used; ++c) {
    current.push_back(c);
    restricted_growth_prefixes(length, current, std::max(used, c + 1), out);
    current.pop_back();
  }
}

}  // namespace

ColoringSkew coloring_skew(const Digraph& h, const Partition& c) {
  require_dag(h);
  if (c.num_vertices() != h.num_vertices())
    fail(ErrorKind::invalid_input, "coloring does not match the pattern's vertex count");
  if (c.num_blocks() > kMaxBlocks)
    fail(ErrorKind::size_limit, "coloring_skew supports at most 24 blocks");
  std::vector<int> owner = c.block_of();
  QuotientValue q = order_blocks(h, owner, c.num_blocks(), true);
  Permutation order = layout(h, c, q.block_order);
  return {q.inside + q.cross, std::move(q.block_order), std::move(order)};
}

SkewReport skewness_exact(const Digraph& h, Exec exec) {
  require_dag(h);
  const int n = h.num_vertices();
  if (n > kMaxExactVertices)
    fail(ErrorKind::size_limit, "skewness_exact supports at most 10 vertices; use skewness_upper_random");
  if (n == 0) return {0, Partition(0, {}), {}, Permutation::identity(0)};

  SearchState state;
  state.h = &h;
  state.n = n;
  state.m = static_cast<int>(h.num_edges());
  state.floor_value = (state.m + 1) / 2;
  state.lower_adj.assign(n, 0);
  for (const Edge& e : h.edges()) {
    auto [lo, hi] = std::minmax(e.from, e.to);
    state.lower_adj[hi] |= std::uint32_t{1} << lo;
  }

  StripeResult best;
  if (exec == Exec::serial) {
    PartitionSearch search(state, nullptr, nullptr, 0);
    std::vector<int> root{0};
    best = search.run(root);
  } else {
    std::vector<std::vector<int>> prefixes;
    std::vector<int> current{0};
    restricted_growth_prefixes(std::min(n, 5), current, 1, prefixes);
    std::vector<StripeResult> results(prefixes.size());
    std::atomic<int> global_best{std::numeric_limits<int>::max()};
    std::atomic<int> earliest_optimal{std::numeric_limits<int>::max()};
    const auto stripes = static_cast<std::int64_t>(prefixes.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < stripes; ++i) {
      PartitionSearch search(state, &global_best, &earliest_optimal, static_cast<int>(i));
      results[i] = search.run(prefixes[i]);
    }
    for (auto& r : results)
      if (r.value < best.value) best = std::move(r);
  }

  Partition coloring = Partition::from_colors(best.colors);
  ColoringSkew skew = coloring_skew(h, coloring);
  if (skew.value != best.value) throw std::logic_error("skewness witness does not replay");
  return {skew.value, std::move(coloring), std::move(skew.block_order), std::move(skew.order)};
}

int random_coloring_width(int m, int h) {
  if (h <= 0 || m <= 0) return 1;
  std::int64_t k = 1;
  while (k * k * k * k * k * h < m) ++k;
  return static_cast<int>(k);
}

RandomSkew skewness_upper_random(const Digraph& h, int trials, std::uint64_t seed) {
  require_dag(h);
  const int n = h.num_vertices();
  const int k0 = random_coloring_width(static_cast<int>(h.num_edges()), n);
  std::vector<int> widths{k0};
  for (int k = 2; k <= k0 + 2; ++k) widths.push_back(k);
  std::sort(widths.begin(), widths.end());
  widths.erase(std::unique(widths.begin(), widths.end()), widths.end());

  RandomSkew best{std::numeric_limits<int>::max(), Partition::single_block(n)};
  auto consider = [&](const std::vector<int>& colors) {
    Partition c = Partition::from_colors(colors);
    if (c.num_blocks() > kMaxBlocks) return;
    int value = coloring_skew(h, c).value;
    if (value < best.value) best = {value, std::move(c)};
  };
  std::vector<int> colors(n);
  std::vector<Vertex> shuffled(n);
  for (int k : widths) {
    for (int t = 0; t < trials; ++t) {
      Philox rng(seed, substream(0x5EED5EED, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(t)));
      for (int v = 0; v < n; ++v) colors[v] = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
      consider(colors);

      // Equal class sizes: a shuffled order dealt round-robin into k colors.
      Philox deal(seed, substream(0xE9A1C0DE, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(t)));
      std::iota(shuffled.begin(), shuffled.end(), 0);
      shuffle(std::span<Vertex>(shuffled), deal);
      for (int i = 0; i < n; ++i) colors[shuffled[i]] = i % k;
      consider(colors);
    }
  }
  if (best.value == std::numeric_limits<int>::max())
    best.value = coloring_skew(h, best.coloring).value;
  return best;
}

bool skew_bound_check(const Digraph& h) {
  const int m = static_cast<int>(h.num_edges());
  if (m == 0) return false;
  const int s = skewness_exact(h).value;
  return (m + 1) / 2 <= s && s <= m && ((s == m) == is_rooted_star(h));
}

nlohmann::json to_json(const Partition& partition) { return partition.blocks(); }

nlohmann::json to_json(const SkewReport& report) {
  std::vector<Vertex> order(report.order.order().begin(), report.order.order().end());
  return {{"skewness", report.value}, {"coloring", to_json(report.coloring)}, {"witness_order", order}};
}

}  // namespace dagcover
