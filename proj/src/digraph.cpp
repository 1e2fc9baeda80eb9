#include "dagcover/digraph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <queue>
#include <string>

#include "dagcover/error.hpp"

namespace dagcover {

namespace {

void build_csr(int n, std::span<const Edge> edges, bool outgoing,
               std::vector<std::uint32_t>& offset, std::vector<Vertex>& adj) {
  offset.assign(n + 1, 0);
  for (const Edge& e : edges) ++offset[(outgoing ? e.from : e.to) + 1];
  for (int v = 0; v < n; ++v) offset[v + 1] += offset[v];
  adj.resize(edges.size());
  std::vector<std::uint32_t> cursor(offset.begin(), offset.end() - 1);
  for (const Edge& e : edges) {
    if (outgoing)
      adj[cursor[e.from]++] = e.to;
    else
      adj[cursor[e.to]++] = e.from;
  }
  // Edges are sorted by (from, to), so out-lists come out sorted; in-lists
  // are filled in increasing `from` order and are sorted as well.
}

}  // namespace

Digraph::Digraph(int n) : Digraph(n, {}) {}

Digraph::Digraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) fail(ErrorKind::invalid_input, "negative vertex count");
  for (const Edge& e : edges_) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
      fail(ErrorKind::invalid_input, "edge (" + std::to_string(e.from) + "," +
                                         std::to_string(e.to) + ") out of range");
    if (e.from == e.to)
      fail(ErrorKind::invalid_input, "self-loop at vertex " + std::to_string(e.from));
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end())
    fail(ErrorKind::invalid_input, "duplicate edge (" + std::to_string(dup->from) +
                                       "," + std::to_string(dup->to) + ")");

  build_csr(n, edges_, true, out_offset_, out_adj_);
  build_csr(n, edges_, false, in_offset_, in_adj_);

  words_per_row_ = (static_cast<std::size_t>(n) + 63) / 64;
  bits_.assign(words_per_row_ * static_cast<std::size_t>(n), 0);
  for (const Edge& e : edges_)
    bits_[e.from * words_per_row_ + e.to / 64] |= std::uint64_t{1} << (e.to % 64);
}

bool Digraph::has_edge(Vertex u, Vertex v) const noexcept {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return (bits_[u * words_per_row_ + v / 64] >> (v % 64)) & 1U;
}

std::span<const Vertex> Digraph::out_neighbors(Vertex v) const noexcept {
  return {out_adj_.data() + out_offset_[v], out_adj_.data() + out_offset_[v + 1]};
}

std::span<const Vertex> Digraph::in_neighbors(Vertex v) const noexcept {
  return {in_adj_.data() + in_offset_[v], in_adj_.data() + in_offset_[v + 1]};
}

int Digraph::out_degree(Vertex v) const noexcept {
  return static_cast<int>(out_offset_[v + 1] - out_offset_[v]);
}

int Digraph::in_degree(Vertex v) const noexcept {
  return static_cast<int>(in_offset_[v + 1] - in_offset_[v]);
}

int Digraph::num_non_isolated() const noexcept {
  int count = 0;
  for (Vertex v = 0; v < n_; ++v)
    if (out_degree(v) + in_degree(v) > 0) ++count;
  return count;
}

Digraph Digraph::induced(std::span<const Vertex> vertices) const {
  std::vector<int> label(n_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] < 0 || vertices[i] >= n_ || label[vertices[i]] != -1)
      fail(ErrorKind::invalid_input, "induced: bad vertex list");
    label[vertices[i]] = static_cast<int>(i);
  }
  std::vector<Edge> sub;
  for (const Edge& e : edges_)
    if (label[e.from] >= 0 && label[e.to] >= 0) sub.push_back({label[e.from], label[e.to]});
  return Digraph(static_cast<int>(vertices.size()), std::move(sub));
}

// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<Vertex> order) : order_(std::move(order)) {
  const int n = static_cast<int>(order_.size());
  position_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    Vertex v = order_[i];
    if (v < 0 || v >= n || position_[v] != -1)
      fail(ErrorKind::invalid_input, "not a permutation of 0.." + std::to_string(n - 1));
    position_[v] = i;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  return Permutation(std::move(order));
}

Permutation Permutation::from_positions(std::span<const int> positions) {
  const int n = static_cast<int>(positions.size());
  std::vector<Vertex> order(n, -1);
  for (int v = 0; v < n; ++v) {
    int pos = positions[v];
    if (pos < 0 || pos >= n || order[pos] != -1)
      fail(ErrorKind::invalid_input, "positions do not form a permutation");
    order[pos] = v;
  }
  return Permutation(std::move(order));
}

Permutation Permutation::reversed() const {
  return Permutation(std::vector<Vertex>(order_.rbegin(), order_.rend()));
}

Permutation reverse(const Permutation& p) { return p.reversed(); }

EdgeSplit split(const Digraph& g, const Permutation& p) {
  if (p.size() != g.num_vertices())
    fail(ErrorKind::invalid_input, "permutation length " + std::to_string(p.size()) +
                                       " does not match vertex count " +
                                       std::to_string(g.num_vertices()));
  std::vector<Edge> left, right;
  for (const Edge& e : g.edges())
    (p.position(e.from) < p.position(e.to) ? left : right).push_back(e);
  return {Digraph(g.num_vertices(), std::move(left)),
          Digraph(g.num_vertices(), std::move(right))};
}

std::optional<Permutation> topological_order(const Digraph& g) {
  const int n = g.num_vertices();
  std::vector<int> indegree(n);
  for (Vertex v = 0; v < n; ++v) indegree[v] = g.in_degree(v);
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::vector<Vertex> order;
  order.reserve(n);
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (Vertex w : g.out_neighbors(v))
      if (--indegree[w] == 0) ready.push(w);
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return Permutation(std::move(order));
}

bool is_dag(const Digraph& g) { return topological_order(g).has_value(); }

int forward_count(std::span<const Edge> edges, const Permutation& p) {
  int count = 0;
  for (const Edge& e : edges)
    if (p.position(e.from) < p.position(e.to)) ++count;
  return count;
}

std::optional<std::vector<Vertex>> shortest_directed_cycle(const Digraph& g) {
  const int n = g.num_vertices();
  std::vector<int> dist(n), parent(n);
  std::vector<Vertex> queue;
  queue.reserve(n);
  int best_len = n + 1;
  std::vector<Vertex> best;

  for (Vertex s = 0; s < n; ++s) {
    if (g.in_degree(s) == 0 || g.out_degree(s) == 0) continue;
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    queue.assign(1, s);
    // Closing edge (u, s) with the smallest dist[u] gives the shortest cycle
    // through s. BFS can stop once the frontier cannot beat best_len.
    Vertex closing = -1;
    for (std::size_t head = 0; head < queue.size() && closing < 0; ++head) {
      Vertex u = queue[head];
      if (dist[u] + 1 >= best_len) break;
      for (Vertex w : g.out_neighbors(u)) {
        if (w == s) {
          closing = u;
          break;
        }
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        }
      }
    }
    if (closing < 0) continue;
    std::vector<Vertex> cycle;
    for (Vertex v = closing; v != s; v = parent[v]) cycle.push_back(v);
    cycle.push_back(s);
    std::reverse(cycle.begin(), cycle.end());
    best_len = static_cast<int>(cycle.size());
    best = std::move(cycle);
    if (best_len == 2) break;
  }
  if (best.empty()) return std::nullopt;
  return best;
}

Digraph make_transitive_tournament(int h) {
  if (h < 1) fail(ErrorKind::invalid_input, "transitive tournament needs h >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j) edges.push_back({i, j});
  return Digraph(h, std::move(edges));
}

Digraph make_rooted_star(int h, StarRoot root) {
  if (h < 2) fail(ErrorKind::invalid_input, "rooted star needs h >= 2");
  std::vector<Edge> edges;
  for (int leaf = 1; leaf < h; ++leaf)
    edges.push_back(root == StarRoot::source ? Edge{0, leaf} : Edge{leaf, 0});
  return Digraph(h, std::move(edges));
}

Digraph make_directed_path(int length) {
  if (length < 1) fail(ErrorKind::invalid_input, "path needs length >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < length; ++i) edges.push_back({i, i + 1});
  return Digraph(length + 1, std::move(edges));
}

Digraph make_complete_digraph(int n) {
  if (n < 1) fail(ErrorKind::invalid_input, "complete digraph needs n >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) edges.push_back({i, j});
  return Digraph(n, std::move(edges));
}

bool is_rooted_star(const Digraph& g) {
  auto edges = g.edges();
  if (edges.empty()) return false;
  for (Vertex center : {edges.front().from, edges.front().to}) {
    bool all_out = true, all_in = true;
    for (const Edge& e : edges) {
      all_out = all_out && e.from == center;
      all_in = all_in && e.to == center;
    }
    if (all_out || all_in) return true;
  }
  return false;
}

std::optional<Permutation> covering_order(int n, std::span<const Edge> edges) {
  std::vector<int> indegree(n, 0);
  std::vector<char> touched(n, 0);
  std::vector<std::vector<Vertex>> out(n);
  for (const Edge& e : edges) {
    out[e.from].push_back(e.to);
    ++indegree[e.to];
    touched[e.from] = touched[e.to] = 1;
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  int touched_count = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (!touched[v]) continue;
    ++touched_count;
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<Vertex> order;
  order.reserve(n);
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (Vertex w : out[v])
      if (--indegree[w] == 0) ready.push(w);
  }
  if (static_cast<int>(order.size()) != touched_count) return std::nullopt;
  for (Vertex v = 0; v < n; ++v)
    if (!touched[v]) order.push_back(v);
  return Permutation(std::move(order));
}

}  // namespace dagcover
