#include "dagcover/covering.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "dagcover/error.hpp"
#include "dagcover/rng.hpp"
#include "embedding.hpp"

namespace dagcover {

namespace {

constexpr int kMaxPatternVertices = 10;

struct EdgeListHash {
  std::size_t operator()(const std::vector<Edge>& edges) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const Edge& e : edges) {
      h ^= static_cast<std::uint32_t>(e.from) * 0x9E3779B97F4A7C15ULL + static_cast<std::uint32_t>(e.to);
      h *= 0x100000001B3ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

using EdgeSetIndex = std::unordered_set<std::vector<Edge>, EdgeListHash>;

Copy make_copy(const Digraph& h, std::span<const Vertex> phi) {
  Copy copy;
  copy.embedding.assign(phi.begin(), phi.end());
  copy.edges.reserve(h.num_edges());
  for (const Edge& e : h.edges()) copy.edges.push_back({phi[e.from], phi[e.to]});
  std::sort(copy.edges.begin(), copy.edges.end());
  return copy;
}

void require_pattern_size(const Digraph& h) {
  if (h.num_vertices() > kMaxPatternVertices)
    fail(ErrorKind::size_limit, "patterns are limited to 10 vertices");
}

// Copies from one root image, deduplicated locally, at most `limit` of them.
struct RootBatch {
  std::vector<Copy> copies;
  bool hit_limit = false;
};

RootBatch copies_from_root(const Digraph& g, const Digraph& h, Vertex root, std::size_t limit) {
  detail::Embedder embedder(g, h);
  RootBatch batch;
  EdgeSetIndex seen;
  embedder.search_from(root, [&](std::span<const Vertex> phi) {
    Copy copy = make_copy(h, phi);
    if (!seen.insert(copy.edges).second) return true;
    if (batch.copies.size() == limit) {
      batch.hit_limit = true;
      return false;
    }
    batch.copies.push_back(std::move(copy));
    return true;
  });
  return batch;
}

bool edges_have_cycle(std::span<const Edge> edges) {
  std::vector<Vertex> ids;
  ids.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    ids.push_back(e.from);
    ids.push_back(e.to);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto label = [&](Vertex v) {
    return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  };
  const int k = static_cast<int>(ids.size());
  std::vector<std::vector<int>> out(k);
  std::vector<int> indegree(k, 0);
  for (const Edge& e : edges) {
    int a = label(e.from), b = label(e.to);
    out[a].push_back(b);
    ++indegree[b];
  }
  std::vector<int> ready;
  for (int v = 0; v < k; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  int done = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    ++done;
    for (int w : out[v])
      if (--indegree[w] == 0) ready.push_back(w);
  }
  return done != k;
}

bool contains_edge(const Copy& copy, const Edge& e) {
  return std::binary_search(copy.edges.begin(), copy.edges.end(), e);
}

std::vector<Vertex> vertex_set(const Copy& copy) {
  std::vector<Vertex> vs = copy.embedding;
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

std::uint64_t seeded_tag(std::uint64_t purpose) { return substream(0xC0FFEE, purpose); }

std::vector<std::size_t> seeded_order(std::size_t count, std::uint64_t seed, std::uint64_t purpose) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  Philox rng(seed, seeded_tag(purpose));
  shuffle(std::span<std::size_t>(order), rng);
  return order;
}

// Digraph with a maintained topological order (Pearce & Kelly 2006). Edge
// insertions that would close a cycle are refused and leave the order
// untouched.
class DynamicTopoOrder {
 public:
  explicit DynamicTopoOrder(int n) : ord_(n), out_(n), in_(n), mark_(n, 0) {
    std::iota(ord_.begin(), ord_.end(), 0);
  }

  // Adds all edges or none.
  bool try_add(std::span<const Edge> edges) {
    std::vector<Edge> added;
    for (const Edge& e : edges) {
      if (present_.count(key(e))) continue;
      if (!add_edge(e)) {
        for (auto it = added.rbegin(); it != added.rend(); ++it) remove_last(*it);
        return false;
      }
      added.push_back(e);
    }
    return true;
  }

  std::vector<Edge> edge_list() const {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < static_cast<Vertex>(out_.size()); ++u)
      for (Vertex v : out_[u]) edges.push_back({u, v});
    return edges;
  }

 private:
  static std::uint64_t key(const Edge& e) {
    return static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.from)) << 32 | static_cast<std::uint32_t>(e.to);
  }

  bool add_edge(const Edge& e) {
    const int lb = ord_[e.to], ub = ord_[e.from];
    if (lb < ub) {
      ++stamp_;
      std::vector<Vertex> forward, backward;
      if (!collect(e.to, ub, true, forward)) return false;
      collect(e.from, lb, false, backward);
      reorder(forward, backward);
    }
    out_[e.from].push_back(e.to);
    in_[e.to].push_back(e.from);
    present_.insert(key(e));
    return true;
  }

  // Edges of a refused batch were appended last, so they sit at the back.
  void remove_last(const Edge& e) {
    out_[e.from].pop_back();
    in_[e.to].pop_back();
    present_.erase(key(e));
  }

  // Forward: vertices reachable from `start` with ord < bound (false if the
  // vertex at ord == bound is reached). Backward: vertices reaching `start`
  // with ord > bound.
  bool collect(Vertex start, int bound, bool forward, std::vector<Vertex>& found) {
    std::vector<Vertex> stack{start};
    mark_[start] = stamp_;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      found.push_back(v);
      for (Vertex w : forward ? out_[v] : in_[v]) {
        if (forward && ord_[w] == bound) return false;
        bool inside = forward ? ord_[w] < bound : ord_[w] > bound;
        if (inside && mark_[w] != stamp_) {
          mark_[w] = stamp_;
          stack.push_back(w);
        }
      }
    }
    return true;
  }

  void reorder(std::vector<Vertex>& forward, std::vector<Vertex>& backward) {
    auto by_ord = [&](Vertex a, Vertex b) { return ord_[a] < ord_[b]; };
    std::sort(forward.begin(), forward.end(), by_ord);
    std::sort(backward.begin(), backward.end(), by_ord);
    std::vector<Vertex> vertices(backward);
    vertices.insert(vertices.end(), forward.begin(), forward.end());
    std::vector<int> slots;
    slots.reserve(vertices.size());
    for (Vertex v : vertices) slots.push_back(ord_[v]);
    std::sort(slots.begin(), slots.end());
    for (std::size_t i = 0; i < vertices.size(); ++i) ord_[vertices[i]] = slots[i];
  }

  std::vector<int> ord_;
  std::vector<std::vector<Vertex>> out_, in_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
  std::unordered_set<std::uint64_t> present_;
};

Permutation group_order(int n, std::span<const Edge> edges) {
  auto order = covering_order(n, edges);
  if (!order) fail(ErrorKind::invalid_input, "copies cannot be covered; is the pattern a dag?");
  return std::move(*order);
}

CoverSolution solution_from_groups(const CopySet& copies, const std::vector<int>& assignment, int groups) {
  std::vector<std::vector<Edge>> group_edges(groups);
  for (std::size_t i = 0; i < copies.copies.size(); ++i) {
    auto& target = group_edges[assignment[i]];
    target.insert(target.end(), copies.copies[i].edges.begin(), copies.copies[i].edges.end());
  }
  CoverSolution solution;
  solution.assignment = assignment;
  for (auto& edges : group_edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    solution.permutations.push_back(group_order(copies.host_vertices, edges));
  }
  return solution;
}

}  // namespace

// --- enumeration ------------------------------------------------------------

CopySet enumerate_copies(const Digraph& g, const Digraph& h, std::size_t cap, Exec exec) {
  require_pattern_size(h);
  CopySet result;
  result.host_vertices = g.num_vertices();
  if (h.num_vertices() == 0 || h.num_vertices() > g.num_vertices()) return result;

  EdgeSetIndex seen;
  // Returns false once the cap is exceeded.
  auto absorb = [&](Copy&& copy) {
    if (seen.count(copy.edges)) return true;
    if (result.copies.size() == cap) {
      result.truncated = true;
      return false;
    }
    seen.insert(copy.edges);
    result.copies.push_back(std::move(copy));
    return true;
  };

  const int n = g.num_vertices();
  if (exec == Exec::serial) {
    detail::Embedder embedder(g, h);
    embedder.search([&](std::span<const Vertex> phi) { return absorb(make_copy(h, phi)); });
    return result;
  }

  detail::Embedder probe(g, h);
  const int chunk = std::max(64, 16 * max_threads());
  for (int start = 0; start < n; start += chunk) {
    const int stop = std::min(n, start + chunk);
    std::vector<RootBatch> batches(stop - start);
    const std::size_t limit = cap + 1;
#pragma omp parallel for schedule(dynamic, 1)
    for (int x = start; x < stop; ++x)
      if (probe.root_feasible(x)) batches[x - start] = copies_from_root(g, h, x, limit);
    for (int x = start; x < stop; ++x) {
      RootBatch& batch = batches[x - start];
      bool open = true;
      for (Copy& copy : batch.copies)
        if (!(open = absorb(std::move(copy)))) break;
      if (!open) return result;
      if (batch.hit_limit) {
        // The local list was cut short; finish this root sequentially against
        // the global index.
        detail::Embedder embedder(g, h);
        bool complete = embedder.search_from(x, [&](std::span<const Vertex> phi) {
          return absorb(make_copy(h, phi));
        });
        if (!complete) return result;
      }
    }
  }
  return result;
}

UnionGraph union_copy_graph(const CopySet& copies) {
  std::vector<Edge> edges;
  for (const Copy& c : copies.copies) edges.insert(edges.end(), c.edges.begin(), c.edges.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return {Digraph(copies.host_vertices, std::move(edges)), copies.truncated};
}

UnionGraph union_copy_graph(const Digraph& g, const Digraph& h, std::size_t cap) {
  return union_copy_graph(enumerate_copies(g, h, cap));
}

TauOneResult tau_le_one(const Digraph& g, const Digraph& h, std::size_t cap) {
  UnionGraph gh = union_copy_graph(g, h, cap);
  TauOneResult result;
  result.truncated = gh.truncated;
  if (auto order = covering_order(gh.graph.num_vertices(), gh.graph.edges())) {
    result.holds = true;
    result.cover = std::move(order);
  } else {
    result.cycle = shortest_directed_cycle(gh.graph);
  }
  return result;
}

// --- compatibility ----------------------------------------------------------

bool compatible(const CopySet& copies, std::span<const std::size_t> indices) {
  std::vector<Edge> edges;
  for (std::size_t i : indices) {
    const auto& c = copies.copies.at(i).edges;
    edges.insert(edges.end(), c.begin(), c.end());
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return !edges_have_cycle(edges);
}

bool conflict(const Copy& a, const Copy& b) {
  std::vector<Edge> edges;
  std::set_union(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(), std::back_inserter(edges));
  return edges_have_cycle(edges);
}

bool verify_cover(const CopySet& copies, const CoverSolution& solution) {
  if (solution.assignment.size() != copies.copies.size()) return false;
  for (std::size_t i = 0; i < copies.copies.size(); ++i) {
    int k = solution.assignment[i];
    if (k < 0 || k >= static_cast<int>(solution.permutations.size())) return false;
    const Permutation& p = solution.permutations[k];
    if (p.size() != copies.host_vertices) return false;
    const auto& edges = copies.copies[i].edges;
    if (forward_count(edges, p) != static_cast<int>(edges.size())) return false;
  }
  return true;
}

// --- tau bounds -------------------------------------------------------------

CoverSolution tau_greedy(const CopySet& copies, std::uint64_t seed) {
  const std::size_t count = copies.copies.size();
  std::vector<std::size_t> order = seeded_order(count, seed, 1);
  std::vector<DynamicTopoOrder> groups;
  std::vector<int> assignment(count, -1);
  for (std::size_t i : order) {
    const auto& edges = copies.copies[i].edges;
    int placed = -1;
    for (std::size_t gi = 0; gi < groups.size() && placed < 0; ++gi)
      if (groups[gi].try_add(edges)) placed = static_cast<int>(gi);
    if (placed < 0) {
      groups.emplace_back(copies.host_vertices);
      if (!groups.back().try_add(edges))
        fail(ErrorKind::invalid_input, "a copy contains a directed cycle; is the pattern a dag?");
      placed = static_cast<int>(groups.size()) - 1;
    }
    assignment[i] = placed;
  }
  return solution_from_groups(copies, assignment, static_cast<int>(groups.size()));
}

int tau_lower_clique(const CopySet& copies, std::uint64_t seed) {
  const std::size_t count = copies.copies.size();
  if (count == 0) return 0;
  std::vector<std::size_t> order = seeded_order(count, seed, 2);
  std::vector<std::size_t> rank(count);
  for (std::size_t i = 0; i < count; ++i) rank[order[i]] = i;

  // Conflicting copies share at least two vertices, so candidates come from
  // a vertex-pair index.
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_pair;
  std::vector<std::vector<std::uint64_t>> pairs_of(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto vs = vertex_set(copies.copies[i]);
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b) {
        std::uint64_t key = static_cast<std::uint64_t>(vs[a]) << 32 | static_cast<std::uint32_t>(vs[b]);
        by_pair[key].push_back(i);
        pairs_of[i].push_back(key);
      }
  }

  int best = 1;
  std::vector<std::size_t> candidates, clique;
  for (std::size_t start : order) {
    candidates.clear();
    for (std::uint64_t key : pairs_of[start])
      for (std::size_t other : by_pair[key])
        if (other != start) candidates.push_back(other);
    if (static_cast<int>(candidates.size()) + 1 <= best) continue;
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    clique.assign(1, start);
    for (std::size_t c : candidates) {
      bool fits = true;
      for (std::size_t member : clique)
        if (!conflict(copies.copies[c], copies.copies[member])) {
          fits = false;
          break;
        }
      if (fits) clique.push_back(c);
    }
    best = std::max(best, static_cast<int>(clique.size()));
  }
  return best;
}

namespace {

// Group state for the exact search over relabelled host vertices.
class ExactGroup {
 public:
  explicit ExactGroup(int k) : k_(k), words_((k + 63) / 64), adj_(std::size_t(k) * words_, 0) {}

  bool try_add(const std::vector<std::pair<int, int>>& edges, std::vector<std::pair<int, int>>& fresh) {
    fresh.clear();
    for (auto [a, b] : edges)
      if (mult_[key(a, b)]++ == 0) {
        adj_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
        fresh.push_back({a, b});
      }
    for (auto [a, b] : fresh)
      if (reaches(b, a)) {
        remove(edges);
        return false;
      }
    return true;
  }

  void remove(const std::vector<std::pair<int, int>>& edges) {
    for (auto [a, b] : edges)
      if (--mult_[key(a, b)] == 0) adj_[a * words_ + b / 64] &= ~(std::uint64_t{1} << (b % 64));
  }

 private:
  std::uint64_t key(int a, int b) const { return static_cast<std::uint64_t>(a) * k_ + b; }

  bool reaches(int from, int to) {
    visited_.assign(words_, 0);
    stack_.assign(1, from);
    visited_[from / 64] |= std::uint64_t{1} << (from % 64);
    while (!stack_.empty()) {
      int v = stack_.back();
      stack_.pop_back();
      if (v == to) return true;
      for (int w = 0; w < words_; ++w) {
        std::uint64_t fresh = adj_[v * words_ + w] & ~visited_[w];
        visited_[w] |= fresh;
        for (; fresh; fresh &= fresh - 1) stack_.push_back(w * 64 + std::countr_zero(fresh));
      }
    }
    return false;
  }

  int k_, words_;
  std::unordered_map<std::uint64_t, int> mult_;
  std::vector<std::uint64_t> adj_;
  std::vector<std::uint64_t> visited_;
  std::vector<int> stack_;
};

class ExactTau {
 public:
  ExactTau(const CopySet& copies, std::uint64_t budget) : copies_(copies), budget_(budget) {
    std::vector<Vertex> ids;
    for (const Copy& c : copies.copies)
      for (const Edge& e : c.edges) {
        ids.push_back(e.from);
        ids.push_back(e.to);
      }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    k_ = static_cast<int>(ids.size());
    if (k_ > 4096) fail(ErrorKind::size_limit, "tau_exact supports copies touching at most 4096 vertices");
    for (const Copy& c : copies.copies) {
      std::vector<std::pair<int, int>> local;
      for (const Edge& e : c.edges) {
        int a = static_cast<int>(std::lower_bound(ids.begin(), ids.end(), e.from) - ids.begin());
        int b = static_cast<int>(std::lower_bound(ids.begin(), ids.end(), e.to) - ids.begin());
        local.push_back({a, b});
      }
      local_.push_back(std::move(local));
    }
  }

  // Largest clique found by greedy growth from every start, candidates in
  // decreasing conflict degree.
  std::vector<std::size_t> conflict_clique() {
    const std::size_t count = copies_.copies.size();
    conflicts_.assign(count * count, 0);
    std::vector<int> degree(count, 0);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = i + 1; j < count; ++j)
        if (conflict(copies_.copies[i], copies_.copies[j])) {
          conflicts_[i * count + j] = conflicts_[j * count + i] = 1;
          ++degree[i];
          ++degree[j];
        }
    std::vector<std::size_t> by_degree(count);
    std::iota(by_degree.begin(), by_degree.end(), 0);
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
    degree_order_ = by_degree;
    std::vector<std::size_t> best;
    for (std::size_t start : by_degree) {
      if (degree[start] + 1 <= static_cast<int>(best.size())) continue;
      std::vector<std::size_t> clique{start};
      for (std::size_t c : by_degree) {
        if (c == start) continue;
        bool fits = std::all_of(clique.begin(), clique.end(),
                                [&](std::size_t m) { return conflicts_[c * count + m]; });
        if (fits) clique.push_back(c);
      }
      if (clique.size() > best.size()) best = std::move(clique);
    }
    return best;
  }

  TauExact solve(std::uint64_t seed) {
    const std::size_t count = copies_.copies.size();
    TauExact out;
    if (count == 0) {
      out.exact = true;
      return out;
    }
    std::vector<std::size_t> clique = conflict_clique();
    lower_ = static_cast<int>(clique.size());

    CoverSolution greedy = tau_greedy(copies_, seed);
    best_groups_ = static_cast<int>(greedy.permutations.size());
    best_assignment_ = greedy.assignment;

    if (best_groups_ > lower_) {
      // Clique members first (they open distinct groups), then by degree.
      std::vector<char> taken(count, 0);
      for (std::size_t c : clique) {
        order_.push_back(c);
        taken[c] = 1;
      }
      for (std::size_t c : degree_order_)
        if (!taken[c]) order_.push_back(c);
      assignment_.assign(count, -1);
      dfs(0);
    }

    out.exact = !exhausted_;
    out.lower = out.exact ? best_groups_ : lower_;
    out.upper = best_groups_;
    out.solution = solution_from_groups(copies_, best_assignment_, best_groups_);
    return out;
  }

 private:
  bool fits(std::size_t copy, int g) {
    ++work_;
    if (!groups_[g].try_add(local_[copy], fresh_)) return false;
    groups_[g].remove(local_[copy]);
    return true;
  }

  // Branch on the unassigned copy that fits the fewest open groups. Copies
  // fitting none must open new groups, and pairwise-conflicting ones need
  // one each, so a greedy clique among them bounds the groups still to open.
  void dfs(std::size_t assigned) {
    if (exhausted_ || best_groups_ == lower_) return;
    if (++work_ > budget_) {
      exhausted_ = true;
      return;
    }
    const int open = static_cast<int>(groups_.size());
    if (std::max(open, lower_) >= best_groups_) return;
    const std::size_t count = order_.size();
    if (assigned == count) {
      best_groups_ = open;
      best_assignment_ = assignment_;
      return;
    }

    std::size_t pick = count;
    int pick_domain = open + 1;
    std::vector<std::size_t> stranded;
    for (std::size_t copy : order_) {
      if (assignment_[copy] >= 0) continue;
      int domain = 0;
      for (int g = 0; g < open && domain < std::max(pick_domain, 1); ++g) domain += fits(copy, g);
      if (domain == 0) stranded.push_back(copy);
      if (domain < pick_domain) {
        pick = copy;
        pick_domain = domain;
      }
    }
    if (!stranded.empty()) {
      std::vector<std::size_t> clique;
      for (std::size_t c : stranded) {
        ++work_;
        if (std::all_of(clique.begin(), clique.end(), [&](std::size_t m) { return conflicts_[c * count + m]; }))
          clique.push_back(c);
      }
      if (open + static_cast<int>(clique.size()) >= best_groups_) return;
    }

    for (int g = 0; g < open; ++g) {
      if (!groups_[g].try_add(local_[pick], fresh_)) continue;
      assignment_[pick] = g;
      dfs(assigned + 1);
      groups_[g].remove(local_[pick]);
      assignment_[pick] = -1;
      if (exhausted_ || best_groups_ == lower_) return;
    }
    // Opening a group only helps if it still beats the incumbent.
    if (open + 1 < best_groups_) {
      groups_.emplace_back(k_);
      groups_.back().try_add(local_[pick], fresh_);
      assignment_[pick] = open;
      dfs(assigned + 1);
      assignment_[pick] = -1;
      groups_.pop_back();
    }
  }

  const CopySet& copies_;
  std::uint64_t budget_;
  std::uint64_t work_ = 0;
  bool exhausted_ = false;
  int k_ = 0;
  int lower_ = 0;
  int best_groups_ = 0;
  std::vector<std::vector<std::pair<int, int>>> local_;
  std::vector<char> conflicts_;
  std::vector<std::size_t> degree_order_;
  std::vector<std::size_t> order_;
  std::vector<int> assignment_;
  std::vector<int> best_assignment_;
  std::vector<ExactGroup> groups_;
  std::vector<std::pair<int, int>> fresh_;
};

}  // namespace

TauExact tau_exact(const CopySet& copies, std::uint64_t seed, std::uint64_t node_budget) {
  if (copies.copies.size() > 4096) fail(ErrorKind::size_limit, "tau_exact supports at most 4096 copies");
  ExactTau search(copies, node_budget);
  return search.solve(seed);
}

// --- consistent sets --------------------------------------------------------

namespace {

std::vector<Vertex> restrict_to(const Permutation& p, const std::vector<char>& member) {
  std::vector<Vertex> out;
  for (Vertex v : p.order())
    if (member[v]) out.push_back(v);
  return out;
}

// Two sets of floor(|ground| / 2^x) vertices each, consistent with perms.
std::pair<std::vector<Vertex>, std::vector<Vertex>> halve(const std::vector<Vertex>& ground,
                                                          std::span<const Permutation> perms) {
  const int n = perms.front().size();
  std::vector<char> member(n, 0);
  for (Vertex v : ground) member[v] = 1;
  std::vector<Vertex> sigma = restrict_to(perms.front(), member);
  std::size_t size = sigma.size() / 2;
  std::vector<Vertex> first(sigma.begin(), sigma.begin() + size);
  std::vector<Vertex> second(sigma.end() - size, sigma.end());

  std::vector<int> side(n, 0);  // 1: first set, 2: second set
  for (std::size_t i = 1; i < perms.size(); ++i) {
    std::fill(member.begin(), member.end(), 0);
    for (Vertex v : first) member[v] = 1, side[v] = 1;
    for (Vertex v : second) member[v] = 1, side[v] = 2;
    sigma = restrict_to(perms[i], member);
    // C = sigma[0, size), D = sigma[size, 2 size).
    std::size_t first_in_c = 0;
    for (std::size_t j = 0; j < size; ++j) first_in_c += side[sigma[j]] == 1;
    const std::size_t next = size / 2;
    const bool keep_first_in_c = first_in_c >= next;
    std::vector<Vertex> new_first, new_second;
    for (std::size_t j = 0; j < sigma.size(); ++j) {
      bool in_c = j < size;
      Vertex v = sigma[j];
      if (side[v] == 1 && in_c == keep_first_in_c && new_first.size() < next) new_first.push_back(v);
      if (side[v] == 2 && in_c != keep_first_in_c && new_second.size() < next) new_second.push_back(v);
    }
    for (Vertex v : first) side[v] = 0;
    for (Vertex v : second) side[v] = 0;
    first = std::move(new_first);
    second = std::move(new_second);
    size = next;
  }
  return {std::move(first), std::move(second)};
}

}  // namespace

ConsistentFamily consistent_sets(std::span<const Permutation> perms, int t) {
  if (perms.empty()) fail(ErrorKind::invalid_input, "consistent_sets needs at least one permutation");
  if (t < 1 || t > 20) fail(ErrorKind::invalid_input, "consistent_sets needs 1 <= t <= 20");
  const int n = perms.front().size();
  for (const Permutation& p : perms)
    if (p.size() != n) fail(ErrorKind::invalid_input, "permutations have different lengths");
  const int r = 1 << t;
  const int x = static_cast<int>(perms.size());

  std::int64_t block = 1;  // r^x, saturated just above n
  for (int i = 0; i < x && block <= n; ++i) block *= r;
  if (block > n)
    fail(ErrorKind::infeasible_size, "need n >= r^x (n = " + std::to_string(n) + ", r = " +
                                         std::to_string(r) + ", x = " + std::to_string(x) + ")");

  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<Vertex>> sets{all};
  for (int level = 0; level < t; ++level) {
    std::vector<std::vector<Vertex>> next;
    for (const auto& ground : sets) {
      auto [b, c] = halve(ground, perms);
      next.push_back(std::move(b));
      next.push_back(std::move(c));
    }
    sets = std::move(next);
  }
  for (auto& s : sets) std::sort(s.begin(), s.end());
  ConsistentFamily family{std::move(sets), r, x};
  if (!verify_consistent(perms, family)) throw std::logic_error("consistent_sets produced an inconsistent family");
  return family;
}

bool verify_consistent(std::span<const Permutation> perms, const ConsistentFamily& family) {
  const auto& sets = family.sets;
  std::unordered_set<Vertex> seen;
  for (const auto& s : sets) {
    if (s.empty()) return false;
    for (Vertex v : s)
      if (!seen.insert(v).second) return false;
  }
  for (const Permutation& p : perms) {
    std::vector<std::pair<int, int>> span(sets.size());
    for (std::size_t j = 0; j < sets.size(); ++j) {
      int lo = std::numeric_limits<int>::max(), hi = -1;
      for (Vertex v : sets[j]) {
        if (v < 0 || v >= p.size()) return false;
        lo = std::min(lo, p.position(v));
        hi = std::max(hi, p.position(v));
      }
      span[j] = {lo, hi};
    }
    for (std::size_t a = 0; a < sets.size(); ++a)
      for (std::size_t b = a + 1; b < sets.size(); ++b)
        if (!(span[a].second < span[b].first || span[b].second < span[a].first)) return false;
  }
  return true;
}

// --- constrained embeddings -------------------------------------------------

namespace {

std::vector<int> host_regions(int n, std::span<const std::vector<Vertex>> tuple) {
  std::vector<int> region(n, -1);
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (Vertex v : tuple[i]) {
      if (v < 0 || v >= n) fail(ErrorKind::invalid_input, "tuple vertex out of range");
      if (region[v] != -1) fail(ErrorKind::invalid_input, "tuple sets must be disjoint");
      region[v] = static_cast<int>(i);
    }
  return region;
}

std::optional<Copy> first_copy(const Digraph& g, const Digraph& h, const detail::RegionConstraint& constraint) {
  detail::Embedder embedder(g, h, &constraint);
  std::optional<Copy> found;
  embedder.search([&](std::span<const Vertex> phi) {
    found = make_copy(h, phi);
    return false;
  });
  return found;
}

}  // namespace

std::optional<Copy> find_consistent_copy(const Digraph& g, const Digraph& h, const Partition& coloring,
                                         std::span<const std::vector<Vertex>> tuple, std::span<const int> slot) {
  require_pattern_size(h);
  if (coloring.num_vertices() != h.num_vertices())
    fail(ErrorKind::invalid_input, "coloring does not match the pattern");
  const int blocks = coloring.num_blocks();
  if (blocks > static_cast<int>(tuple.size())) fail(ErrorKind::invalid_input, "more color classes than tuple sets");
  detail::RegionConstraint constraint;
  constraint.block_of_pattern = coloring.block_of();
  constraint.region_of_host = host_regions(g.num_vertices(), tuple);
  constraint.fixed_region.resize(blocks);
  std::vector<char> taken(tuple.size(), 0);
  for (int b = 0; b < blocks; ++b) {
    int target = slot.empty() ? b : slot[b];
    if (target < 0 || target >= static_cast<int>(tuple.size()) || taken[target])
      fail(ErrorKind::invalid_input, "slots must be distinct tuple indices");
    taken[target] = 1;
    constraint.fixed_region[b] = target;
  }
  return first_copy(g, h, constraint);
}

PipelineResult skew_witness_pipeline(const Digraph& g, const Digraph& h, std::span<const Permutation> perms) {
  require_pattern_size(h);
  if (is_rooted_star(h)) fail(ErrorKind::invalid_input, "the pipeline needs a pattern that is not a rooted star");
  SkewReport skew = skewness_exact(h);
  PipelineResult result;
  result.skewness = skew.value;
  result.coloring = skew.coloring;

  if (perms.empty()) {
    CopySet any = enumerate_copies(g, h, 1, Exec::serial);
    if (!any.copies.empty()) result.copy = std::move(any.copies.front());
    return result;
  }
  for (const Permutation& p : perms)
    if (p.size() != g.num_vertices()) fail(ErrorKind::invalid_input, "permutation length does not match host");

  int t = 1;
  while ((1 << t) < skew.coloring.num_blocks()) ++t;
  result.family = consistent_sets(perms, t);

  detail::RegionConstraint constraint;
  constraint.block_of_pattern = skew.coloring.block_of();
  constraint.fixed_region.assign(skew.coloring.num_blocks(), -1);
  constraint.region_of_host = host_regions(g.num_vertices(), result.family.sets);
  result.copy = first_copy(g, h, constraint);
  if (result.copy) {
    for (const Permutation& p : perms) result.profile.push_back(forward_count(result.copy->edges, p));
    for (int value : result.profile)
      if (value > result.skewness) throw std::logic_error("pipeline copy exceeds the skewness bound");
  }
  return result;
}

std::optional<CycleConfiguration> extract_cycle_configuration(const CopySet& copies) {
  UnionGraph gh = union_copy_graph(copies);
  auto cycle = shortest_directed_cycle(gh.graph);
  if (!cycle) return std::nullopt;
  std::vector<Edge> cycle_edges;
  for (std::size_t i = 0; i < cycle->size(); ++i)
    cycle_edges.push_back({(*cycle)[i], (*cycle)[(i + 1) % cycle->size()]});

  std::vector<std::size_t> chosen;
  for (const Edge& e : cycle_edges) {
    bool covered = std::any_of(chosen.begin(), chosen.end(),
                               [&](std::size_t c) { return contains_edge(copies.copies[c], e); });
    if (covered) continue;
    for (std::size_t i = 0; i < copies.copies.size(); ++i)
      if (contains_edge(copies.copies[i], e)) {
        chosen.push_back(i);
        break;
      }
  }
  // Drop copies whose cycle edges are all owned by the others.
  for (std::size_t k = 0; k < chosen.size();) {
    bool redundant = std::all_of(cycle_edges.begin(), cycle_edges.end(), [&](const Edge& e) {
      for (std::size_t j = 0; j < chosen.size(); ++j)
        if (j != k && contains_edge(copies.copies[chosen[j]], e)) return true;
      return false;
    });
    if (redundant)
      chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(k));
    else
      ++k;
  }
  return CycleConfiguration{std::move(*cycle), std::move(chosen)};
}

nlohmann::json to_json(const CoverSolution& solution) {
  nlohmann::json perms = nlohmann::json::array();
  for (const Permutation& p : solution.permutations)
    perms.push_back(std::vector<int>(p.positions().begin(), p.positions().end()));
  return {{"tau", solution.permutations.size()}, {"perms", std::move(perms)}, {"assignment", solution.assignment}};
}

nlohmann::json to_json(const ConsistentFamily& family) { return {{"sets", family.sets}}; }

}  // namespace dagcover
