#include "dagcover/density.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>
#include <string>

#include "dagcover/error.hpp"
#include "maxflow.hpp"

namespace dagcover {

UndirectedGraph::UndirectedGraph(int n, std::vector<std::pair<Vertex, Vertex>> edges)
    : n_(n), edges_(std::move(edges)) {
  for (auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= n || v >= n) fail(ErrorKind::invalid_input, "edge out of range");
    if (u == v) fail(ErrorKind::invalid_input, "self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    fail(ErrorKind::invalid_input, "duplicate undirected edge");
}

bool UndirectedGraph::has_isolated_vertex() const {
  std::vector<char> touched(n_, 0);
  for (auto [u, v] : edges_) touched[u] = touched[v] = 1;
  return std::find(touched.begin(), touched.end(), 0) != touched.end();
}

namespace {

// Both graph flavours reduce to a vertex count and a list of edge endpoints.
struct EdgeEnds {
  int n = 0;
  std::vector<std::pair<Vertex, Vertex>> ends;
};

EdgeEnds ends_of(const Digraph& g) {
  EdgeEnds out{g.num_vertices(), {}};
  for (const Edge& e : g.edges()) out.ends.emplace_back(e.from, e.to);
  return out;
}

EdgeEnds ends_of(const UndirectedGraph& g) { return {g.num_vertices(), g.edges()}; }

void require_defined(const EdgeEnds& g) {
  if (g.n < 2 || g.ends.empty())
    fail(ErrorKind::undefined_parameter, "density parameters need >= 2 vertices and >= 1 edge");
}

std::int64_t count_inside(const EdgeEnds& g, const std::vector<char>& in_set) {
  std::int64_t count = 0;
  for (auto [u, v] : g.ends)
    if (in_set[u] && in_set[v]) ++count;
  return count;
}

Ratio subset_ratio(std::int64_t edges, std::int64_t size, DensityKind kind) {
  return Ratio(edges, kind == DensityKind::arboricity ? size - 1 : size);
}

bool whole_graph_attains(const EdgeEnds& g, const Ratio& value, DensityKind kind) {
  return value == subset_ratio(static_cast<std::int64_t>(g.ends.size()), g.n, kind);
}

struct Improvement {
  std::int64_t gain;  // q*e(S) - p*(|S| - offset), scaled by the ratio's denominator
  std::vector<Vertex> subset;
};

// Finds a subset maximizing q*e(S) - p*|S| (density) or, over S containing
// `forced`, q*e(S) - p*(|S|-1) (arboricity), via one min cut on the
// edge/vertex network: source -> edge node (q), edge node -> endpoints (inf),
// vertex -> sink (p).
Improvement best_cut(const EdgeEnds& g, const Ratio& lambda, std::optional<Vertex> forced) {
  const int m = static_cast<int>(g.ends.size());
  const int source = 0, sink = 1, first_edge = 2, first_vertex = 2 + m;
  const std::int64_t p = lambda.num(), q = lambda.den();
  detail::MaxFlow flow(first_vertex + g.n);
  for (int i = 0; i < m; ++i) {
    flow.add_edge(source, first_edge + i, q);
    flow.add_edge(first_edge + i, first_vertex + g.ends[i].first, detail::MaxFlow::kInfinity);
    flow.add_edge(first_edge + i, first_vertex + g.ends[i].second, detail::MaxFlow::kInfinity);
  }
  for (int v = 0; v < g.n; ++v) flow.add_edge(first_vertex + v, sink, p);
  if (forced) flow.add_edge(source, first_vertex + *forced, detail::MaxFlow::kInfinity);

  std::int64_t cut = flow.run(source, sink);
  auto side = flow.source_side(source);
  Improvement out;
  for (int v = 0; v < g.n; ++v)
    if (side[first_vertex + v]) out.subset.push_back(v);
  // cut = q*(m - e(S)) + p*|S|
  out.gain = q * m - cut + (forced ? p : 0);
  return out;
}

// Dinkelbach iteration on the exact ratio: each round either certifies that
// no subset beats lambda or jumps to the ratio of a strictly better subset.
DensityReport parametric_search(const EdgeEnds& g, DensityKind kind) {
  require_defined(g);
  const auto m = static_cast<std::int64_t>(g.ends.size());
  std::vector<Vertex> witness(g.n);
  std::iota(witness.begin(), witness.end(), 0);
  Ratio lambda = subset_ratio(m, g.n, kind);

  std::vector<char> touched(g.n, 0);
  for (auto [u, v] : g.ends) touched[u] = touched[v] = 1;

  for (;;) {
    std::optional<Improvement> best;
    if (kind == DensityKind::density) {
      best = best_cut(g, lambda, std::nullopt);
    } else {
      for (Vertex v = 0; v < g.n; ++v) {
        if (!touched[v]) continue;
        Improvement candidate = best_cut(g, lambda, v);
        if (!best || candidate.gain > best->gain) best = std::move(candidate);
      }
    }
    if (!best || best->gain <= 0) break;
    std::vector<char> in_set(g.n, 0);
    for (Vertex v : best->subset) in_set[v] = 1;
    Ratio next = subset_ratio(count_inside(g, in_set),
                              static_cast<std::int64_t>(best->subset.size()), kind);
    if (!(next > lambda))
      throw std::logic_error("parametric density search failed to make progress");
    lambda = next;
    witness = std::move(best->subset);
  }

  return {lambda, std::move(witness), whole_graph_attains(g, lambda, kind)};
}

// --- exhaustive oracle ------------------------------------------------------

struct SubsetBest {
  std::int64_t edges = 0;
  std::int64_t size = 0;  // ratio denominator
  std::uint32_t mask = 0;
  bool valid = false;

  // Larger ratio wins; equal ratios keep the smaller mask.
  bool beats(const SubsetBest& other) const {
    if (!other.valid) return valid;
    if (!valid) return false;
    __int128 lhs = static_cast<__int128>(edges) * other.size;
    __int128 rhs = static_cast<__int128>(other.edges) * size;
    return lhs > rhs || (lhs == rhs && mask < other.mask);
  }
};

SubsetBest scan_masks(const std::vector<std::uint32_t>& out_mask, DensityKind kind,
                      std::uint64_t lo, std::uint64_t hi) {
  const int min_size = kind == DensityKind::arboricity ? 2 : 1;
  SubsetBest best;
  for (std::uint64_t raw = lo; raw < hi; ++raw) {
    auto mask = static_cast<std::uint32_t>(raw);
    int size = std::popcount(mask);
    if (size < min_size) continue;
    std::int64_t edges = 0;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1)
      edges += std::popcount(out_mask[std::countr_zero(rest)] & mask);
    if (edges == 0) continue;
    SubsetBest candidate{edges, kind == DensityKind::arboricity ? size - 1 : size, mask, true};
    if (candidate.beats(best)) best = candidate;
  }
  return best;
}

DensityReport enumerate_subsets(const EdgeEnds& g, DensityKind kind, Exec exec) {
  if (g.n > 20) fail(ErrorKind::size_limit, "subset enumeration supports n <= 20");
  require_defined(g);
  std::vector<std::uint32_t> out_mask(g.n, 0);
  for (auto [u, v] : g.ends) out_mask[u] |= std::uint32_t{1} << v;

  const std::uint64_t total = std::uint64_t{1} << g.n;
  SubsetBest best;
  if (exec == Exec::serial) {
    best = scan_masks(out_mask, kind, 1, total);
  } else {
    const std::int64_t chunks = std::max<std::int64_t>(1, std::min<std::uint64_t>(total / 1024, 4096));
    std::vector<SubsetBest> partial(chunks);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c) {
      std::uint64_t lo = std::max<std::uint64_t>(1, total * c / chunks);
      std::uint64_t hi = total * (c + 1) / chunks;
      partial[c] = scan_masks(out_mask, kind, lo, hi);
    }
    for (const SubsetBest& candidate : partial)
      if (candidate.beats(best)) best = candidate;
  }

  DensityReport report;
  report.value = Ratio(best.edges, best.size);
  for (int v = 0; v < g.n; ++v)
    if (best.mask >> v & 1U) report.witness.push_back(v);
  report.totally_balanced = whole_graph_attains(g, report.value, kind);
  return report;
}

bool balanced(const EdgeEnds& g, bool has_isolated) {
  require_defined(g);
  if (has_isolated)
    fail(ErrorKind::invalid_input, "balance test needs a graph without isolated vertices");
  return parametric_search(g, DensityKind::arboricity).totally_balanced;
}

}  // namespace

DensityReport fractional_arboricity(const Digraph& g) {
  return parametric_search(ends_of(g), DensityKind::arboricity);
}
DensityReport fractional_arboricity(const UndirectedGraph& g) {
  return parametric_search(ends_of(g), DensityKind::arboricity);
}
DensityReport maximal_density(const Digraph& g) {
  return parametric_search(ends_of(g), DensityKind::density);
}
DensityReport maximal_density(const UndirectedGraph& g) {
  return parametric_search(ends_of(g), DensityKind::density);
}

bool is_totally_balanced(const Digraph& g) { return balanced(ends_of(g), g.has_isolated_vertex()); }
bool is_totally_balanced(const UndirectedGraph& g) {
  return balanced(ends_of(g), g.has_isolated_vertex());
}

DensityReport densest_subset_enum(const Digraph& g, DensityKind kind, Exec exec) {
  return enumerate_subsets(ends_of(g), kind, exec);
}
DensityReport densest_subset_enum(const UndirectedGraph& g, DensityKind kind, Exec exec) {
  return enumerate_subsets(ends_of(g), kind, exec);
}

std::size_t edges_inside(const Digraph& g, std::span<const Vertex> subset) {
  std::vector<char> in_set(g.num_vertices(), 0);
  for (Vertex v : subset) in_set[v] = 1;
  std::size_t count = 0;
  for (const Edge& e : g.edges())
    if (in_set[e.from] && in_set[e.to]) ++count;
  return count;
}

nlohmann::json to_json(const DensityReport& report) {
  return {{"value", report.value.to_string()},
          {"witness", report.witness},
          {"totally_balanced", report.totally_balanced}};
}

}  // namespace dagcover
