#include "embedding.hpp"

#include <algorithm>

namespace dagcover::detail {

Embedder::Embedder(const Digraph& host, const Digraph& pattern, const RegionConstraint* constraint)
    : g_(host), h_(pattern), constraint_(constraint) {
  const int k = pattern.num_vertices();
  phi_.assign(k, -1);
  used_.assign(host.num_vertices(), 0);
  if (constraint_) {
    block_region_ = constraint_->fixed_region;
    int regions = 0;
    for (int r : constraint_->region_of_host) regions = std::max(regions, r + 1);
    for (int r : constraint_->fixed_region) regions = std::max(regions, r + 1);
    region_owner_.assign(regions, -1);
    for (std::size_t b = 0; b < block_region_.size(); ++b)
      if (block_region_[b] >= 0) region_owner_[block_region_[b]] = static_cast<int>(b);
  }

  // Connectivity-first order: most edges into the placed set, then highest
  // degree, then lowest index.
  std::vector<char> placed(k, 0);
  auto degree = [&](Vertex u) { return pattern.out_degree(u) + pattern.in_degree(u); };
  for (int depth = 0; depth < k; ++depth) {
    Vertex pick = -1;
    int pick_links = -1, pick_degree = -1;
    for (Vertex u = 0; u < k; ++u) {
      if (placed[u]) continue;
      int links = 0;
      for (Vertex w : pattern.out_neighbors(u)) links += placed[w];
      for (Vertex w : pattern.in_neighbors(u)) links += placed[w];
      if (links > pick_links || (links == pick_links && degree(u) > pick_degree)) {
        pick = u;
        pick_links = links;
        pick_degree = degree(u);
      }
    }
    Step step;
    step.u = pick;
    for (Vertex w : pattern.in_neighbors(pick))
      if (placed[w]) step.checks.push_back({w, true});
    for (Vertex w : pattern.out_neighbors(pick))
      if (placed[w]) step.checks.push_back({w, false});
    if (!step.checks.empty()) step.anchor = 0;
    placed[pick] = 1;
    steps_.push_back(std::move(step));
  }
}

bool Embedder::feasible(int depth, Vertex x) const {
  const Step& step = steps_[depth];
  if (used_[x]) return false;
  if (g_.out_degree(x) < h_.out_degree(step.u) || g_.in_degree(x) < h_.in_degree(step.u)) return false;
  if (constraint_) {
    int block = constraint_->block_of_pattern[step.u];
    if (block >= 0) {
      int region = constraint_->region_of_host[x];
      if (region < 0) return false;
      if (block_region_[block] >= 0) {
        if (block_region_[block] != region) return false;
      } else if (region_owner_[region] >= 0) {
        return false;
      }
    }
  }
  for (const Check& c : step.checks) {
    Vertex y = phi_[c.earlier];
    if (c.earlier_to_u ? !g_.has_edge(y, x) : !g_.has_edge(x, y)) return false;
  }
  return true;
}

bool Embedder::root_feasible(Vertex x) const { return feasible(0, x); }

bool Embedder::place(int depth, Vertex x, const Visitor& visit) {
  const Step& step = steps_[depth];
  int block = constraint_ ? constraint_->block_of_pattern[step.u] : -1;
  bool claimed = false;
  if (block >= 0) {
    if (block_region_[block] < 0) {
      int region = constraint_->region_of_host[x];
      block_region_[block] = region;
      region_owner_[region] = block;
      claimed = true;
    }
  }
  phi_[step.u] = x;
  used_[x] = 1;
  bool keep_going = extend(depth + 1, visit);
  used_[x] = 0;
  phi_[step.u] = -1;
  if (block >= 0) {
    if (claimed) {
      region_owner_[block_region_[block]] = -1;
      block_region_[block] = -1;
    }
  }
  return keep_going;
}

bool Embedder::extend(int depth, const Visitor& visit) {
  if (depth == static_cast<int>(steps_.size())) return visit(phi_);
  const Step& step = steps_[depth];
  if (step.anchor >= 0) {
    // Draw candidates from the shortest neighbour list among placed neighbours.
    std::span<const Vertex> candidates;
    bool have = false;
    for (const Check& c : step.checks) {
      Vertex y = phi_[c.earlier];
      auto list = c.earlier_to_u ? g_.out_neighbors(y) : g_.in_neighbors(y);
      if (!have || list.size() < candidates.size()) {
        candidates = list;
        have = true;
      }
    }
    for (Vertex x : candidates)
      if (feasible(depth, x) && !place(depth, x, visit)) return false;
  } else {
    for (Vertex x = 0; x < g_.num_vertices(); ++x)
      if (feasible(depth, x) && !place(depth, x, visit)) return false;
  }
  return true;
}

bool Embedder::search_from(Vertex x, const Visitor& visit) {
  if (steps_.empty()) return visit(phi_);
  if (!feasible(0, x)) return true;
  return place(0, x, visit);
}

bool Embedder::search(const Visitor& visit) {
  if (steps_.empty()) return visit(phi_);
  return extend(0, visit);
}

}  // namespace dagcover::detail
