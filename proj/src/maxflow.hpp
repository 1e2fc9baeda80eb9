#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

namespace dagcover::detail {

/// Dinic's algorithm on integer capacities.
class MaxFlow {
 public:
  static constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max() / 4;

  explicit MaxFlow(int nodes) : head_(nodes, -1), level_(nodes), cursor_(nodes) {}

  void add_edge(int from, int to, std::int64_t capacity) {
    arcs_.push_back({to, head_[from], capacity});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  std::int64_t run(int source, int sink) {
    std::int64_t total = 0;
    while (bfs(source, sink)) {
      cursor_ = head_;
      while (std::int64_t pushed = dfs(source, sink, kInfinity)) total += pushed;
    }
    return total;
  }

  /// After run(): nodes reachable from the source in the residual graph.
  std::vector<char> source_side(int source) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<int> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int a = head_[u]; a != -1; a = arcs_[a].next)
        if (arcs_[a].capacity > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    int next;
    std::int64_t capacity;
  };

  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<int> queue{source};
    level_[source] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int u = queue[i];
      for (int a = head_[u]; a != -1; a = arcs_[a].next)
        if (arcs_[a].capacity > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[u] + 1;
          queue.push_back(arcs_[a].to);
        }
    }
    return level_[sink] >= 0;
  }

  std::int64_t dfs(int u, int sink, std::int64_t limit) {
    if (u == sink) return limit;
    for (int& a = cursor_[u]; a != -1; a = arcs_[a].next) {
      Arc& arc = arcs_[a];
      if (arc.capacity <= 0 || level_[arc.to] != level_[u] + 1) continue;
      if (std::int64_t pushed = dfs(arc.to, sink, std::min(limit, arc.capacity))) {
        arc.capacity -= pushed;
        arcs_[a ^ 1].capacity += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<int> cursor_;
};

}  // namespace dagcover::detail
