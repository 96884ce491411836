#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace plateau {

// Dinic max-flow on integer capacities; min-cut side recovered from the
// residual graph. Single-threaded per instance.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : head_(static_cast<size_t>(nodes), -1), level_(nodes), iter_(nodes) {}

  int add_node() {
    head_.push_back(-1);
    level_.push_back(0);
    iter_.push_back(0);
    return static_cast<int>(head_.size()) - 1;
  }

  void add_edge(int u, int v, int64_t cap, int64_t cap_rev) {
    edges_.push_back({v, head_[static_cast<size_t>(u)], cap});
    head_[static_cast<size_t>(u)] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({u, head_[static_cast<size_t>(v)], cap_rev});
    head_[static_cast<size_t>(v)] = static_cast<int>(edges_.size()) - 1;
  }

  int64_t solve(int s, int t) {
    int64_t flow = 0;
    while (bfs(s, t)) {
      iter_.assign(head_.begin(), head_.end());
      int64_t f;
      while ((f = dfs(s, t, std::numeric_limits<int64_t>::max())) > 0) flow += f;
    }
    source_side_.assign(head_.size(), false);
    std::queue<int> q;
    q.push(s);
    source_side_[static_cast<size_t>(s)] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e = head_[static_cast<size_t>(u)]; e >= 0; e = edges_[static_cast<size_t>(e)].next) {
        const auto& ed = edges_[static_cast<size_t>(e)];
        if (ed.cap > 0 && !source_side_[static_cast<size_t>(ed.to)]) {
          source_side_[static_cast<size_t>(ed.to)] = true;
          q.push(ed.to);
        }
      }
    }
    return flow;
  }

  bool source_side(int u) const { return source_side_[static_cast<size_t>(u)]; }

 private:
  struct Edge {
    int to;
    int next;
    int64_t cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[static_cast<size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e = head_[static_cast<size_t>(u)]; e >= 0; e = edges_[static_cast<size_t>(e)].next) {
        const auto& ed = edges_[static_cast<size_t>(e)];
        if (ed.cap > 0 && level_[static_cast<size_t>(ed.to)] < 0) {
          level_[static_cast<size_t>(ed.to)] = level_[static_cast<size_t>(u)] + 1;
          q.push(ed.to);
        }
      }
    }
    return level_[static_cast<size_t>(t)] >= 0;
  }

  int64_t dfs(int u, int t, int64_t limit) {
    if (u == t) return limit;
    for (int& e = iter_[static_cast<size_t>(u)]; e >= 0; e = edges_[static_cast<size_t>(e)].next) {
      Edge& ed = edges_[static_cast<size_t>(e)];
      if (ed.cap <= 0 || level_[static_cast<size_t>(ed.to)] != level_[static_cast<size_t>(u)] + 1)
        continue;
      const int64_t f = dfs(ed.to, t, std::min(limit, ed.cap));
      if (f > 0) {
        ed.cap -= f;
        edges_[static_cast<size_t>(e ^ 1)].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<int> iter_;
  std::vector<bool> source_side_;
};

}  // namespace plateau
