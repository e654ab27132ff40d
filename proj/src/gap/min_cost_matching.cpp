#include "sched/gap/min_cost_matching.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace sched::gap {

namespace {

struct Arc {
  int to;
  int cap;
  std::int64_t cost;
  int rev;
};

}  // namespace

std::optional<std::vector<int>> min_cost_left_perfect_matching(int left, int right,
                                                                const std::vector<MatchEdge>& edges) {
  const int source = left + right;
  const int sink = source + 1;
  const int nodes = sink + 1;
  std::vector<std::vector<Arc>> g(nodes);
  auto add_arc = [&](int a, int b, std::int64_t c) {
    g[a].push_back({b, 1, c, static_cast<int>(g[b].size())});
    g[b].push_back({a, 0, -c, static_cast<int>(g[a].size()) - 1});
  };
  for (int l = 0; l < left; ++l) add_arc(source, l, 0);
  for (const auto& e : edges) {
    if (e.cost < 0) throw std::invalid_argument("matching costs must be non-negative");
    add_arc(e.left, left + e.right, e.cost);
  }
  for (int r = 0; r < right; ++r) add_arc(left + r, sink, 0);

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> potential(nodes, 0);
  std::vector<std::int64_t> dist(nodes);
  std::vector<int> prev_node(nodes), prev_arc(nodes);
  for (int flow = 0; flow < left; ++flow) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[source] = 0;
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0, source});
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      for (int a = 0; a < static_cast<int>(g[v].size()); ++a) {
        const Arc& arc = g[v][a];
        if (arc.cap == 0) continue;
        std::int64_t nd = d + arc.cost + potential[v] - potential[arc.to];
        if (nd < dist[arc.to]) {
          dist[arc.to] = nd;
          prev_node[arc.to] = v;
          prev_arc[arc.to] = a;
          pq.push({nd, arc.to});
        }
      }
    }
    if (dist[sink] >= kInf) return std::nullopt;
    for (int v = 0; v < nodes; ++v) {
      if (dist[v] < kInf) potential[v] += dist[v];
    }
    for (int v = sink; v != source; v = prev_node[v]) {
      Arc& arc = g[prev_node[v]][prev_arc[v]];
      arc.cap -= 1;
      g[v][arc.rev].cap += 1;
    }
  }
  std::vector<int> match(left, -1);
  for (int l = 0; l < left; ++l) {
    for (const auto& arc : g[l]) {
      if (arc.to >= left && arc.to < left + right && arc.cap == 0) match[l] = arc.to - left;
    }
  }
  return match;
}

}  // namespace sched::gap
