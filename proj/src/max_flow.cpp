#include "antitai/max_flow.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace antitai {

std::size_t MaxFlow::add_edge(std::size_t from, std::size_t to, Capacity cap) {
  graph_[from].push_back(Arc{to, graph_[to].size(), cap});
  graph_[to].push_back(Arc{from, graph_[from].size() - 1, 0});
  edges_.emplace_back(from, graph_[from].size() - 1);
  initial_.push_back(cap);
  return edges_.size() - 1;
}

MaxFlow::Capacity MaxFlow::flow(std::size_t edge) const {
  auto [v, i] = edges_[edge];
  const Arc& a = graph_[v][i];
  return graph_[a.to][a.rev].cap;
}

void MaxFlow::disable(std::size_t edge) {
  auto [v, i] = edges_[edge];
  Arc& a = graph_[v][i];
  a.cap = 0;
  graph_[a.to][a.rev].cap = 0;
}

bool MaxFlow::bfs(std::size_t s, std::size_t t) {
  level_.assign(size(), -1);
  std::queue<std::size_t> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    for (const Arc& a : graph_[v]) {
      if (a.cap > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        q.push(a.to);
      }
    }
  }
  return level_[t] >= 0;
}

MaxFlow::Capacity MaxFlow::dfs(std::size_t v, std::size_t t, Capacity limit) {
  if (v == t) return limit;
  for (std::size_t& i = next_[v]; i < graph_[v].size(); ++i) {
    Arc& a = graph_[v][i];
    if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
    const Capacity pushed = dfs(a.to, t, std::min(limit, a.cap));
    if (pushed > 0) {
      a.cap -= pushed;
      graph_[a.to][a.rev].cap += pushed;
      return pushed;
    }
  }
  return 0;
}

MaxFlow::Capacity MaxFlow::augment(std::size_t s, std::size_t t) {
  Capacity total = 0;
  while (bfs(s, t)) {
    next_.assign(size(), 0);
    while (Capacity pushed = dfs(s, t, kInfinite)) total += pushed;
  }
  return total;
}

MinFlowWithLowerBounds::MinFlowWithLowerBounds(std::size_t nodes, std::size_t source,
                                               std::size_t sink)
    : nodes_(nodes), source_(source), sink_(sink) {}

void MinFlowWithLowerBounds::add_edge(std::size_t from, std::size_t to, Capacity lower,
                                      Capacity upper) {
  if (lower < 0 || upper < lower) throw std::invalid_argument("bad flow bounds");
  edges_.push_back(Edge{from, to, lower, upper});
}

MinFlowWithLowerBounds::Capacity MinFlowWithLowerBounds::solve() {
  const std::size_t super_source = nodes_;
  const std::size_t super_sink = nodes_ + 1;
  MaxFlow net(nodes_ + 2);
  std::vector<Capacity> excess(nodes_, 0);
  for (const Edge& e : edges_) {
    const Capacity room =
        e.upper >= MaxFlow::kInfinite ? MaxFlow::kInfinite : e.upper - e.lower;
    net.add_edge(e.from, e.to, room);
    excess[e.to] += e.lower;
    excess[e.from] -= e.lower;
  }
  const std::size_t back = net.add_edge(sink_, source_, MaxFlow::kInfinite);
  Capacity demand = 0;
  for (std::size_t v = 0; v < nodes_; ++v) {
    if (excess[v] > 0) {
      net.add_edge(super_source, v, excess[v]);
      demand += excess[v];
    } else if (excess[v] < 0) {
      net.add_edge(v, super_sink, -excess[v]);
    }
  }
  // Pass 1: any feasible flow; its value is what the return arc carries.
  if (net.augment(super_source, super_sink) != demand) {
    throw std::runtime_error("no flow satisfies the lower bounds");
  }
  const Capacity feasible = net.flow(back);
  net.disable(back);
  // Pass 2: push back from sink to source as far as the bounds permit.
  return feasible - net.augment(sink_, source_);
}

}  // namespace antitai
