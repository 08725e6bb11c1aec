#include "antitai/dag.hpp"

#include <functional>
#include <queue>
#include <string>

#include "antitai/error.hpp"

namespace antitai {

Dag::Dag(std::size_t vertices, std::span<const std::pair<NodeId, NodeId>> edges)
    : succ_(vertices), rank_(vertices, 0), reach_(vertices, BitRow(vertices)) {
  std::vector<std::size_t> indegree(vertices, 0);
  for (auto [u, v] : edges) {
    check_node(u);
    check_node(v);
    if (u == v) throw InvalidArgument("self-loop on vertex " + std::to_string(u));
    succ_[u].push_back(v);
    ++indegree[v];
  }

  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId v = 0; v < vertices; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  while (!ready.empty()) {
    NodeId u = ready.top();
    ready.pop();
    rank_[u] = topo_.size();
    topo_.push_back(u);
    for (NodeId v : succ_[u]) {
      if (--indegree[v] == 0) ready.push(v);
    }
  }
  if (topo_.size() != vertices) throw InvalidArgument("graph contains a cycle");

  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    reach_[*it].set(*it);
    for (NodeId v : succ_[*it]) reach_[*it] |= reach_[v];
  }
}

void Dag::check_node(NodeId v) const {
  if (v >= size()) {
    throw InvalidNode("vertex " + std::to_string(v) + " out of range for DAG of size " +
                      std::to_string(size()));
  }
}

std::span<const NodeId> Dag::successors(NodeId v) const {
  check_node(v);
  return succ_[v];
}

std::size_t Dag::topo_rank(NodeId v) const {
  check_node(v);
  return rank_[v];
}

bool Dag::reaches(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  return reach_[u].test(v);
}

const BitRow& Dag::reach_row(NodeId u) const {
  check_node(u);
  return reach_[u];
}

bool Dag::is_chain() const {
  for (std::size_t i = 1; i < topo_.size(); ++i) {
    if (!reach_[topo_[i - 1]].test(topo_[i])) return false;
  }
  return true;
}

}  // namespace antitai
