#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace antitai {

// Dinic's algorithm on an integer-capacity network.
class MaxFlow {
 public:
  using Capacity = std::int64_t;
  static constexpr Capacity kInfinite = std::numeric_limits<Capacity>::max() / 4;

  explicit MaxFlow(std::size_t nodes) : graph_(nodes) {}

  std::size_t size() const { return graph_.size(); }
  // Returns an edge handle for flow()/capacity queries.
  std::size_t add_edge(std::size_t from, std::size_t to, Capacity cap);

  // Augments from s to t on the current residual network and returns the
  // amount added. Repeated calls continue from the existing flow.
  Capacity augment(std::size_t s, std::size_t t);

  Capacity flow(std::size_t edge) const;
  // Zeroes both directions of an edge, removing it from the residual network.
  void disable(std::size_t edge);

 private:
  struct Arc {
    std::size_t to;
    std::size_t rev;
    Capacity cap;
  };

  bool bfs(std::size_t s, std::size_t t);
  Capacity dfs(std::size_t v, std::size_t t, Capacity limit);

  std::vector<std::vector<Arc>> graph_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;  // (node, arc index)
  std::vector<Capacity> initial_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

// Minimum s-t flow subject to per-edge lower and upper bounds, by the usual
// two max-flow passes: a feasibility pass on the demand-transformed network
// with a t->s return arc, then a pass from t back to s that cancels as much
// flow as the lower bounds allow.
class MinFlowWithLowerBounds {
 public:
  using Capacity = MaxFlow::Capacity;

  MinFlowWithLowerBounds(std::size_t nodes, std::size_t source, std::size_t sink);

  void add_edge(std::size_t from, std::size_t to, Capacity lower, Capacity upper);

  // Minimum feasible flow value; throws std::runtime_error if infeasible.
  Capacity solve();

 private:
  std::size_t nodes_;
  std::size_t source_;
  std::size_t sink_;
  struct Edge {
    std::size_t from, to;
    Capacity lower, upper;
  };
  std::vector<Edge> edges_;
};

}  // namespace antitai
