#include "antitai/dag_algorithms.hpp"

#include <algorithm>
#include <cmath>

#include "antitai/error.hpp"
#include "antitai/max_flow.hpp"

namespace antitai {

double topo_delta(const Dag& chain, const Dag& g2, const WeightMatrix& w) {
  check_shape(chain, g2, w);
  if (!chain.is_chain()) throw InvalidArgument("first DAG is not a chain");
  const auto u = chain.topological_order();
  const auto v = g2.topological_order();
  const std::size_t n = u.size();
  const std::size_t m = v.size();
  // delta[i][j] depends on delta[i-1][j] and delta[i][j+1]: sweep i upward,
  // j downward, keeping only the previous i row.
  std::vector<double> prev(m, 0.0);
  std::vector<double> cur(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = m; j-- > 0;) {
      double best = 0.0;
      bool any = false;
      if (i != 0) {
        best = prev[j];
        any = true;
      }
      if (j + 1 != m) {
        best = any ? std::max(best, cur[j + 1]) : cur[j + 1];
      }
      cur[j] = w(u[i], v[j]) + best;
    }
    std::swap(prev, cur);
  }
  return prev[0];
}

ProductDag::ProductDag(std::size_t rows, std::size_t cols, std::vector<double> weights,
                       std::vector<BitRow> successors)
    : rows_(rows), cols_(cols), weights_(std::move(weights)), succ_(std::move(successors)) {
  if (weights_.size() != rows_ * cols_ || succ_.size() != weights_.size()) {
    throw InvalidArgument("product DAG dimensions do not match");
  }
  for (std::size_t a = 0; a < size(); ++a) {
    if (succ_[a].size() != size()) throw InvalidArgument("ragged product adjacency");
    if (succ_[a].test(a)) throw InvalidArgument("product DAG has a self-loop");
    if (!(weights_[a] >= 0.0) || !std::isfinite(weights_[a])) {
      throw InvalidArgument("weights must be finite and nonnegative");
    }
  }
}

std::size_t ProductDag::edge_count() const {
  std::size_t c = 0;
  for (const auto& row : succ_) c += row.count();
  return c;
}

bool ProductDag::is_transitively_closed() const {
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = succ_[a].next(0); b < size(); b = succ_[a].next(b + 1)) {
      if (!succ_[b].subset_of(succ_[a])) return false;
    }
  }
  return true;
}

ProductDag build_product(const Dag& g1, const Dag& g2, const WeightMatrix& w) {
  check_shape(g1, g2, w);
  const std::size_t n = g1.size();
  const std::size_t m = g2.size();
  std::vector<double> weights(n * m);
  std::vector<BitRow> succ(n * m, BitRow(n * m));
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < m; ++v) {
      const std::size_t a = u * m + v;
      weights[a] = w(u, v);
      for (NodeId u2 = 0; u2 < n; ++u2) {
        if (!g1.strictly_before(u, u2)) continue;
        for (NodeId v2 = 0; v2 < m; ++v2) {
          if (g2.strictly_before(v, v2)) succ[a].set(u2 * m + v2);
        }
      }
    }
  }
  return ProductDag(n, m, std::move(weights), std::move(succ));
}

double max_weight_antichain(const ProductDag& g) {
  if (!g.is_transitively_closed()) {
    throw InvalidArgument("max_weight_antichain needs a transitively closed DAG");
  }
  bool integral = true;
  for (std::size_t a = 0; a < g.size(); ++a) {
    const double x = g.weight(a);
    if (x != std::floor(x) || x > 1.0e12) integral = false;
  }
  const double scale = integral ? 1.0 : 1.0e6;

  // Vertex a splits into in = 2a and out = 2a + 1 joined by an arc of lower
  // bound weight(a); chains enter from s, leave to t and follow product edges.
  const std::size_t s = 2 * g.size();
  const std::size_t t = s + 1;
  MinFlowWithLowerBounds net(2 * g.size() + 2, s, t);
  for (std::size_t a = 0; a < g.size(); ++a) {
    const auto lower = static_cast<MaxFlow::Capacity>(std::llround(g.weight(a) * scale));
    net.add_edge(s, 2 * a, 0, MaxFlow::kInfinite);
    net.add_edge(2 * a, 2 * a + 1, lower, MaxFlow::kInfinite);
    net.add_edge(2 * a + 1, t, 0, MaxFlow::kInfinite);
    const BitRow& row = g.successors(a);
    for (std::size_t b = row.next(0); b < g.size(); b = row.next(b + 1)) {
      net.add_edge(2 * a + 1, 2 * b, 0, MaxFlow::kInfinite);
    }
  }
  return static_cast<double>(net.solve()) / scale;
}

}  // namespace antitai
