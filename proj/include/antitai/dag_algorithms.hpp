#pragma once

#include <cstddef>
#include <vector>

#include "antitai/bitset.hpp"
#include "antitai/dag.hpp"
#include "antitai/weights.hpp"

namespace antitai {

// Lower bound on the maximum-weight anti Tai mapping between a chain
// u_1 < ... < u_n and an arbitrary DAG with topological order v_1, ..., v_m:
//   delta(u_i, v_j) = w(u_i, v_j) + max(delta(u_{i-1}, v_j) if i != 1,
//                                       delta(u_i, v_{j+1}) if j != m)
// evaluated at (u_n, v_1). Throws InvalidArgument if `chain` is not a chain.
double topo_delta(const Dag& chain, const Dag& g2, const WeightMatrix& w);

// Vertex-weighted DAG on V1 x V2 given by its (transitively closed) strict
// order; vertex v stands for (v / cols, v % cols).
class ProductDag {
 public:
  ProductDag(std::size_t rows, std::size_t cols, std::vector<double> weights,
             std::vector<BitRow> successors);

  std::size_t size() const { return weights_.size(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t vertex(NodeId u, NodeId v) const { return u * cols_ + v; }
  double weight(std::size_t a) const { return weights_[a]; }
  bool has_edge(std::size_t a, std::size_t b) const { return succ_[a].test(b); }
  const BitRow& successors(std::size_t a) const { return succ_[a]; }
  std::size_t edge_count() const;
  bool is_transitively_closed() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> weights_;
  std::vector<BitRow> succ_;
};

// Edges ((u, v), (u', v')) exactly when u < u' and v < v' strictly.
ProductDag build_product(const Dag& g1, const Dag& g2, const WeightMatrix& w);

// Heaviest vertex set with no edge between any two members, as the minimum
// flow that passes each vertex at least weight-many times (weighted Dilworth).
// Integral weights are used as is; other weights are scaled by 1e6 and
// rounded, so the result is accurate to about 1e-6 per vertex. Throws
// InvalidArgument if g is not transitively closed.
double max_weight_antichain(const ProductDag& g);

}  // namespace antitai
