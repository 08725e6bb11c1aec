#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "antitai/bitset.hpp"
#include "antitai/tree.hpp"

namespace antitai {

// Immutable directed acyclic graph with a fixed topological order and a
// reflexive reachability matrix.
class Dag {
 public:
  // Throws InvalidArgument on a cycle or self-loop, InvalidNode on bad ids.
  Dag(std::size_t vertices, std::span<const std::pair<NodeId, NodeId>> edges);

  std::size_t size() const { return succ_.size(); }
  std::span<const NodeId> successors(NodeId v) const;

  // Kahn's algorithm taking the smallest ready index first.
  std::span<const NodeId> topological_order() const { return topo_; }
  std::size_t topo_rank(NodeId v) const;

  // reaches(u, v) iff a directed path u -> v exists; reaches(u, u) is true.
  bool reaches(NodeId u, NodeId v) const;
  bool leq(NodeId u, NodeId v) const { return reaches(u, v); }
  bool strictly_before(NodeId u, NodeId v) const { return u != v && reaches(u, v); }
  const BitRow& reach_row(NodeId u) const;

  // True iff the vertices are totally ordered by reachability.
  bool is_chain() const;

  void check_node(NodeId v) const;

 private:
  std::vector<std::vector<NodeId>> succ_;
  std::vector<NodeId> topo_;
  std::vector<std::size_t> rank_;
  std::vector<BitRow> reach_;
};

}  // namespace antitai
