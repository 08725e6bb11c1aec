#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "antitai/detail/alternating.hpp"
#include "antitai/mapping.hpp"
#include "antitai/path_tree.hpp"
#include "antitai/tree.hpp"
#include "antitai/weights.hpp"

namespace antitai {

// How the weights of one node against a path segment [v, v'] fold into the
// node weight of the antichain recurrence.
//   sum: every segment node is paired with the antichain node. This is the
//        anti Tai value of an antichain times a segment.
//   max: the antichain node is paired with its single best segment node. This
//        is the largest si-antimatching of that shape, since two pairs sharing
//        a node must have incomparable partners.
enum class SegmentAggregation { sum, max };

// Maximum-weight antichain values alpha(x, v, v') over one tree for a fixed
// segment [v, v'] of the other tree:
//   alpha(x) = max(node_weight(x), sum_{c in children(x)} alpha(c)).
class AlphaTable {
 public:
  const RootedTree& tree() const { return *tree_; }
  const PathSegment& segment() const { return segment_; }
  Side segment_side() const { return segment_side_; }
  SegmentAggregation aggregation() const { return aggregation_; }

  double value(NodeId x) const;
  double node_weight(NodeId x) const;

 private:
  friend AlphaTable alpha_solve(const RootedTree&, const PathSegment&, const WeightMatrix&,
                                Side, SegmentAggregation);
  friend AlphaTable alpha_extend(const AlphaTable&, NodeId, const WeightMatrix&);
  AlphaTable(const RootedTree& tree, const PathSegment& segment, Side side,
             SegmentAggregation aggregation);
  void recompute();

  const RootedTree* tree_;
  PathSegment segment_;
  Side segment_side_;
  SegmentAggregation aggregation_;
  std::vector<double> node_weight_;
  std::vector<double> value_;
};

// `seg_side` says which weight-matrix dimension the segment's tree occupies;
// `tree` occupies the other.
AlphaTable alpha_solve(const RootedTree& tree, const PathSegment& seg, const WeightMatrix& w,
                       Side seg_side, SegmentAggregation aggregation = SegmentAggregation::sum);

// The table for the segment extended by new_bottom, a child of the current
// bottom, in one traversal.
AlphaTable alpha_extend(const AlphaTable& table, NodeId new_bottom, const WeightMatrix& w);

// Result of si_solve. Holds pointers to the input trees, which must outlive
// it, and a copy of the weights.
class SiSolution {
 public:
  double value() const { return tables_.value(); }
  // f(u, v) with u on `u_side` and v on the other side.
  double f(Side u_side, NodeId u, NodeId v) const;
  const detail::AlternatingTables& tables() const { return tables_; }

 private:
  friend SiSolution si_solve(const RootedTree&, const RootedTree&, const WeightMatrix&,
                             unsigned);
  explicit SiSolution(detail::AlternatingTables tables) : tables_(std::move(tables)) {}
  detail::AlternatingTables tables_;
};

// Exact maximum-weight si-antimatching from the alternating path/antichain
// recurrence with max-aggregated antichain stages. O(|V1|^2 |V2|^2) time,
// O(|V1| |V2| (d1 + d2)) memory for tree depths d1, d2. `threads` > 1 splits
// each outer step across workers without changing any value or choice.
SiSolution si_solve(const RootedTree& t1, const RootedTree& t2, const WeightMatrix& w,
                    unsigned threads = 1);

PairMapping si_reconstruct(const SiSolution& solution, bool prune_zeros = false);

// Path/antichain split of an si-antimatching's matched nodes.
struct DecompositionCertificate {
  // Leaves fixing the root-to-leaf paths P1 and P2; empty for an empty mapping.
  std::optional<NodeId> path1_leaf;
  std::optional<NodeId> path2_leaf;
  std::vector<NodeId> path1_matched;  // P1^M
  std::vector<NodeId> antichain1;     // A1 = V1^M \ P1
  std::vector<NodeId> path2_matched;  // P2^M = M(A1)
  std::vector<NodeId> antichain2;     // A2 = M(P1^M)
  // Lowest node of the own tree's path that is an ancestor-or-equal of each
  // antichain node.
  std::map<NodeId, NodeId> anchor1;
  std::map<NodeId, NodeId> anchor2;
};

struct DecompositionFailure {
  std::string reason;
};

// Picks a root-to-leaf path of T1 holding the most matched nodes such that
// the remaining matched nodes map onto one root-to-leaf path of T2, and checks
// every certificate property. Every valid si-antimatching has such a
// certificate, so a failure indicates a bug.
std::variant<DecompositionCertificate, DecompositionFailure> verify_decomposition(
    const RootedTree& t1, const RootedTree& t2, const PairMapping& m);

}  // namespace antitai
