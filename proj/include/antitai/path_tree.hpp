#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "antitai/detail/gamma_rows.hpp"
#include "antitai/mapping.hpp"
#include "antitai/tree.hpp"
#include "antitai/weights.hpp"

namespace antitai {

// Which input a node, path or subtree belongs to: rows (first) or columns
// (second) of the weight matrix.
enum class Side { first, second };

// gamma(x, top, v) for every node x of one subtree and every v on a path.
//
// The path dimension is outermost: row k holds the values for the path that
// ends at path.nodes()[k], one postorder pass of the subtree per row, with
// cells in postorder so each pass streams through memory.
class GammaTable {
 public:
  double value() const { return value_; }
  // gamma(x, top, path.nodes()[k]); x must lie in the solved subtree.
  double at(NodeId x, std::size_t k) const;
  // True iff that cell took the shortened-path branch.
  bool shortened(NodeId x, std::size_t k) const;

  const RootedTree& tree() const { return *tree_; }
  NodeId tree_root() const { return tree_root_; }
  const PathSegment& path() const { return path_; }
  Side path_side() const { return path_side_; }

 private:
  friend GammaTable gamma_solve(const RootedTree&, NodeId, const PathSegment&,
                                const WeightMatrix&, Side);
  friend PairMapping gamma_reconstruct(const GammaTable&, const WeightMatrix&, bool);
  GammaTable(const RootedTree& tree, NodeId tree_root, const PathSegment& path, Side side);

  const RootedTree* tree_;
  NodeId tree_root_;
  PathSegment path_;
  Side path_side_;
  double value_ = 0.0;
  // Row cell of each node: its postorder position within the subtree.
  std::vector<std::size_t> slot_of_;
  // Every cell is written by gamma_solve, so values skip value-init.
  std::shared_ptr<double[]> values_;
  detail::FlagBits shorten_;
};

// Maximum-weight anti Tai mapping between `path` and the subtree of `tree`
// rooted at tree_root. `path_side` says which weight-matrix dimension the
// path's tree occupies; `tree` occupies the other. Weights must be the
// matrix over the two original inputs (first x second). O(|path| |subtree|).
GammaTable gamma_solve(const RootedTree& tree, NodeId tree_root, const PathSegment& path,
                       const WeightMatrix& w, Side path_side);

// An optimal mapping, pairs oriented (first, second). Zero-weight pairs the
// recurrence selects are kept unless prune_zeros is set.
PairMapping gamma_reconstruct(const GammaTable& table, const WeightMatrix& w,
                              bool prune_zeros = false);

// Chain-vs-chain specialization; p1 lives in the first input, p2 in the
// second.
double path_path_solve(const PathSegment& p1, const PathSegment& p2, const WeightMatrix& w);

}  // namespace antitai
