#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "antitai/mapping.hpp"
#include "antitai/tree.hpp"
#include "antitai/weights.hpp"

namespace antitai::detail {

// Dense numbering of the segments (top, bottom), bottom in tau(top), of one
// tree. Segments sharing a top are contiguous and ordered by the bottom's
// preorder rank.
class SegmentIndex {
 public:
  SegmentIndex() = default;
  explicit SegmentIndex(const RootedTree& tree);

  std::size_t count() const { return count_; }
  std::size_t index(NodeId top, NodeId bottom) const {
    return offset_[top] + (tree_->pre(bottom) - tree_->pre(top));
  }

 private:
  const RootedTree* tree_ = nullptr;
  std::vector<std::size_t> offset_;
  std::size_t count_ = 0;
};

// Stage values for "subtree rooted in tree k paired against a segment of the
// other tree". value[s * n_k + x] is the stage optimum for subtree x and
// segment s. aux/flag hold whatever the stage needs for reconstruction.
struct StageTable {
  std::vector<double> value;
  std::vector<double> aux;
  std::vector<std::uint8_t> flag;
};

// Branch taken at f(x, y). When split is false the cell is the single-stage
// case with segment [y, seg_bottom]; otherwise it descends the path of x to
// next and recurses into f(seg_bottom, next) with the trees swapped.
struct FChoice {
  bool split = false;
  NodeId next = 0;
  NodeId seg_bottom = 0;
};

// Tables of the alternating path/subtree-family recurrence
//   f(x, y) = max( max_{y' in tau(y)} S(x; y, y'),
//                  max_{x' in tau(x)\x, y' in tau(y)}
//                      f(y', x') + sum_{z in [x, p(x')]} sum_{c in children(z)\[x, x']} S(c; y, y') )
// for both orientations. Index 0 is the first input, 1 the second.
struct AlternatingTables {
  std::array<const RootedTree*, 2> tree{};
  // Trees are borrowed and must outlive the tables; weights are copied.
  WeightMatrix weights;
  std::array<SegmentIndex, 2> segments;
  // stage[k]: subtree node in tree k, segment in tree 1 - k.
  std::array<StageTable, 2> stage;
  // f[k][x * n_{1-k} + y] with x in tree k and y in tree 1 - k.
  std::array<std::vector<double>, 2> f;
  std::array<std::vector<FChoice>, 2> choice;

  AlternatingTables(const RootedTree& t1, const RootedTree& t2, const WeightMatrix& w);

  std::size_t size(int k) const { return tree[k]->size(); }
  // a in tree k, b in tree 1 - k.
  double weight(int k, NodeId a, NodeId b) const {
    return k == 0 ? weights(a, b) : weights(b, a);
  }
  Pair oriented(int k, NodeId a, NodeId b) const {
    return k == 0 ? Pair{a, b} : Pair{b, a};
  }
  double stage_value(int k, NodeId x, NodeId seg_top, NodeId seg_bottom) const {
    return stage[k].value[segments[1 - k].index(seg_top, seg_bottom) * size(k) + x];
  }

  // max(f[0](r1, r2), f[1](r2, r1)); the first orientation wins ties.
  double value() const;
  int best_orientation() const;
};

// Fills f and choice from the stage tables. The y loop for a fixed x is
// split across `threads` workers; every cell is computed by the same
// arithmetic regardless of the split.
void run_alternating(AlternatingTables& tables, unsigned threads);

// Calls emit_stage(k, x, seg_top, seg_bottom) for every stage the optimal
// branch sequence selects.
void replay_alternating(
    const AlternatingTables& tables,
    const std::function<void(int, NodeId, NodeId, NodeId)>& emit_stage);

}  // namespace antitai::detail
