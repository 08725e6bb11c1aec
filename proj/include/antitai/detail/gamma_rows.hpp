#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "antitai/mapping.hpp"
#include "antitai/tree.hpp"

namespace antitai::detail {

// Nodes of a subtree in children-before-parents order with flattened child
// lists, so a row pass touches only contiguous arrays. Row cells live either
// at the node id or at the postorder position; the latter keeps the row and
// prev accesses of a pass sequential.
enum class RowIndexing { by_node, by_position };

class PostorderLayout {
 public:
  PostorderLayout(const RootedTree& tree, std::span<const NodeId> nodes, RowIndexing indexing)
      : nodes_(nodes.begin(), nodes.end()), slot_of_(tree.size(), kNoSlot) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      slot_of_[nodes_[i]] = indexing == RowIndexing::by_node ? nodes_[i] : i;
      slots_.push_back(slot_of_[nodes_[i]]);
    }
    begin_.reserve(nodes_.size() + 1);
    for (NodeId x : nodes_) {
      begin_.push_back(kids_.size());
      for (NodeId c : tree.children(x)) kids_.push_back(slot_of_[c]);
    }
    begin_.push_back(kids_.size());
  }

  static constexpr std::size_t kNoSlot = static_cast<std::size_t>(-1);

  std::size_t size() const { return nodes_.size(); }
  NodeId node(std::size_t i) const { return nodes_[i]; }
  std::size_t slot(std::size_t i) const { return slots_[i]; }
  // Row cell of node x, or kNoSlot outside the subtree.
  std::size_t slot_of(NodeId x) const { return slot_of_[x]; }
  const std::vector<std::size_t>& slots_by_node() const { return slot_of_; }
  std::span<const std::size_t> child_slots(std::size_t i) const {
    return std::span<const std::size_t>(kids_).subspan(begin_[i], begin_[i + 1] - begin_[i]);
  }

 private:
  std::vector<NodeId> nodes_;
  std::vector<std::size_t> slot_of_;
  std::vector<std::size_t> slots_;
  std::vector<std::size_t> begin_;
  std::vector<std::size_t> kids_;
};

// One row of the path-vs-subtree recurrence: for a fixed path top and the
// current path bottom b,
//   row[x] = w(b, x) + sum_{c in children(x)} row[c]                 (b is the top)
//   row[x] = w(b, x) + max(sum_{c} row[c], prev[x])                  (otherwise)
// where prev is the row of the path ending at the parent of b. Cells follow
// the layout's indexing. mark(x, flag) records whether the prev branch was
// strictly better; ties go to the children sum.
template <class BottomWeight, class Mark>
void gamma_row(const PostorderLayout& layout, BottomWeight w_bottom, const double* prev,
               double* row, Mark mark) {
  const std::size_t n = layout.size();
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId x = layout.node(i);
    const std::size_t at = layout.slot(i);
    double children = 0.0;
    for (std::size_t c : layout.child_slots(i)) children += row[c];
    // Branch-free select: the comparison is data dependent and mispredicts.
    const double other = prev != nullptr ? prev[at] : children;
    const bool took_prev = other > children;
    row[at] = w_bottom(x) + (took_prev ? other : children);
    mark(at, took_prev);
  }
}

// Row flags packed one bit per cell, each row padded to whole words.
class FlagBits {
 public:
  FlagBits() = default;
  FlagBits(std::size_t rows, std::size_t cols)
      : words_per_row_((cols + 63) / 64), words_(rows * words_per_row_, 0) {}

  // Flags must be written at most once per cell.
  void set(std::size_t row, std::size_t col, bool flag) {
    words_[row * words_per_row_ + col / 64] |= std::uint64_t{flag} << (col % 64);
  }
  bool get(std::size_t row, std::size_t col) const {
    return (words_[row * words_per_row_ + col / 64] >> (col % 64)) & 1u;
  }

 private:
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> words_;
};

// Replays the choices recorded by gamma_row. slot_of maps node ids to row
// cells. `path` lists the segment top first; shortened(k, cell) reads the flag
// of the segment that ends at path[k]. emit(path_node, tree_node) is called
// once per selected pair.
template <class Shortened, class Emit>
void gamma_replay(const RootedTree& tree, std::span<const std::size_t> slot_of,
                  NodeId subtree_root, std::span<const NodeId> path, Shortened shortened,
                  Emit emit) {
  std::vector<std::pair<NodeId, std::size_t>> stack;
  stack.emplace_back(subtree_root, path.size() - 1);
  while (!stack.empty()) {
    auto [x, k] = stack.back();
    stack.pop_back();
    emit(path[k], x);
    if (k > 0 && shortened(k, slot_of[x])) {
      stack.emplace_back(x, k - 1);
    } else {
      auto kids = tree.children(x);
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.emplace_back(*it, k);
    }
  }
}

}  // namespace antitai::detail
