#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace antitai {

// Dense node index local to one tree or DAG.
using NodeId = std::size_t;

// Immutable rooted unordered tree stored as an arena of nodes.
//
// Ancestor queries are answered in O(1) from preorder/postorder ranks:
// x is an ancestor-or-equal of y iff pre(x) <= pre(y) and post(y) <= post(x).
// Children lists keep the order they were given in; that order only affects
// traversal order (and therefore tie-breaking), never any optimal value.
class RootedTree {
 public:
  // parents[i] is empty for exactly one node, the root. Children are listed in
  // increasing id order.
  RootedTree(std::vector<std::string> labels,
             const std::vector<std::optional<NodeId>>& parents);

  // Build from explicit children lists; the order of each list is kept.
  static RootedTree from_children(std::vector<std::string> labels,
                                  std::vector<std::vector<NodeId>> children);

  std::size_t size() const { return labels_.size(); }
  NodeId root() const { return root_; }

  const std::string& label(NodeId x) const;
  std::optional<NodeId> parent(NodeId x) const;
  std::span<const NodeId> children(NodeId x) const;
  bool is_leaf(NodeId x) const { return children(x).empty(); }

  std::size_t pre(NodeId x) const;
  std::size_t post(NodeId x) const;
  std::size_t subtree_size(NodeId x) const;
  std::size_t depth(NodeId x) const;

  // Nodes listed by preorder / postorder rank.
  std::span<const NodeId> preorder() const { return preorder_; }
  std::span<const NodeId> postorder() const { return postorder_; }

  // tau(x) as a contiguous slice of the preorder sequence, x first.
  std::span<const NodeId> subtree_preorder(NodeId x) const;
  // tau(x) as a contiguous slice of the postorder sequence, x last.
  std::span<const NodeId> subtree_postorder(NodeId x) const;

  bool is_ancestor_or_equal(NodeId x, NodeId y) const;
  bool is_comparable(NodeId x, NodeId y) const;
  // Partial-order view shared with Dag.
  bool leq(NodeId x, NodeId y) const { return is_ancestor_or_equal(x, y); }

  NodeId lca(std::span<const NodeId> nodes) const;

  // True iff every node has at most one child.
  bool is_chain() const;

  void check_node(NodeId x) const;

 private:
  RootedTree() = default;
  void finalize();

  std::vector<std::string> labels_;
  std::vector<std::optional<NodeId>> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::size_t> pre_;
  std::vector<std::size_t> post_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> depth_;
  std::vector<NodeId> preorder_;
  std::vector<NodeId> postorder_;
  NodeId root_ = 0;
};

// The node sequence [top, bottom] along parent links of one tree.
class PathSegment {
 public:
  PathSegment(const RootedTree& tree, NodeId top, NodeId bottom);

  // The whole tree, which must be a chain, from root to its leaf.
  static PathSegment whole_chain(const RootedTree& tree);
  // A segment borrows its tree, so temporaries are rejected.
  PathSegment(RootedTree&&, NodeId, NodeId) = delete;
  static PathSegment whole_chain(RootedTree&&) = delete;

  const RootedTree& tree() const { return *tree_; }
  NodeId top() const { return top_; }
  NodeId bottom() const { return bottom_; }
  std::size_t length() const { return nodes_.size(); }
  // Top first.
  std::span<const NodeId> nodes() const { return nodes_; }

 private:
  const RootedTree* tree_;
  NodeId top_;
  NodeId bottom_;
  std::vector<NodeId> nodes_;
};

}  // namespace antitai
