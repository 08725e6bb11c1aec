#include "antitai/tree.hpp"

#include <algorithm>
#include <utility>

#include "antitai/error.hpp"

namespace antitai {

RootedTree::RootedTree(std::vector<std::string> labels,
                       const std::vector<std::optional<NodeId>>& parents)
    : labels_(std::move(labels)) {
  if (labels_.size() != parents.size()) {
    throw InvalidArgument("label and parent arrays differ in length");
  }
  const std::size_t n = labels_.size();
  if (n == 0) throw InvalidArgument("a tree needs at least one node");
  children_.assign(n, {});
  std::size_t roots = 0;
  for (NodeId x = 0; x < n; ++x) {
    if (!parents[x]) {
      ++roots;
      root_ = x;
      continue;
    }
    if (*parents[x] >= n) throw InvalidNode("parent id out of range");
    if (*parents[x] == x) throw InvalidArgument("node is its own parent");
    children_[*parents[x]].push_back(x);
  }
  if (roots != 1) throw InvalidArgument("a tree needs exactly one root");
  finalize();
}

RootedTree RootedTree::from_children(std::vector<std::string> labels,
                                     std::vector<std::vector<NodeId>> children) {
  const std::size_t n = labels.size();
  if (n == 0) throw InvalidArgument("a tree needs at least one node");
  if (children.size() != n) {
    throw InvalidArgument("label and children arrays differ in length");
  }
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& list : children) {
    for (NodeId c : list) {
      if (c >= n) throw InvalidNode("child id out of range");
      ++indegree[c];
    }
  }
  RootedTree t;
  t.labels_ = std::move(labels);
  t.children_ = std::move(children);
  std::size_t roots = 0;
  for (NodeId x = 0; x < n; ++x) {
    if (indegree[x] > 1) throw InvalidArgument("node has several parents");
    if (indegree[x] == 0) {
      ++roots;
      t.root_ = x;
    }
  }
  if (roots != 1) throw InvalidArgument("a tree needs exactly one root");
  t.finalize();
  return t;
}

void RootedTree::finalize() {
  const std::size_t n = labels_.size();
  parent_.assign(n, std::nullopt);
  for (NodeId x = 0; x < n; ++x) {
    for (NodeId c : children_[x]) parent_[c] = x;
  }
  pre_.assign(n, 0);
  post_.assign(n, 0);
  size_.assign(n, 1);
  depth_.assign(n, 0);
  preorder_.clear();
  postorder_.clear();
  preorder_.reserve(n);
  postorder_.reserve(n);

  // Iterative DFS: (node, index of next child to visit).
  std::vector<std::pair<NodeId, std::size_t>> stack;
  stack.emplace_back(root_, 0);
  pre_[root_] = preorder_.size();
  preorder_.push_back(root_);
  while (!stack.empty()) {
    auto& [x, next] = stack.back();
    if (next < children_[x].size()) {
      NodeId c = children_[x][next++];
      if (preorder_.size() >= n) throw InvalidArgument("children lists contain a cycle");
      depth_[c] = depth_[x] + 1;
      pre_[c] = preorder_.size();
      preorder_.push_back(c);
      stack.emplace_back(c, 0);
    } else {
      NodeId done = x;
      post_[done] = postorder_.size();
      postorder_.push_back(done);
      stack.pop_back();
      if (!stack.empty()) size_[stack.back().first] += size_[done];
    }
  }
  if (preorder_.size() != n) throw InvalidArgument("tree is not connected");
}

void RootedTree::check_node(NodeId x) const {
  if (x >= size()) {
    throw InvalidNode("node " + std::to_string(x) + " out of range for tree of size " +
                      std::to_string(size()));
  }
}

const std::string& RootedTree::label(NodeId x) const {
  check_node(x);
  return labels_[x];
}

std::optional<NodeId> RootedTree::parent(NodeId x) const {
  check_node(x);
  return parent_[x];
}

std::span<const NodeId> RootedTree::children(NodeId x) const {
  check_node(x);
  return children_[x];
}

std::size_t RootedTree::pre(NodeId x) const {
  check_node(x);
  return pre_[x];
}

std::size_t RootedTree::post(NodeId x) const {
  check_node(x);
  return post_[x];
}

std::size_t RootedTree::subtree_size(NodeId x) const {
  check_node(x);
  return size_[x];
}

std::size_t RootedTree::depth(NodeId x) const {
  check_node(x);
  return depth_[x];
}

std::span<const NodeId> RootedTree::subtree_preorder(NodeId x) const {
  check_node(x);
  return std::span<const NodeId>(preorder_).subspan(pre_[x], size_[x]);
}

std::span<const NodeId> RootedTree::subtree_postorder(NodeId x) const {
  check_node(x);
  return std::span<const NodeId>(postorder_).subspan(post_[x] + 1 - size_[x], size_[x]);
}

bool RootedTree::is_ancestor_or_equal(NodeId x, NodeId y) const {
  check_node(x);
  check_node(y);
  return pre_[x] <= pre_[y] && post_[y] <= post_[x];
}

bool RootedTree::is_comparable(NodeId x, NodeId y) const {
  return is_ancestor_or_equal(x, y) || is_ancestor_or_equal(y, x);
}

NodeId RootedTree::lca(std::span<const NodeId> nodes) const {
  if (nodes.empty()) throw InvalidArgument("lca of an empty node set");
  NodeId a = nodes.front();
  check_node(a);
  for (NodeId b : nodes.subspan(1)) {
    check_node(b);
    while (!is_ancestor_or_equal(a, b)) a = *parent_[a];
  }
  return a;
}

bool RootedTree::is_chain() const {
  return std::all_of(children_.begin(), children_.end(),
                     [](const auto& c) { return c.size() <= 1; });
}

PathSegment::PathSegment(const RootedTree& tree, NodeId top, NodeId bottom)
    : tree_(&tree), top_(top), bottom_(bottom) {
  if (!tree.is_ancestor_or_equal(top, bottom)) {
    throw InvalidArgument("path top is not an ancestor of path bottom");
  }
  for (NodeId x = bottom;; x = *tree.parent(x)) {
    nodes_.push_back(x);
    if (x == top) break;
  }
  std::reverse(nodes_.begin(), nodes_.end());
}

PathSegment PathSegment::whole_chain(const RootedTree& tree) {
  if (!tree.is_chain()) throw InvalidArgument("tree is not a chain");
  return PathSegment(tree, tree.root(), tree.preorder().back());
}

}  // namespace antitai
