#include "antitai/path_tree.hpp"

#include <algorithm>
#include <cstdlib>
#include <new>
#include <string>

#if defined(__linux__)
#include <sys/mman.h>
#endif

#include "antitai/detail/gamma_rows.hpp"
#include "antitai/error.hpp"

namespace antitai {

namespace {

// Uninitialized storage for the value table. Large tables ask for huge pages,
// which cuts page faults and TLB misses once the table outgrows the caches.
std::shared_ptr<double[]> allocate_values(std::size_t count) {
  constexpr std::size_t kHugePage = std::size_t{2} << 20;
  const std::size_t bytes = std::max<std::size_t>(count, 1) * sizeof(double);
  if (bytes < kHugePage) return std::make_unique_for_overwrite<double[]>(count);
  const std::size_t rounded = (bytes + kHugePage - 1) / kHugePage * kHugePage;
  void* p = std::aligned_alloc(kHugePage, rounded);
  if (p == nullptr) throw std::bad_alloc();
#if defined(MADV_HUGEPAGE)
  madvise(p, rounded, MADV_HUGEPAGE);
#endif
  return std::shared_ptr<double[]>(static_cast<double*>(p), [](double* q) { std::free(q); });
}

}  // namespace

GammaTable::GammaTable(const RootedTree& tree, NodeId tree_root, const PathSegment& path,
                       Side side)
    : tree_(&tree),
      tree_root_(tree_root),
      path_(path),
      path_side_(side),
      values_(allocate_values(path.length() * tree.subtree_size(tree_root))),
      shorten_(path.length(), tree.subtree_size(tree_root)) {}

double GammaTable::at(NodeId x, std::size_t k) const {
  tree_->check_node(x);
  if (!tree_->is_ancestor_or_equal(tree_root_, x)) {
    throw InvalidArgument("node lies outside the solved subtree");
  }
  if (k >= path_.length()) throw InvalidArgument("path index out of range");
  return values_[k * tree_->subtree_size(tree_root_) + slot_of_[x]];
}

bool GammaTable::shortened(NodeId x, std::size_t k) const {
  tree_->check_node(x);
  if (!tree_->is_ancestor_or_equal(tree_root_, x)) {
    throw InvalidArgument("node lies outside the solved subtree");
  }
  if (k >= path_.length()) throw InvalidArgument("path index out of range");
  return shorten_.get(k, slot_of_[x]);
}

GammaTable gamma_solve(const RootedTree& tree, NodeId tree_root, const PathSegment& path,
                       const WeightMatrix& w, Side path_side) {
  tree.check_node(tree_root);
  if (&path.tree() == &tree) {
    throw InvalidArgument("the path must lie in the other structure than the tree");
  }
  if (path_side == Side::first) {
    check_shape(path.tree(), tree, w);
  } else {
    check_shape(tree, path.tree(), w);
  }

  GammaTable table(tree, tree_root, path, path_side);
  const std::size_t n = tree.subtree_size(tree_root);
  const detail::PostorderLayout layout(tree, tree.subtree_postorder(tree_root),
                                       detail::RowIndexing::by_position);
  table.slot_of_ = layout.slots_by_node();
  const auto chain = path.nodes();
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const NodeId bottom = chain[k];
    const double* prev = k == 0 ? nullptr : &table.values_.get()[(k - 1) * n];
    double* row = &table.values_.get()[k * n];
    auto mark = [&, k](std::size_t x, bool flag) { table.shorten_.set(k, x, flag); };
    if (path_side == Side::first) {
      detail::gamma_row(layout, [&](NodeId x) { return w(bottom, x); }, prev, row, mark);
      continue;
    }
    detail::gamma_row(layout, [&](NodeId x) { return w(x, bottom); }, prev, row, mark);
  }
  table.value_ = table.values_[(chain.size() - 1) * n + layout.slot_of(tree_root)];
  return table;
}

PairMapping gamma_reconstruct(const GammaTable& table, const WeightMatrix& w,
                              bool prune_zeros) {
  std::vector<Pair> pairs;
  auto shortened = [&](std::size_t k, std::size_t x) { return table.shorten_.get(k, x); };
  detail::gamma_replay(table.tree(), table.slot_of_, table.tree_root(), table.path().nodes(),
                       shortened,
                       [&](NodeId path_node, NodeId tree_node) {
                         Pair p = table.path_side() == Side::first
                                      ? Pair{path_node, tree_node}
                                      : Pair{tree_node, path_node};
                         if (!prune_zeros || w(p.first, p.second) > 0.0) pairs.push_back(p);
                       });
  return PairMapping(std::move(pairs), w);
}

double path_path_solve(const PathSegment& p1, const PathSegment& p2, const WeightMatrix& w) {
  check_shape(p1.tree(), p2.tree(), w);
  const auto a = p1.nodes();
  const auto b = p2.nodes();
  // below[j]: gamma of the unary subtree starting at b[j] for the current
  // path prefix; below[b.size()] is the empty subtree.
  std::vector<double> prev(b.size() + 1, 0.0);
  std::vector<double> cur(b.size() + 1, 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t j = b.size(); j-- > 0;) {
      const double children = cur[j + 1];
      const double best = k == 0 ? children : std::max(children, prev[j]);
      cur[j] = w(a[k], b[j]) + best;
    }
    std::swap(prev, cur);
  }
  return prev[0];
}

}  // namespace antitai
