#include "antitai/lower_bound.hpp"

#include <array>
#include <numeric>

#include "antitai/detail/gamma_rows.hpp"

namespace antitai {

namespace {

// gamma(x; top, bottom) for every node x of tree k against every segment of
// the other tree. Each row extends the row of (top, parent(bottom)).
void fill_gamma_stages(detail::AlternatingTables& t) {
  for (int k = 0; k < 2; ++k) {
    const RootedTree& tx = *t.tree[k];
    const RootedTree& ty = *t.tree[1 - k];
    const std::size_t nx = tx.size();
    const auto& segments = t.segments[1 - k];
    auto& stage = t.stage[k];
    stage.value.assign(segments.count() * nx, 0.0);
    stage.flag.assign(segments.count() * nx, 0);
    const detail::PostorderLayout layout(tx, tx.postorder(), detail::RowIndexing::by_node);
    for (NodeId top : ty.preorder()) {
      for (NodeId bottom : ty.subtree_preorder(top)) {
        const std::size_t s = segments.index(top, bottom);
        const double* prev =
            bottom == top ? nullptr
                          : &stage.value[segments.index(top, *ty.parent(bottom)) * nx];
        detail::gamma_row(
            layout, [&](NodeId z) { return t.weight(k, z, bottom); }, prev,
            &stage.value[s * nx],
            [flag = &stage.flag[s * nx]](std::size_t x, bool f) { flag[x] = f; });
      }
    }
  }
}

}  // namespace

LowerBound anti_tai_lower_bound(const RootedTree& t1, const RootedTree& t2,
                                const WeightMatrix& w, unsigned threads, bool prune_zeros) {
  detail::AlternatingTables t(t1, t2, w);
  fill_gamma_stages(t);
  detail::run_alternating(t, threads);

  // Stage rows are indexed by node id.
  std::array<std::vector<std::size_t>, 2> slot_of;
  for (int k = 0; k < 2; ++k) {
    slot_of[k].resize(t.tree[k]->size());
    std::iota(slot_of[k].begin(), slot_of[k].end(), std::size_t{0});
  }
  std::vector<Pair> pairs;
  auto emit_stage = [&](int k, NodeId sub_root, NodeId top, NodeId bottom) {
    const RootedTree& tx = *t.tree[k];
    const std::size_t nx = tx.size();
    const PathSegment seg(*t.tree[1 - k], top, bottom);
    const auto path = seg.nodes();
    auto shortened = [&](std::size_t i, std::size_t x) {
      return t.stage[k].flag[t.segments[1 - k].index(top, path[i]) * nx + x] != 0;
    };
    detail::gamma_replay(tx, slot_of[k], sub_root, path, shortened,
                         [&](NodeId path_node, NodeId tree_node) {
                           if (!prune_zeros || t.weight(k, tree_node, path_node) > 0.0) {
                             pairs.push_back(t.oriented(k, tree_node, path_node));
                           }
                         });
  };
  detail::replay_alternating(t, emit_stage);
  return LowerBound{t.value(), PairMapping(std::move(pairs), w)};
}

}  // namespace antitai
