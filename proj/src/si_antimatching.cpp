#include "antitai/si_antimatching.hpp"

#include <algorithm>

#include "antitai/error.hpp"

namespace antitai {

namespace {

double oriented_weight(const WeightMatrix& w, Side seg_side, NodeId seg_node, NodeId x) {
  return seg_side == Side::first ? w(seg_node, x) : w(x, seg_node);
}

double fold(SegmentAggregation aggregation, double acc, double w) {
  return aggregation == SegmentAggregation::sum ? acc + w : std::max(acc, w);
}

// Antichain stage values with node weights folded over each segment. The row
// of (top, bottom) is derived from the row of (top, parent(bottom)).
void fill_antichain_stages(detail::AlternatingTables& t, SegmentAggregation aggregation) {
  for (int k = 0; k < 2; ++k) {
    const RootedTree& tx = *t.tree[k];
    const RootedTree& ty = *t.tree[1 - k];
    const std::size_t nx = tx.size();
    const auto& segments = t.segments[1 - k];
    auto& stage = t.stage[k];
    stage.value.assign(segments.count() * nx, 0.0);
    stage.aux.assign(segments.count() * nx, 0.0);
    for (NodeId top : ty.preorder()) {
      for (NodeId bottom : ty.subtree_preorder(top)) {
        const std::size_t s = segments.index(top, bottom);
        double* nw = &stage.aux[s * nx];
        if (bottom == top) {
          for (NodeId z = 0; z < nx; ++z) nw[z] = t.weight(k, z, bottom);
        } else {
          const double* up = &stage.aux[segments.index(top, *ty.parent(bottom)) * nx];
          for (NodeId z = 0; z < nx; ++z) nw[z] = fold(aggregation, up[z], t.weight(k, z, bottom));
        }
        double* alpha = &stage.value[s * nx];
        for (NodeId z : tx.postorder()) {
          double children = 0.0;
          for (NodeId c : tx.children(z)) children += alpha[c];
          alpha[z] = std::max(nw[z], children);
        }
      }
    }
  }
}

}  // namespace

AlphaTable::AlphaTable(const RootedTree& tree, const PathSegment& segment, Side side,
                       SegmentAggregation aggregation)
    : tree_(&tree),
      segment_(segment),
      segment_side_(side),
      aggregation_(aggregation),
      node_weight_(tree.size(), 0.0),
      value_(tree.size(), 0.0) {}

void AlphaTable::recompute() {
  for (NodeId x : tree_->postorder()) {
    double children = 0.0;
    for (NodeId c : tree_->children(x)) children += value_[c];
    value_[x] = std::max(node_weight_[x], children);
  }
}

double AlphaTable::value(NodeId x) const {
  tree_->check_node(x);
  return value_[x];
}

double AlphaTable::node_weight(NodeId x) const {
  tree_->check_node(x);
  return node_weight_[x];
}

AlphaTable alpha_solve(const RootedTree& tree, const PathSegment& seg, const WeightMatrix& w,
                       Side seg_side, SegmentAggregation aggregation) {
  if (seg_side == Side::first) {
    check_shape(seg.tree(), tree, w);
  } else {
    check_shape(tree, seg.tree(), w);
  }
  AlphaTable table(tree, seg, seg_side, aggregation);
  const auto nodes = seg.nodes();
  for (NodeId x = 0; x < tree.size(); ++x) {
    double acc = oriented_weight(w, seg_side, nodes.front(), x);
    for (NodeId s : nodes.subspan(1)) acc = fold(aggregation, acc, oriented_weight(w, seg_side, s, x));
    table.node_weight_[x] = acc;
  }
  table.recompute();
  return table;
}

AlphaTable alpha_extend(const AlphaTable& table, NodeId new_bottom, const WeightMatrix& w) {
  const RootedTree& seg_tree = table.segment().tree();
  if (seg_tree.parent(new_bottom) != table.segment().bottom()) {
    throw InvalidArgument("new segment bottom must be a child of the current bottom");
  }
  AlphaTable next(table.tree(), PathSegment(seg_tree, table.segment().top(), new_bottom),
                  table.segment_side(), table.aggregation());
  for (NodeId x = 0; x < table.tree().size(); ++x) {
    next.node_weight_[x] = fold(table.aggregation(), table.node_weight_[x],
                                oriented_weight(w, table.segment_side(), new_bottom, x));
  }
  next.recompute();
  return next;
}

double SiSolution::f(Side u_side, NodeId u, NodeId v) const {
  const int k = u_side == Side::first ? 0 : 1;
  tables_.tree[k]->check_node(u);
  tables_.tree[1 - k]->check_node(v);
  return tables_.f[k][u * tables_.size(1 - k) + v];
}

SiSolution si_solve(const RootedTree& t1, const RootedTree& t2, const WeightMatrix& w,
                    unsigned threads) {
  detail::AlternatingTables tables(t1, t2, w);
  fill_antichain_stages(tables, SegmentAggregation::max);
  detail::run_alternating(tables, threads);
  return SiSolution(std::move(tables));
}

PairMapping si_reconstruct(const SiSolution& solution, bool prune_zeros) {
  const auto& t = solution.tables();
  std::vector<Pair> pairs;
  auto emit_stage = [&](int k, NodeId sub_root, NodeId top, NodeId bottom) {
    const RootedTree& tx = *t.tree[k];
    const std::size_t nx = tx.size();
    const std::size_t s = t.segments[1 - k].index(top, bottom);
    const double* alpha = &t.stage[k].value[s * nx];
    const double* nw = &t.stage[k].aux[s * nx];
    const PathSegment seg(*t.tree[1 - k], top, bottom);
    std::vector<NodeId> stack{sub_root};
    while (!stack.empty()) {
      const NodeId z = stack.back();
      stack.pop_back();
      double children = 0.0;
      for (NodeId c : tx.children(z)) children += alpha[c];
      if (nw[z] >= children) {
        // Partner: the first segment node, top-down, attaining the folded max.
        for (NodeId y : seg.nodes()) {
          if (t.weight(k, z, y) == nw[z]) {
            if (!prune_zeros || nw[z] > 0.0) pairs.push_back(t.oriented(k, z, y));
            break;
          }
        }
      } else {
        auto kids = tx.children(z);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
      }
    }
  };
  detail::replay_alternating(t, emit_stage);
  return PairMapping(std::move(pairs), t.weights);
}

namespace {

bool pairwise(std::span<const NodeId> nodes, const RootedTree& t, bool want_comparable) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (t.is_comparable(nodes[i], nodes[j]) != want_comparable) return false;
    }
  }
  return true;
}

std::vector<NodeId> image_of(const PairMapping& m, std::span<const NodeId> nodes) {
  std::vector<NodeId> out;
  for (NodeId x : nodes) {
    for (NodeId y : m.image(x)) out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

NodeId anchor_on_path(const RootedTree& t, NodeId x, NodeId leaf) {
  while (!t.is_ancestor_or_equal(x, leaf)) x = *t.parent(x);
  return x;
}

NodeId leftmost_leaf_below(const RootedTree& t, NodeId x) {
  while (!t.is_leaf(x)) x = t.children(x).front();
  return x;
}

}  // namespace

std::variant<DecompositionCertificate, DecompositionFailure> verify_decomposition(
    const RootedTree& t1, const RootedTree& t2, const PairMapping& m) {
  if (auto bad = validate_mapping(t1, t2, m, MappingKind::si)) {
    return DecompositionFailure{"mapping is not an si-antimatching: (" +
                                std::to_string(bad->first.first) + "," +
                                std::to_string(bad->first.second) + ") vs (" +
                                std::to_string(bad->second.first) + "," +
                                std::to_string(bad->second.second) + ")"};
  }
  if (m.empty()) return DecompositionCertificate{};

  const auto matched1 = m.first_nodes();
  std::vector<char> is_matched(t1.size(), 0);
  for (NodeId x : matched1) is_matched[x] = 1;
  std::vector<std::size_t> on_path(t1.size(), 0);
  std::size_t best = 0;
  for (NodeId x : t1.preorder()) {
    on_path[x] = is_matched[x] + (t1.parent(x) ? on_path[*t1.parent(x)] : 0);
    if (t1.is_leaf(x)) best = std::max(best, on_path[x]);
  }

  std::string first_reason;
  for (NodeId leaf : t1.preorder()) {
    if (!t1.is_leaf(leaf) || on_path[leaf] != best) continue;
    DecompositionCertificate cert;
    cert.path1_leaf = leaf;
    for (NodeId x : matched1) {
      (t1.is_ancestor_or_equal(x, leaf) ? cert.path1_matched : cert.antichain1).push_back(x);
    }
    std::string reason;
    if (!pairwise(cert.antichain1, t1, false)) {
      reason = "matched nodes off a maximal path of T1 are not an antichain";
    }
    cert.path2_matched = image_of(m, cert.antichain1);
    cert.antichain2 = image_of(m, cert.path1_matched);
    if (reason.empty() && !pairwise(cert.path2_matched, t2, true)) {
      reason = "images of the T1 antichain do not lie on one root-to-leaf path";
    }
    if (reason.empty() && !pairwise(cert.antichain2, t2, false)) {
      reason = "images of the T1 path nodes are not an antichain";
    }
    if (!reason.empty()) {
      if (first_reason.empty()) first_reason = reason;
      continue;
    }

    NodeId deepest = t2.root();
    for (NodeId y : cert.path2_matched) {
      if (t2.depth(y) > t2.depth(deepest)) deepest = y;
    }
    cert.path2_leaf = leftmost_leaf_below(t2, deepest);
    for (NodeId x : cert.antichain1) cert.anchor1[x] = anchor_on_path(t1, x, leaf);
    for (NodeId y : cert.antichain2) cert.anchor2[y] = anchor_on_path(t2, y, *cert.path2_leaf);
    return cert;
  }
  return DecompositionFailure{first_reason};
}

}  // namespace antitai
