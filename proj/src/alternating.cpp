#include "antitai/detail/alternating.hpp"

#include <algorithm>
#include <limits>
#include <thread>

namespace antitai::detail {

SegmentIndex::SegmentIndex(const RootedTree& tree) : tree_(&tree), offset_(tree.size(), 0) {
  for (NodeId x : tree.preorder()) {
    offset_[x] = count_;
    count_ += tree.subtree_size(x);
  }
}

AlternatingTables::AlternatingTables(const RootedTree& t1, const RootedTree& t2,
                                     const WeightMatrix& w)
    : tree{&t1, &t2}, weights(w), segments{SegmentIndex(t1), SegmentIndex(t2)} {
  check_shape(t1, t2, w);
  for (int k = 0; k < 2; ++k) {
    f[k].assign(size(k) * size(1 - k), 0.0);
    choice[k].assign(size(k) * size(1 - k), FChoice{});
  }
}

double AlternatingTables::value() const {
  const std::size_t a = tree[0]->root() * size(1) + tree[1]->root();
  const std::size_t b = tree[1]->root() * size(0) + tree[0]->root();
  return std::max(f[0][a], f[1][b]);
}

int AlternatingTables::best_orientation() const {
  const std::size_t a = tree[0]->root() * size(1) + tree[1]->root();
  const std::size_t b = tree[1]->root() * size(0) + tree[0]->root();
  return f[1][b] > f[0][a] ? 1 : 0;
}

namespace {

struct Scratch {
  std::vector<double> acc;
  std::vector<double> children_sum;
};

// Computes f[k](x, y) assuming every f[1 - k](y', x') with y' in the subtree
// of y and x' strictly below x is final. Unlike the textbook recurrence, the
// split may keep y' = y: the next stage then places its antichain anywhere in
// the subtree of y. Stars need this, e.g. r(p,q) vs s(a,b) with
// {(p,s), (q,a), (q,b)}. Progress is kept because x' descends strictly.
void compute_cell(AlternatingTables& t, int k, NodeId x, NodeId y, Scratch& scratch) {
  const RootedTree& tx = *t.tree[k];
  const RootedTree& ty = *t.tree[1 - k];
  const std::size_t nx = tx.size();
  const std::size_t ny = ty.size();
  const std::vector<double>& stage = t.stage[k].value;
  const std::vector<double>& f_swapped = t.f[1 - k];

  double best = -std::numeric_limits<double>::infinity();
  FChoice pick;
  const auto ys = ty.subtree_preorder(y);
  for (NodeId y2 : ys) {
    const double v = stage[t.segments[1 - k].index(y, y2) * nx + x];
    if (v > best) {
      best = v;
      pick = FChoice{false, 0, y2};
    }
  }

  const auto xs = tx.subtree_preorder(x);
  if (xs.size() > 1) {
    auto& acc = scratch.acc;
    auto& cs = scratch.children_sum;
    for (NodeId y2 : ys) {
      const double* base = &stage[t.segments[1 - k].index(y, y2) * nx];
      const double* f_row = &f_swapped[y2 * nx];
      // acc[x2] = stage values of the subtrees hanging off the path [x, x2),
      // accumulated while walking down in preorder.
      acc[x] = 0.0;
      double s = 0.0;
      for (NodeId c : tx.children(x)) s += base[c];
      cs[x] = s;
      for (NodeId x2 : xs.subspan(1)) {
        const NodeId p = *tx.parent(x2);
        acc[x2] = acc[p] + (cs[p] - base[x2]);
        const double v = f_row[x2] + acc[x2];
        if (v > best) {
          best = v;
          pick = FChoice{true, x2, y2};
        }
        double sc = 0.0;
        for (NodeId c : tx.children(x2)) sc += base[c];
        cs[x2] = sc;
      }
    }
  }
  t.f[k][x * ny + y] = best;
  t.choice[k][x * ny + y] = pick;
}

}  // namespace

void run_alternating(AlternatingTables& t, unsigned threads) {
  const RootedTree& t1 = *t.tree[0];
  const RootedTree& t2 = *t.tree[1];
  const std::size_t scratch_size = std::max(t1.size(), t2.size());
  const auto ys = t2.preorder();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(ys.size())));

  auto work = [&](int phase, NodeId x, std::size_t begin, std::size_t end, Scratch& scratch) {
    // f[1](y, x) reads f[0](x, y') for y' below y, so the whole f[0] row of x
    // must be final before the f[1] column starts.
    if (phase == 0) {
      for (std::size_t i = begin; i < end; ++i) compute_cell(t, 0, x, ys[i], scratch);
    } else {
      for (std::size_t i = begin; i < end; ++i) compute_cell(t, 1, ys[i], x, scratch);
    }
  };

  std::vector<Scratch> scratch(threads, Scratch{std::vector<double>(scratch_size),
                                                std::vector<double>(scratch_size)});
  for (NodeId x : t1.postorder()) {
    for (int phase = 0; phase < 2; ++phase) {
      if (threads == 1) {
        work(phase, x, 0, ys.size(), scratch[0]);
        continue;
      }
      std::vector<std::jthread> pool;
      const std::size_t chunk = (ys.size() + threads - 1) / threads;
      for (unsigned w = 0; w < threads; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(ys.size(), begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(
            [&, phase, x, begin, end, w] { work(phase, x, begin, end, scratch[w]); });
      }
    }
  }
}

void replay_alternating(
    const AlternatingTables& t,
    const std::function<void(int, NodeId, NodeId, NodeId)>& emit_stage) {
  int k = t.best_orientation();
  NodeId x = t.tree[k]->root();
  NodeId y = t.tree[1 - k]->root();
  while (true) {
    const RootedTree& tx = *t.tree[k];
    const FChoice pick = t.choice[k][x * t.size(1 - k) + y];
    if (!pick.split) {
      emit_stage(k, x, y, pick.seg_bottom);
      return;
    }
    // Subtrees hanging off the path [x, p(next)], excluding the path itself.
    NodeId on_path = pick.next;
    NodeId z = *tx.parent(on_path);
    while (true) {
      for (NodeId c : tx.children(z)) {
        if (c != on_path) emit_stage(k, c, y, pick.seg_bottom);
      }
      if (z == x) break;
      on_path = z;
      z = *tx.parent(z);
    }
    const NodeId next_x = pick.seg_bottom;
    const NodeId next_y = pick.next;
    k = 1 - k;
    x = next_x;
    y = next_y;
  }
}

}  // namespace antitai::detail
