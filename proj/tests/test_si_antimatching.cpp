#include <set>

#include "antitai/error.hpp"
#include "antitai/oracle.hpp"
#include "antitai/si_antimatching.hpp"
#include "doctest.h"
#include "support/helpers.hpp"
#include "support/instances.hpp"

using namespace antitai;
using namespace antitai::testing;

namespace {

bool on_root_path(const RootedTree& t, NodeId x, NodeId leaf) {
  return t.is_ancestor_or_equal(x, leaf);
}

bool antichain(const RootedTree& t, const std::vector<NodeId>& nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (t.is_comparable(nodes[i], nodes[j])) return false;
    }
  }
  return true;
}

std::set<NodeId> image(const PairMapping& m, const std::vector<NodeId>& xs) {
  std::set<NodeId> out;
  for (Pair p : m.pairs()) {
    if (std::find(xs.begin(), xs.end(), p.first) != xs.end()) out.insert(p.second);
  }
  return out;
}

// Independent re-check of every property a certificate claims.
void check_certificate(const RootedTree& t1, const RootedTree& t2, const PairMapping& m,
                       const DecompositionCertificate& c) {
  if (m.empty()) {
    REQUIRE_FALSE(c.path1_leaf);
    return;
  }
  REQUIRE(c.path1_leaf);
  REQUIRE(c.path2_leaf);
  REQUIRE(t1.is_leaf(*c.path1_leaf));
  REQUIRE(t2.is_leaf(*c.path2_leaf));
  std::set<NodeId> matched;
  for (Pair p : m.pairs()) matched.insert(p.first);
  std::set<NodeId> parts(c.path1_matched.begin(), c.path1_matched.end());
  for (NodeId x : c.antichain1) REQUIRE(parts.insert(x).second);
  REQUIRE(parts == matched);
  for (NodeId x : c.path1_matched) REQUIRE(on_root_path(t1, x, *c.path1_leaf));
  for (NodeId x : c.antichain1) REQUIRE_FALSE(on_root_path(t1, x, *c.path1_leaf));
  REQUIRE(antichain(t1, c.antichain1));
  REQUIRE(antichain(t2, c.antichain2));
  REQUIRE(image(m, c.path1_matched) ==
          std::set<NodeId>(c.antichain2.begin(), c.antichain2.end()));
  REQUIRE(image(m, c.antichain1) ==
          std::set<NodeId>(c.path2_matched.begin(), c.path2_matched.end()));
  for (NodeId y : c.path2_matched) REQUIRE(on_root_path(t2, y, *c.path2_leaf));
  // No root-to-leaf path of T1 holds more matched nodes.
  for (NodeId leaf = 0; leaf < t1.size(); ++leaf) {
    if (!t1.is_leaf(leaf)) continue;
    std::size_t count = 0;
    for (NodeId x : matched) count += on_root_path(t1, x, leaf);
    REQUIRE(count <= c.path1_matched.size());
  }
  for (const auto& [x, a] : c.anchor1) {
    REQUIRE(on_root_path(t1, a, *c.path1_leaf));
    REQUIRE(t1.is_ancestor_or_equal(a, x));
    for (NodeId z : t1.children(a)) {
      if (on_root_path(t1, z, *c.path1_leaf)) REQUIRE_FALSE(t1.is_ancestor_or_equal(z, x));
    }
  }
  REQUIRE(c.anchor1.size() == c.antichain1.size());
  REQUIRE(c.anchor2.size() == c.antichain2.size());
}

}  // namespace

TEST_CASE("alpha on small instances") {
  const RootedTree x = tree("x;");
  const RootedTree v = tree("v;");
  WeightMatrix w(1, 1);
  w.set(0, 0, 4);
  CHECK(alpha_solve(x, PathSegment::whole_chain(v), w.transposed(), Side::first).value(0) == 4);

  const RootedTree star = tree("(p,q)r;");
  const RootedTree path = tree("(d)c;");
  const WeightMatrix unit = filled(star, path, 1.0);
  const PathSegment seg = PathSegment::whole_chain(path);
  const AlphaTable sum = alpha_solve(star, seg, unit, Side::second);
  CHECK(sum.node_weight(node(star, "r")) == 2);
  CHECK(sum.value(node(star, "r")) == 4);
  const AlphaTable best = alpha_solve(star, seg, unit, Side::second, SegmentAggregation::max);
  CHECK(best.value(node(star, "r")) == 2);

  const AlphaTable zero = alpha_solve(star, seg, WeightMatrix(3, 2), Side::second);
  for (NodeId y = 0; y < star.size(); ++y) CHECK(zero.value(y) == 0);
  CHECK_THROWS_AS(alpha_solve(star, seg, WeightMatrix(2, 2), Side::second), InvalidArgument);
}

TEST_CASE("alpha extension matches a fresh solve and never decreases") {
  Rng rng(2);
  for (int it = 0; it < 200; ++it) {
    const RootedTree t = random_tree(1, 7, rng);
    const RootedTree s = random_tree(2, 7, rng);
    const WeightMatrix w = random_weights(t.size(), s.size(), rng);
    for (auto agg : {SegmentAggregation::sum, SegmentAggregation::max}) {
      NodeId bottom = s.root();
      AlphaTable table = alpha_solve(t, PathSegment(s, s.root(), bottom), w, Side::second, agg);
      while (!s.is_leaf(bottom)) {
        const auto kids = s.children(bottom);
        const NodeId next = kids[rng() % kids.size()];
        AlphaTable grown = alpha_extend(table, next, w);
        const AlphaTable fresh =
            alpha_solve(t, PathSegment(s, s.root(), next), w, Side::second, agg);
        for (NodeId y = 0; y < t.size(); ++y) {
          REQUIRE(grown.value(y) == fresh.value(y));
          REQUIRE(grown.node_weight(y) == fresh.node_weight(y));
          REQUIRE(grown.value(y) >= table.value(y));
          double children = 0;
          for (NodeId c : t.children(y)) children += grown.value(c);
          REQUIRE(grown.value(y) == std::max(grown.node_weight(y), children));
        }
        table = std::move(grown);
        bottom = next;
      }
      CHECK_THROWS_AS(alpha_extend(table, s.root(), w), InvalidArgument);
    }
  }
}

TEST_CASE("si_solve examples") {
  const RootedTree a = tree("a;");
  const RootedTree b = tree("b;");
  WeightMatrix w(1, 1);
  w.set(0, 0, 7);
  const SiSolution one = si_solve(a, b, w);
  CHECK(one.value() == 7);
  const PairMapping single = si_reconstruct(one);
  REQUIRE(single.size() == 1);

  const RootedTree p1 = tree("(v)u;");
  const RootedTree p2 = tree("(d)c;");
  CHECK(si_solve(p1, p2, filled(p1, p2, 1)).value() == 1);

  const RootedTree star = tree("(p,q)r;");
  const WeightMatrix unit = filled(star, p2, 1.0);
  const SiSolution sol = si_solve(star, p2, unit);
  CHECK(sol.value() == 2);
  const PairMapping m = si_reconstruct(sol);
  CHECK(m.weight() == 2);
  CHECK_FALSE(validate_mapping(star, p2, m, MappingKind::si));
  // Case 2 at the roots already reaches 2 (antichain {p, q} against [c, c])
  // and case 2 wins ties, so both leaves pair with c.
  CHECK(std::ranges::equal(m.pairs(), std::vector<Pair>{pair(star, "p", p2, "c"),
                                                         pair(star, "q", p2, "c")}));
  CHECK(validate_mapping(star, p2,
                         PairMapping({pair(star, "p", p2, "c"), pair(star, "p", p2, "d")}),
                         MappingKind::si));

  const SiSolution zero = si_solve(star, p2, WeightMatrix(3, 2));
  CHECK(zero.value() == 0);
  CHECK_FALSE(validate_mapping(star, p2, si_reconstruct(zero), MappingKind::si));
  CHECK(si_reconstruct(zero, true).empty());

  CHECK_THROWS_AS(si_solve(star, p2, WeightMatrix(2, 2)), InvalidArgument);
}

TEST_CASE("two stars need a split that keeps the segment bottom") {
  // {(a1,b0), (a2,b1), (a2,b2)} weighs 3; the split after (a1,b0) places the
  // antichain {b1,b2} directly below b0.
  const RootedTree t1 = tree("(a1,a2)a0;");
  const RootedTree t2 = tree("(b1,b2)b0;");
  WeightMatrix w(3, 3);
  w.set(node(t1, "a1"), node(t2, "b0"), 1);
  w.set(node(t1, "a2"), node(t2, "b1"), 1);
  w.set(node(t1, "a2"), node(t2, "b2"), 1);
  w.set(node(t1, "a1"), node(t2, "b1"), 1);
  CHECK(brute_si(t1, t2, w).value == 3);
  const SiSolution sol = si_solve(t1, t2, w);
  CHECK(sol.value() == 3);
  const PairMapping m = si_reconstruct(sol);
  CHECK(m.weight() == 3);
  CHECK_FALSE(validate_mapping(t1, t2, m, MappingKind::si));
}

TEST_CASE("f values respect the antichain lower bound") {
  Rng rng(19);
  for (int it = 0; it < 100; ++it) {
    const RootedTree t1 = random_tree(1, 6, rng);
    const RootedTree t2 = random_tree(1, 6, rng);
    const WeightMatrix w = random_weights(t1.size(), t2.size(), rng);
    const SiSolution sol = si_solve(t1, t2, w);
    for (NodeId u = 0; u < t1.size(); ++u) {
      for (NodeId v = 0; v < t2.size(); ++v) {
        for (NodeId v2 : t2.subtree_preorder(v)) {
          const AlphaTable a =
              alpha_solve(t1, PathSegment(t2, v, v2), w, Side::second, SegmentAggregation::max);
          REQUIRE(sol.f(Side::first, u, v) >= a.value(u));
        }
      }
    }
  }
}

TEST_CASE("oracle equivalence, reconstruction and decomposition") {
  Rng rng(23);
  for (int it = 0; it < 500; ++it) {
    const RootedTree t1 = random_tree(1, 6, rng, 'a');
    const RootedTree t2 = random_tree(1, 6, rng, 'b');
    const WeightMatrix w = random_weights(t1.size(), t2.size(), rng);
    const SiSolution sol = si_solve(t1, t2, w);
    REQUIRE(sol.value() == brute_si(t1, t2, w).value);
    const PairMapping m = si_reconstruct(sol);
    REQUIRE_FALSE(validate_mapping(t1, t2, m, MappingKind::si));
    REQUIRE(m.weight() == sol.value());
    const auto cert = verify_decomposition(t1, t2, m);
    REQUIRE(std::holds_alternative<DecompositionCertificate>(cert));
    check_certificate(t1, t2, m, std::get<DecompositionCertificate>(cert));
  }
}

TEST_CASE("symmetry, invariance, domination and scaling") {
  Rng rng(29);
  for (int it = 0; it < 200; ++it) {
    const RootedTree t1 = random_tree(1, 6, rng);
    const RootedTree t2 = random_tree(1, 6, rng);
    const WeightMatrix w = random_weights(t1.size(), t2.size(), rng);
    const double value = si_solve(t1, t2, w).value();
    REQUIRE(si_solve(t2, t1, w.transposed()).value() == value);

    const Relabeled s1 = shuffle_ids(t1, rng);
    const Relabeled s2 = shuffle_ids(t2, rng);
    const WeightMatrix pw = permute_weights(w, s1.perm, s2.perm);
    const SiSolution permuted = si_solve(s1.tree, s2.tree, pw);
    REQUIRE(permuted.value() == value);
    REQUIRE_FALSE(
        validate_mapping(s1.tree, s2.tree, si_reconstruct(permuted), MappingKind::si));

    REQUIRE(value <= brute_anti_tai(build_conflict_graph(t1, t2, w)).value);

    WeightMatrix scaled(w.rows(), w.cols());
    for (NodeId i = 0; i < w.rows(); ++i) {
      for (NodeId j = 0; j < w.cols(); ++j) scaled.set(i, j, 3 * w(i, j));
    }
    REQUIRE(si_solve(t1, t2, scaled).value() == 3 * value);
  }
}

TEST_CASE("thread count changes neither values nor mappings") {
  Rng rng(37);
  for (int it = 0; it < 30; ++it) {
    const RootedTree t1 = random_tree(5, 20, rng);
    const RootedTree t2 = random_tree(5, 20, rng);
    const WeightMatrix w = random_weights(t1.size(), t2.size(), rng);
    const SiSolution one = si_solve(t1, t2, w, 1);
    const PairMapping m1 = si_reconstruct(one);
    for (unsigned threads : {2u, 3u, 8u}) {
      const SiSolution many = si_solve(t1, t2, w, threads);
      REQUIRE(many.value() == one.value());
      const PairMapping m = si_reconstruct(many);
      REQUIRE(std::ranges::equal(m.pairs(), m1.pairs()));
    }
  }
}

TEST_CASE("decomposition of special mappings") {
  const RootedTree star = tree("(p,q)r;");
  const RootedTree path = tree("(d)c;");
  const auto empty = verify_decomposition(star, path, PairMapping{});
  REQUIRE(std::holds_alternative<DecompositionCertificate>(empty));
  const auto& ec = std::get<DecompositionCertificate>(empty);
  CHECK(ec.path1_matched.empty());
  CHECK(ec.antichain1.empty());
  CHECK(ec.antichain2.empty());

  const PairMapping m({pair(star, "p", path, "c"), pair(star, "q", path, "d")});
  const auto res = verify_decomposition(star, path, m);
  REQUIRE(std::holds_alternative<DecompositionCertificate>(res));
  const auto& c = std::get<DecompositionCertificate>(res);
  check_certificate(star, path, m, c);
  // The first maximal leaf in preorder is p, so P1^M = {p} and A1 = {q}.
  CHECK(c.path1_matched == std::vector<NodeId>{node(star, "p")});
  CHECK(c.antichain1 == std::vector<NodeId>{node(star, "q")});
  CHECK(c.path2_matched == std::vector<NodeId>{node(path, "d")});
  CHECK(c.antichain2 == std::vector<NodeId>{node(path, "c")});

  const PairMapping bad({pair(star, "p", path, "c"), pair(star, "p", path, "d")});
  CHECK(std::holds_alternative<DecompositionFailure>(verify_decomposition(star, path, bad)));
}
