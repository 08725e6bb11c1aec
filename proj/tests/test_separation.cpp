#include <sstream>

#include "antitai/error.hpp"
#include "antitai/oracle.hpp"
#include "antitai/path_tree.hpp"
#include "antitai/separation.hpp"
#include "doctest.h"
#include "support/helpers.hpp"
#include "support/instances.hpp"

using namespace antitai;
using namespace antitai::testing;

TEST_CASE("separation examples") {
  const RootedTree p = tree("(v)u;");
  const RootedTree t = tree("(y)x;");
  CHECK(separate(p, t, FractionalSolution(WeightMatrix(2, 2))).empty());

  WeightMatrix x(2, 2);
  x.set(node(p, "u"), node(t, "y"), 1);
  x.set(node(p, "v"), node(t, "x"), 1);
  x.set(node(p, "v"), node(t, "y"), 1);
  const auto cuts = separate(p, t, FractionalSolution(x));
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].lhs == 3);
  CHECK(cuts[0].violation == 2);
  CHECK(cuts[0].family == "path_tree");
  CHECK_FALSE(validate_mapping(p, t, cuts[0].pairs, MappingKind::anti_tai));
  std::ostringstream out;
  emit_cuts(cuts, out);
  CHECK(out.str() == "cut: x[0,1] + x[1,0] + x[1,1] <= 1  # violation=2.000000\n");

  const RootedTree a = tree("a;");
  const RootedTree b = tree("b;");
  CHECK(separate(a, b, FractionalSolution(WeightMatrix(1, 1, 1.0))).empty());
}

TEST_CASE("emit_cuts formatting") {
  std::ostringstream empty;
  emit_cuts({}, empty);
  CHECK(empty.str().empty());
  WeightMatrix w(2, 2);
  w.set(0, 1, 0.75);
  w.set(1, 0, 0.5);
  const CliqueCut cut{PairMapping({Pair{0, 1}, Pair{1, 0}}, w), 1.25, 0.25, "si_antimatching"};
  std::ostringstream out;
  emit_cuts({cut}, out);
  CHECK(out.str() == "cut: x[0,1] + x[1,0] <= 1  # violation=0.250000\n");
  std::ostringstream failed;
  failed.setstate(std::ios::badbit);
  CHECK_THROWS(emit_cuts({cut}, failed));
}

TEST_CASE("input errors") {
  const RootedTree p = tree("(v)u;");
  const RootedTree t = tree("(y)x;");
  WeightMatrix big(2, 2);
  big.set(0, 0, 1.5);
  CHECK_THROWS_AS(FractionalSolution{big}, InvalidArgument);
  big.set(0, 0, 1.0 + 1e-12);
  CHECK_NOTHROW(FractionalSolution{big});
  const FractionalSolution ok{WeightMatrix(2, 2)};
  CHECK_THROWS_AS(separate(p, t, ok, 0.0), InvalidArgument);
  CHECK_THROWS_AS(separate(p, t, ok, -1.0), InvalidArgument);
  CHECK_THROWS_AS(separate(p, tree("x;"), ok), InvalidArgument);
}

TEST_CASE("soundness against every Tai mapping and determinism") {
  Rng rng(61);
  for (int it = 0; it < 200; ++it) {
    const RootedTree t1 = random_tree(1, 6, rng);
    const RootedTree t2 = random_tree(1, 6, rng);
    const FractionalSolution xhat(random_fractional(t1.size(), t2.size(), rng));
    const auto cuts = separate(t1, t2, xhat);
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const CliqueCut& c = cuts[i];
      REQUIRE_FALSE(validate_mapping(t1, t2, c.pairs, MappingKind::anti_tai));
      REQUIRE(c.lhs > 1 + kDefaultSeparationTolerance);
      REQUIRE(c.violation == doctest::Approx(c.lhs - 1));
      if (i > 0) REQUIRE(cuts[i - 1].violation >= c.violation);
      for (std::size_t j = 0; j < i; ++j) {
        REQUIRE_FALSE(std::ranges::equal(cuts[j].pairs.pairs(), c.pairs.pairs()));
      }
    }
    // With weight 1 on the cut's pairs, the heaviest Tai mapping counts the
    // most cut pairs any Tai mapping can hold; that must be at most one.
    for (const CliqueCut& c : cuts) {
      WeightMatrix indicator(t1.size(), t2.size());
      for (Pair p : c.pairs.pairs()) indicator.set(p.first, p.second, 1.0);
      REQUIRE(brute_tai(build_conflict_graph(t1, t2, indicator)).value <= 1);
    }
    std::ostringstream a, b;
    emit_cuts(cuts, a);
    emit_cuts(separate(t1, t2, xhat), b);
    REQUIRE(a.str() == b.str());
    std::ostringstream c3;
    emit_cuts(separate(t1, t2, xhat, kDefaultSeparationTolerance, 3), c3);
    REQUIRE(a.str() == c3.str());
  }
}

TEST_CASE("completeness on chains") {
  Rng rng(67);
  int violated = 0;
  for (int it = 0; it < 300; ++it) {
    const RootedTree chain = make_tree(1 + rng() % 5, Shape::chain, rng);
    const RootedTree t = random_tree(1, 6, rng);
    const bool flip = rng() % 2;
    const RootedTree& t1 = flip ? t : chain;
    const RootedTree& t2 = flip ? chain : t;
    const FractionalSolution xhat(random_fractional(t1.size(), t2.size(), rng));
    const double best = brute_anti_tai(build_conflict_graph(t1, t2, xhat.values())).value;
    const auto cuts = separate(t1, t2, xhat);
    if (best > 1 + kDefaultSeparationTolerance) {
      ++violated;
      REQUIRE_FALSE(cuts.empty());
      REQUIRE(cuts.front().lhs == doctest::Approx(best).epsilon(1e-12));
    } else {
      REQUIRE(cuts.empty());
    }
  }
  CHECK(violated > 50);
}
