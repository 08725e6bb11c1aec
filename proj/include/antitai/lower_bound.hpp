#pragma once

#include "antitai/detail/alternating.hpp"
#include "antitai/mapping.hpp"
#include "antitai/tree.hpp"
#include "antitai/weights.hpp"

namespace antitai {

struct LowerBound {
  double value = 0.0;
  // An anti Tai mapping of weight `value`, pairs oriented (T1, T2).
  PairMapping mapping;
};

// Polynomial lower bound on the maximum-weight anti Tai mapping of two
// arbitrary trees: the alternating path/subtree-family recurrence with each
// stage solved exactly as a path-vs-subtree anti Tai problem. The bound is
// exact when either tree is a chain. O(|V1|^2 |V2|^2).
LowerBound anti_tai_lower_bound(const RootedTree& t1, const RootedTree& t2,
                                const WeightMatrix& w, unsigned threads = 1,
                                bool prune_zeros = false);

}  // namespace antitai
