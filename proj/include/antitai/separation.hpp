#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "antitai/mapping.hpp"
#include "antitai/tree.hpp"
#include "antitai/weights.hpp"

namespace antitai {

inline constexpr double kDefaultSeparationTolerance = 1e-6;
inline constexpr double kFractionalSlack = 1e-9;

// LP values x(i, j) on the pairs of two trees, each in [0, 1 + slack].
class FractionalSolution {
 public:
  explicit FractionalSolution(WeightMatrix values, double slack = kFractionalSlack);

  const WeightMatrix& values() const { return values_; }
  double operator()(NodeId i, NodeId j) const { return values_(i, j); }

 private:
  WeightMatrix values_;
};

// Clique inequality sum_{(i, j) in pairs} x(i, j) <= 1.
struct CliqueCut {
  PairMapping pairs;
  double lhs = 0.0;
  double violation = 0.0;  // lhs - 1

  // Which routine produced the clique.
  std::string family;
};

// Separates clique inequalities of the Tai mapping polytope. Candidates are
// the heaviest anti Tai mapping found under weights xhat (exact when either
// tree is a chain, the two-tree lower bound otherwise) and the heaviest
// si-antimatching. Returns those with lhs > 1 + tol, without duplicates,
// by descending violation. An empty result proves no clique inequality is
// violated only when one of the trees is a chain.
std::vector<CliqueCut> separate(const RootedTree& t1, const RootedTree& t2,
                                const FractionalSolution& xhat,
                                double tol = kDefaultSeparationTolerance,
                                unsigned threads = 1);

// One line per cut:
//   cut: x[i,j] + x[k,l] + ... <= 1  # violation=V
// indices are node ids (preorder for parsed trees), V has six decimals.
// Throws std::runtime_error if the stream fails.
void emit_cuts(const std::vector<CliqueCut>& cuts, std::ostream& out);

}  // namespace antitai
