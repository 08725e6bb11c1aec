#include "antitai/separation.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "antitai/error.hpp"
#include "antitai/lower_bound.hpp"
#include "antitai/path_tree.hpp"
#include "antitai/si_antimatching.hpp"

namespace antitai {

FractionalSolution::FractionalSolution(WeightMatrix values, double slack)
    : values_(std::move(values)) {
  for (NodeId i = 0; i < values_.rows(); ++i) {
    for (NodeId j = 0; j < values_.cols(); ++j) {
      if (values_(i, j) > 1.0 + slack) {
        throw InvalidArgument("fractional value x[" + std::to_string(i) + "," +
                              std::to_string(j) + "] exceeds 1");
      }
    }
  }
}

std::vector<CliqueCut> separate(const RootedTree& t1, const RootedTree& t2,
                                const FractionalSolution& xhat, double tol, unsigned threads) {
  const WeightMatrix& x = xhat.values();
  check_shape(t1, t2, x);
  if (!(tol > 0.0)) throw InvalidArgument("separation tolerance must be positive");

  std::vector<CliqueCut> candidates;
  auto consider = [&](PairMapping m, const char* family) {
    const double lhs = m.weight();
    candidates.push_back(CliqueCut{std::move(m), lhs, lhs - 1.0, family});
  };

  if (t1.is_chain()) {
    auto table = gamma_solve(t2, t2.root(), PathSegment::whole_chain(t1), x, Side::first);
    consider(gamma_reconstruct(table, x), "path_tree");
  } else if (t2.is_chain()) {
    auto table = gamma_solve(t1, t1.root(), PathSegment::whole_chain(t2), x, Side::second);
    consider(gamma_reconstruct(table, x), "path_tree");
  } else {
    consider(anti_tai_lower_bound(t1, t2, x, threads).mapping, "lower_bound");
  }
  consider(si_reconstruct(si_solve(t1, t2, x, threads)), "si_antimatching");

  std::vector<CliqueCut> cuts;
  for (auto& c : candidates) {
    if (c.lhs <= 1.0 + tol) continue;
    const bool seen = std::any_of(cuts.begin(), cuts.end(), [&](const CliqueCut& other) {
      return std::ranges::equal(other.pairs.pairs(), c.pairs.pairs());
    });
    if (!seen) cuts.push_back(std::move(c));
  }
  std::stable_sort(cuts.begin(), cuts.end(), [](const CliqueCut& a, const CliqueCut& b) {
    return a.violation > b.violation;
  });
  return cuts;
}

void emit_cuts(const std::vector<CliqueCut>& cuts, std::ostream& out) {
  for (const CliqueCut& c : cuts) {
    out << "cut: ";
    bool first = true;
    for (Pair p : c.pairs.pairs()) {
      if (!first) out << " + ";
      first = false;
      out << "x[" << p.first << ',' << p.second << ']';
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", c.violation);
    out << " <= 1  # violation=" << buf << '\n';
  }
  if (!out) throw std::runtime_error("failed to write cuts");
}

}  // namespace antitai
