#pragma once

#include <string>
#include <vector>

#include "antitai/io.hpp"
#include "antitai/mapping.hpp"
#include "antitai/tree.hpp"
#include "antitai/weights.hpp"

namespace antitai::testing {

inline RootedTree tree(const std::string& newick) { return parse_newick(newick); }

inline NodeId node(const RootedTree& t, const std::string& label) {
  return find_unique_label(t, label);
}

inline Pair pair(const RootedTree& t1, const std::string& a, const RootedTree& t2,
                 const std::string& b) {
  return Pair{node(t1, a), node(t2, b)};
}

inline WeightMatrix filled(const RootedTree& t1, const RootedTree& t2, double v) {
  return WeightMatrix(t1.size(), t2.size(), v);
}

}  // namespace antitai::testing
