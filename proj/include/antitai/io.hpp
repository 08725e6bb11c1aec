#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "antitai/dag.hpp"
#include "antitai/mapping.hpp"
#include "antitai/separation.hpp"
#include "antitai/tree.hpp"
#include "antitai/weights.hpp"

namespace antitai {

// Newick with labeled internal nodes, e.g. "((D)B,C)A;". Node ids follow
// preorder. Branch lengths and [bracketed comments] are skipped; unlabeled
// nodes are named "_k" for preorder id k. Throws ParseError carrying the
// byte offset of the problem.
RootedTree parse_newick(std::string_view text);
std::string write_newick(const RootedTree& tree);

// Whitespace-separated rows "i j w" (node ids, nonnegative weight). Blank
// lines, '#' comments and a leading non-numeric header row are skipped;
// missing entries are 0. ParseError offsets are 1-based line numbers.
WeightMatrix read_weights(std::istream& in, std::size_t rows, std::size_t cols);
// Same layout with header "i j value"; values must lie in [0, 1].
FractionalSolution read_fractional(std::istream& in, std::size_t rows, std::size_t cols);
// w(x, y) = 1 iff the labels are equal.
WeightMatrix label_match_weights(const RootedTree& t1, const RootedTree& t2);

// One "src dst" edge per line, 0-based; a line holding a single index
// declares a vertex, so isolated vertices can be listed. The vertex count is
// one more than the largest index seen.
Dag read_dag(std::istream& in);
// One "i j" pair per line.
PairMapping read_pairs(std::istream& in);

// First node, in preorder, carrying `label`; throws InvalidArgument if there
// is none or more than one.
NodeId find_unique_label(const RootedTree& tree, std::string_view label);

std::string read_file(const std::filesystem::path& path);

}  // namespace antitai
