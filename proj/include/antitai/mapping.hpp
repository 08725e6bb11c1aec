#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "antitai/error.hpp"
#include "antitai/tree.hpp"
#include "antitai/weights.hpp"

namespace antitai {

// (node of the first structure, node of the second structure).
struct Pair {
  NodeId first = 0;
  NodeId second = 0;

  friend auto operator<=>(const Pair&, const Pair&) = default;
};

// A set of pairs, kept sorted, with its total weight.
class PairMapping {
 public:
  PairMapping() = default;
  // Weight is left at 0. Throws InvalidArgument on duplicate pairs.
  explicit PairMapping(std::vector<Pair> pairs);
  // Sums w over the sorted pairs. Throws InvalidNode on out-of-range pairs.
  PairMapping(std::vector<Pair> pairs, const WeightMatrix& w);

  std::span<const Pair> pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  double weight() const { return weight_; }
  bool contains(Pair p) const;

  // M(x) for x in the first structure, sorted.
  std::vector<NodeId> image(NodeId x) const;
  // V1^M and V2^M, sorted.
  std::vector<NodeId> first_nodes() const;
  std::vector<NodeId> second_nodes() const;

 private:
  std::vector<Pair> pairs_;
  double weight_ = 0.0;
};

enum class MappingKind { anti_tai, si, tai };

std::string_view to_string(MappingKind kind);
// Accepts "anti_tai", "si" and "tai".
std::optional<MappingKind> parse_mapping_kind(std::string_view text);

// Anything with size() and a reflexive partial order leq(a, b); both
// RootedTree (ancestor-or-equal) and Dag (reachability) qualify.
template <class T>
concept PartialOrder = requires(const T& t, NodeId a) {
  { t.size() } -> std::convertible_to<std::size_t>;
  { t.leq(a, a) } -> std::convertible_to<bool>;
};

namespace detail {

template <PartialOrder O1, PartialOrder O2>
void check_distinct_pairs(const O1& t1, const O2& t2, Pair e, Pair f) {
  if (e.first >= t1.size() || f.first >= t1.size() || e.second >= t2.size() ||
      f.second >= t2.size()) {
    throw InvalidNode("pair refers to a node outside its structure");
  }
  if (e == f) throw InvalidArgument("pair predicates are defined for distinct pairs only");
}

}  // namespace detail

// ((x <= x') <=> (y !<= y')) or ((x' <= x) <=> (y' !<= y)), for e = (x, y), f = (x', y').
template <PartialOrder O1, PartialOrder O2>
bool is_anti_tai_pair(const O1& t1, const O2& t2, Pair e, Pair f) {
  detail::check_distinct_pairs(t1, t2, e, f);
  const bool a = t1.leq(e.first, f.first);
  const bool b = t2.leq(e.second, f.second);
  const bool c = t1.leq(f.first, e.first);
  const bool d = t2.leq(f.second, e.second);
  return (a == !b) || (c == !d);
}

// (x ~ x') <=> (y !~ y'), where ~ means "on one root-to-leaf path".
template <PartialOrder O1, PartialOrder O2>
bool is_si_pair(const O1& t1, const O2& t2, Pair e, Pair f) {
  detail::check_distinct_pairs(t1, t2, e, f);
  const bool comparable1 = t1.leq(e.first, f.first) || t1.leq(f.first, e.first);
  const bool comparable2 = t2.leq(e.second, f.second) || t2.leq(f.second, e.second);
  return comparable1 == !comparable2;
}

// ((x <= x') <=> (y <= y')) and ((x' <= x) <=> (y' <= y)).
template <PartialOrder O1, PartialOrder O2>
bool is_tai_pair(const O1& t1, const O2& t2, Pair e, Pair f) {
  detail::check_distinct_pairs(t1, t2, e, f);
  return t1.leq(e.first, f.first) == t2.leq(e.second, f.second) &&
         t1.leq(f.first, e.first) == t2.leq(f.second, e.second);
}

template <PartialOrder O1, PartialOrder O2>
bool pair_predicate(MappingKind kind, const O1& t1, const O2& t2, Pair e, Pair f) {
  switch (kind) {
    case MappingKind::anti_tai:
      return is_anti_tai_pair(t1, t2, e, f);
    case MappingKind::si:
      return is_si_pair(t1, t2, e, f);
    case MappingKind::tai:
      return is_tai_pair(t1, t2, e, f);
  }
  return false;
}

// Two elements of a mapping that fail the kind's predicate.
struct Violation {
  Pair first;
  Pair second;
};

// Empty result means every unordered pair of distinct elements satisfies the
// predicate; otherwise the lexicographically first offending pair-of-pairs.
template <PartialOrder O1, PartialOrder O2>
std::optional<Violation> validate_mapping(const O1& t1, const O2& t2, const PairMapping& m,
                                          MappingKind kind) {
  const auto pairs = m.pairs();
  for (Pair p : pairs) {
    if (p.first >= t1.size() || p.second >= t2.size()) {
      throw InvalidNode("mapping refers to a node outside its structure");
    }
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (!pair_predicate(kind, t1, t2, pairs[i], pairs[j])) {
        return Violation{pairs[i], pairs[j]};
      }
    }
  }
  return std::nullopt;
}

}  // namespace antitai
