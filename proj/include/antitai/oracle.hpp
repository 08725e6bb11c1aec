#pragma once

#include <cstddef>
#include <vector>

#include "antitai/bitset.hpp"
#include "antitai/error.hpp"
#include "antitai/mapping.hpp"
#include "antitai/weights.hpp"

namespace antitai {

inline constexpr std::size_t kDefaultPairCap = 36;

// Graph on all pairs V1 x V2; vertex v stands for the pair (v / cols, v % cols).
// In the conflict graph two vertices are adjacent iff their pairs satisfy the
// anti Tai predicate, so cliques are anti Tai mappings and independent sets
// are Tai mappings.
class ConflictGraph {
 public:
  ConflictGraph(WeightMatrix w, std::vector<BitRow> adjacency);

  std::size_t size() const { return adjacency_.size(); }
  std::size_t rows() const { return weights_.rows(); }
  std::size_t cols() const { return weights_.cols(); }
  const WeightMatrix& weights() const { return weights_; }
  double weight(std::size_t v) const { return weights_(v / cols(), v % cols()); }
  Pair pair(std::size_t v) const { return Pair{v / cols(), v % cols()}; }
  bool adjacent(std::size_t a, std::size_t b) const { return adjacency_[a].test(b); }
  const BitRow& neighbours(std::size_t v) const { return adjacency_[v]; }

  ConflictGraph complement() const;

 private:
  WeightMatrix weights_;
  std::vector<BitRow> adjacency_;
};

struct OracleResult {
  double value = 0.0;
  PairMapping mapping;
};

namespace detail {

inline void check_cap(std::size_t pairs, std::size_t cap) {
  if (pairs > cap) throw SizeLimitError(pairs, cap);
}

template <PartialOrder O1, PartialOrder O2>
ConflictGraph build_pair_graph(const O1& t1, const O2& t2, const WeightMatrix& w,
                               MappingKind kind, std::size_t cap) {
  check_shape(t1, t2, w);
  const std::size_t n = t1.size() * t2.size();
  check_cap(n, cap);
  std::vector<BitRow> adj(n, BitRow(n));
  for (std::size_t a = 0; a < n; ++a) {
    const Pair pa{a / t2.size(), a % t2.size()};
    for (std::size_t b = a + 1; b < n; ++b) {
      const Pair pb{b / t2.size(), b % t2.size()};
      if (pair_predicate(kind, t1, t2, pa, pb)) {
        adj[a].set(b);
        adj[b].set(a);
      }
    }
  }
  return ConflictGraph(w, std::move(adj));
}

}  // namespace detail

// Adjacency from the anti Tai predicate. Throws SizeLimitError above `cap` pairs.
template <PartialOrder O1, PartialOrder O2>
ConflictGraph build_conflict_graph(const O1& t1, const O2& t2, const WeightMatrix& w,
                                   std::size_t cap = kDefaultPairCap) {
  return detail::build_pair_graph(t1, t2, w, MappingKind::anti_tai, cap);
}

// Exact maximum-weight clique by branch and bound; the bound is the current
// weight plus the weight of all remaining candidates. Among optima the first
// one met in lexicographic vertex order is returned.
OracleResult max_weight_clique(const ConflictGraph& g);

// Maximum-weight anti Tai mapping: a heaviest clique of the conflict graph.
OracleResult brute_anti_tai(const ConflictGraph& g);

// Maximum-weight Tai mapping: a heaviest independent set of the conflict graph.
OracleResult brute_tai(const ConflictGraph& g);

// Maximum-weight si-antimatching: a heaviest clique under the si predicate.
template <PartialOrder O1, PartialOrder O2>
OracleResult brute_si(const O1& t1, const O2& t2, const WeightMatrix& w,
                      std::size_t cap = kDefaultPairCap) {
  return max_weight_clique(detail::build_pair_graph(t1, t2, w, MappingKind::si, cap));
}

}  // namespace antitai
