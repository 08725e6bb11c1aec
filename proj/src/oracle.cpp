#include "antitai/oracle.hpp"

namespace antitai {

ConflictGraph::ConflictGraph(WeightMatrix w, std::vector<BitRow> adjacency)
    : weights_(std::move(w)), adjacency_(std::move(adjacency)) {
  if (adjacency_.size() != weights_.rows() * weights_.cols()) {
    throw InvalidArgument("adjacency size does not match the pair count");
  }
  for (std::size_t a = 0; a < size(); ++a) {
    if (adjacency_[a].size() != size()) throw InvalidArgument("ragged adjacency matrix");
    if (adjacency_[a].test(a)) throw InvalidArgument("conflict graph has a self-loop");
  }
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = a + 1; b < size(); ++b) {
      if (adjacency_[a].test(b) != adjacency_[b].test(a)) {
        throw InvalidArgument("conflict graph adjacency is not symmetric");
      }
    }
  }
}

ConflictGraph ConflictGraph::complement() const {
  std::vector<BitRow> adj(size(), BitRow(size()));
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = 0; b < size(); ++b) {
      if (a != b && !adjacency_[a].test(b)) adj[a].set(b);
    }
  }
  return ConflictGraph(weights_, std::move(adj));
}

namespace {

class CliqueSearch {
 public:
  explicit CliqueSearch(const ConflictGraph& g) : g_(g) {}

  OracleResult run() {
    // Zero-weight vertices never make a clique strictly heavier.
    BitRow candidates(g_.size());
    for (std::size_t v = 0; v < g_.size(); ++v) {
      if (g_.weight(v) > 0.0) candidates.set(v);
    }
    expand(0.0, candidates);
    std::vector<Pair> pairs;
    for (std::size_t v : best_set_) pairs.push_back(g_.pair(v));
    return OracleResult{best_, PairMapping(std::move(pairs), g_.weights())};
  }

 private:
  double remaining(const BitRow& p) const {
    double s = 0.0;
    for (std::size_t v = p.next(0); v < p.size(); v = p.next(v + 1)) s += g_.weight(v);
    return s;
  }

  void expand(double weight, BitRow candidates) {
    if (weight > best_) {
      best_ = weight;
      best_set_ = current_;
    }
    double bound = remaining(candidates);
    for (std::size_t v = candidates.next(0); v < candidates.size(); v = candidates.next(v + 1)) {
      if (weight + bound <= best_) return;
      BitRow next = candidates;
      next &= g_.neighbours(v);
      // Keep only vertices after v; earlier ones were handled by their own branch.
      for (std::size_t u = next.next(0); u <= v && u < next.size(); u = next.next(u + 1)) {
        next.reset(u);
      }
      current_.push_back(v);
      expand(weight + g_.weight(v), std::move(next));
      current_.pop_back();
      bound -= g_.weight(v);
    }
  }

  const ConflictGraph& g_;
  double best_ = -1.0;
  std::vector<std::size_t> best_set_;
  std::vector<std::size_t> current_;
};

}  // namespace

OracleResult max_weight_clique(const ConflictGraph& g) { return CliqueSearch(g).run(); }

OracleResult brute_anti_tai(const ConflictGraph& g) { return max_weight_clique(g); }

OracleResult brute_tai(const ConflictGraph& g) { return max_weight_clique(g.complement()); }

}  // namespace antitai
