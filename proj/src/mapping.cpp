#include "antitai/mapping.hpp"

#include <algorithm>

namespace antitai {

PairMapping::PairMapping(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  if (std::adjacent_find(pairs_.begin(), pairs_.end()) != pairs_.end()) {
    throw InvalidArgument("mapping contains a duplicate pair");
  }
}

PairMapping::PairMapping(std::vector<Pair> pairs, const WeightMatrix& w)
    : PairMapping(std::move(pairs)) {
  for (Pair p : pairs_) weight_ += w.at(p.first, p.second);
}

bool PairMapping::contains(Pair p) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), p);
}

std::vector<NodeId> PairMapping::image(NodeId x) const {
  std::vector<NodeId> out;
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), Pair{x, 0});
  for (; it != pairs_.end() && it->first == x; ++it) out.push_back(it->second);
  return out;
}

std::vector<NodeId> PairMapping::first_nodes() const {
  std::vector<NodeId> out;
  for (Pair p : pairs_) {
    if (out.empty() || out.back() != p.first) out.push_back(p.first);
  }
  return out;
}

std::vector<NodeId> PairMapping::second_nodes() const {
  std::vector<NodeId> out;
  for (Pair p : pairs_) out.push_back(p.second);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string_view to_string(MappingKind kind) {
  switch (kind) {
    case MappingKind::anti_tai:
      return "anti_tai";
    case MappingKind::si:
      return "si";
    case MappingKind::tai:
      return "tai";
  }
  return "unknown";
}

std::optional<MappingKind> parse_mapping_kind(std::string_view text) {
  if (text == "anti_tai") return MappingKind::anti_tai;
  if (text == "si") return MappingKind::si;
  if (text == "tai") return MappingKind::tai;
  return std::nullopt;
}

}  // namespace antitai
