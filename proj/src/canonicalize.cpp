#include "provtrie/canonicalize.hpp"

#include <functional>
#include <map>
#include <queue>

#include "provtrie/error.hpp"

namespace provtrie {

CanonicalSequence sequence(const ProvGraph& g) {
  std::map<ResourceId, std::size_t> indegree;
  for (const auto& [id, info] : g.nodes()) indegree.emplace(id, g.predecessors(id).size());

  std::priority_queue<ResourceId, std::vector<ResourceId>, std::greater<>> frontier;
  for (const auto& [id, deg] : indegree)
    if (deg == 0) frontier.push(id);

  CanonicalSequence out;
  out.items.reserve(g.node_count());
  while (!frontier.empty()) {
    ResourceId id = frontier.top();
    frontier.pop();
    for (const auto& next : g.successors(id))
      if (--indegree.at(next) == 0) frontier.push(next);
    out.items.push_back(std::move(id));
  }
  if (out.items.size() != g.node_count()) {
    throw Error(ErrorCode::CyclicInput, "graph has a cycle; " +
                                            std::to_string(g.node_count() - out.items.size()) +
                                            " nodes could not be ordered");
  }
  return out;
}

SubsequenceWindow ngrams(const CanonicalSequence& seq, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "window length must be positive");
  SubsequenceWindow out;
  out.n = n;
  const auto& items = seq.items;
  if (items.size() <= n) {
    if (!items.empty()) out.windows.push_back(items);
    return out;
  }
  out.windows.reserve(items.size() - n + 1);
  for (std::size_t i = 0; i + n <= items.size(); ++i)
    out.windows.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(i),
                             items.begin() + static_cast<std::ptrdiff_t>(i + n));
  return out;
}

std::strong_ordering compare_pairs(const std::pair<ResourceId, ResourceId>& a,
                                   const std::pair<ResourceId, ResourceId>& b) noexcept {
  if (auto c = a.first <=> b.first; c != 0) return c;
  return a.second <=> b.second;
}

}  // namespace provtrie
