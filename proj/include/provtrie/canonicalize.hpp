#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "provtrie/provgraph.hpp"

namespace provtrie {

using Sequence = std::vector<ResourceId>;

struct CanonicalSequence {
  Sequence items;
  std::optional<std::string> source;
};

struct SubsequenceWindow {
  std::size_t n = 0;
  std::vector<Sequence> windows;
};

// Lexicographically smallest topological order of a DAG: the Kahn frontier
// always releases its smallest ResourceId. The result depends only on the
// node and edge sets. Throws CyclicInput for graphs with a cycle.
CanonicalSequence sequence(const ProvGraph& g);

// Contiguous stride-1 windows of length n. A sequence shorter than n comes
// back whole as a single window. Throws InvalidArgument for n == 0.
SubsequenceWindow ngrams(const CanonicalSequence& seq, std::size_t n);

// Product order on resource pairs: first component, then second.
std::strong_ordering compare_pairs(const std::pair<ResourceId, ResourceId>& a,
                                   const std::pair<ResourceId, ResourceId>& b) noexcept;

}  // namespace provtrie
