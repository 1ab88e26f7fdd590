#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "provtrie/canonicalize.hpp"
#include "provtrie/provgraph.hpp"

namespace provtrie {

// Walks of exactly `length` edges, each stored as length + 1 identifiers,
// in lexicographic order.
struct WalkSet {
  std::size_t length = 0;
  std::vector<Sequence> walks;
};

// Exhaustive recursive enumeration of start -> end walks with m edges;
// vertices may repeat. Throws MissingNode.
WalkSet enumerate_walks(const ProvGraph& g, const ResourceId& start, const ResourceId& end, std::size_t m);

// Same recursion as enumerate_walks but only counts; the naive baseline for
// benchmarks.
std::uint64_t count_walks(const ProvGraph& g, const ResourceId& start, const ResourceId& end, std::size_t m);

// ((n-1)^m - (-1)^m) / n in exact integer arithmetic. Throws Overflow.
std::uint64_t clique_walk_count(std::uint64_t n, std::uint64_t m);

// C(n, 2) * clique_walk_count(n, m). Throws Overflow.
std::uint64_t all_pairs_clique_count(std::uint64_t n, std::uint64_t m);

inline constexpr std::size_t kMaxTopologicalNodes = 10;

// Every linear extension of a small DAG. Throws TooLarge above
// kMaxTopologicalNodes, CyclicInput for cyclic graphs.
std::set<Sequence> enumerate_topological_orders(const ProvGraph& g);

}  // namespace provtrie
