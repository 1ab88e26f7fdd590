#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "provtrie/canonicalize.hpp"
#include "provtrie/trie.hpp"

namespace provtrie {

// prefix, then `wildcards` arbitrary identifiers, then the optional terminal.
struct QueryPattern {
  Sequence prefix;
  std::size_t wildcards = 0;
  std::optional<ResourceId> terminal;

  std::size_t length() const noexcept { return prefix.size() + wildcards + (terminal ? 1 : 0); }
};

struct PathMatch {
  Sequence path;
  std::uint64_t freq = 0;   // frequency of the final trie node
  double likelihood = 0.0;  // product of step probabilities from the root
};

enum class QueryStatus { Ok, UnknownResource };

struct QueryResult {
  QueryStatus status = QueryStatus::Ok;
  std::vector<PathMatch> matches;
};

struct QueryOptions {
  // Only accept matches ending where an inserted sequence ended. Meaningful
  // for whole-sequence indexes only.
  bool strict = false;
  // Incremented once per trie node entered; optional.
  std::size_t* visited = nullptr;
};

// Every root-anchored label sequence of the trie matching the pattern; DG
// tries are walked through cycle edges as well. Sorted by likelihood
// (descending), then by path.
QueryResult q1(const Trie& t, const QueryPattern& pattern, const QueryOptions& options = {});

// |q1(t, pattern)| without materializing the matches. Throws Overflow if the
// count does not fit 64 bits.
std::uint64_t count_paths(const Trie& t, const QueryPattern& pattern, const QueryOptions& options = {});

struct Suggestion {
  Sequence completion;
  double likelihood = 0.0;  // conditional on the prefix
};

// The `top` most likely continuations of exactly `ahead` steps after prefix,
// ties broken by completion. Exhaustive over all continuations; an absent
// prefix gives an empty list.
std::vector<Suggestion> q2_suggest(const Trie& t, const Sequence& prefix, std::size_t ahead, std::size_t top);

struct DepthEntry {
  ResourceId id;
  std::uint64_t freq = 0;
  double share = 0.0;
};

// All identifiers at one depth, by descending cumulative frequency then id.
std::vector<DepthEntry> depth_table(const Trie& t, std::size_t depth);

// Throws EmptyDepth if nothing sits at that depth, InvalidArgument for 0.
DepthEntry most_probable_at_depth(const Trie& t, std::size_t depth);

}  // namespace provtrie
