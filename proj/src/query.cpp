#include "provtrie/query.hpp"

#include <algorithm>
#include <queue>

#include "provtrie/error.hpp"

namespace provtrie {

namespace {

struct Cursor {
  NodeIndex node = kRootNode;
  double likelihood = 1.0;
};

// Calls fn(target, step_probability) for every out-going step of a node.
template <class Fn>
void for_each_step(const Trie& t, NodeIndex from, Fn&& fn) {
  const TrieNode& n = t.node(from);
  for (const auto& c : n.children) fn(c.node, t.probability(c.node));
  for (const auto& e : n.cycle_edges) fn(e.target, t.cycle_probability(from, e));
}

double step_probability(const Trie& t, NodeIndex from, NodeIndex to) {
  const TrieNode& target = t.node(to);
  if (target.parent == from && target.depth == t.node(from).depth + 1) return t.probability(to);
  for (const auto& e : t.node(from).cycle_edges)
    if (e.target == to) return t.cycle_probability(from, e);
  return 0.0;
}

std::optional<Cursor> locate(const Trie& t, const Sequence& prefix, std::size_t* visited) {
  Cursor cur;
  for (const auto& id : prefix) {
    auto sym = t.symbol_of(id.str());
    if (!sym) return std::nullopt;
    auto next = t.step(cur.node, *sym);
    if (!next) return std::nullopt;
    cur.likelihood *= step_probability(t, cur.node, *next);
    cur.node = *next;
    if (visited) ++*visited;
  }
  return cur;
}

bool anchor_known(const Trie& t, const Sequence& prefix) {
  auto sym = t.symbol_of(prefix.front().str());
  return sym && t.find_child(kRootNode, *sym).has_value();
}

void check_pattern(const Trie& t, const QueryPattern& pattern, const QueryOptions& options) {
  if (pattern.prefix.empty()) throw Error(ErrorCode::InvalidArgument, "query prefix must be nonempty");
  if (!pattern.terminal) throw Error(ErrorCode::InvalidArgument, "q1 requires a terminal resource");
  if (options.strict && t.ngram() != 0)
    throw Error(ErrorCode::InvalidArgument, "strict matching needs a whole-sequence index (n = 0)");
}

struct Collector {
  const Trie& t;
  Symbol terminal;
  bool strict;
  std::size_t* visited;
  Sequence path;
  std::vector<PathMatch> out;

  void run(NodeIndex node, double likelihood, std::size_t remaining) {
    if (remaining == 0) {
      auto last = t.step(node, terminal);
      if (!last) return;
      const TrieNode& n = t.node(*last);
      if (visited) ++*visited;
      if (strict && n.terminal_count == 0) return;
      PathMatch m;
      m.path = path;
      m.path.emplace_back(t.symbol_name(terminal));
      m.freq = n.freq;
      m.likelihood = likelihood * step_probability(t, node, *last);
      out.push_back(std::move(m));
      return;
    }
    for_each_step(t, node, [&](NodeIndex next, double p) {
      if (visited) ++*visited;
      path.emplace_back(t.label(next));
      run(next, likelihood * p, remaining - 1);
      path.pop_back();
    });
  }
};

struct Counter {
  const Trie& t;
  Symbol terminal;
  bool strict;
  std::size_t* visited;

  std::uint64_t run(NodeIndex node, std::size_t remaining) const {
    if (remaining == 0) {
      auto last = t.step(node, terminal);
      if (!last) return 0;
      if (visited) ++*visited;
      return strict && t.node(*last).terminal_count == 0 ? 0 : 1;
    }
    std::uint64_t total = 0;
    auto add = [&](NodeIndex next) {
      if (visited) ++*visited;
      if (__builtin_add_overflow(total, run(next, remaining - 1), &total))
        throw Error(ErrorCode::Overflow, "path count exceeds 64 bits");
    };
    const TrieNode& n = t.node(node);
    for (const auto& c : n.children) add(c.node);
    for (const auto& e : n.cycle_edges) add(e.target);
    return total;
  }
};

}  // namespace

QueryResult q1(const Trie& t, const QueryPattern& pattern, const QueryOptions& options) {
  check_pattern(t, pattern, options);
  QueryResult result;
  if (!anchor_known(t, pattern.prefix)) {
    result.status = QueryStatus::UnknownResource;
    return result;
  }
  auto cursor = locate(t, pattern.prefix, options.visited);
  auto terminal = t.symbol_of(pattern.terminal->str());
  if (!cursor || !terminal) return result;

  Collector c{t, *terminal, options.strict, options.visited, pattern.prefix, {}};
  c.run(cursor->node, cursor->likelihood, pattern.wildcards);
  result.matches = std::move(c.out);
  std::sort(result.matches.begin(), result.matches.end(), [](const PathMatch& a, const PathMatch& b) {
    if (a.likelihood != b.likelihood) return a.likelihood > b.likelihood;
    return a.path < b.path;
  });
  return result;
}

std::uint64_t count_paths(const Trie& t, const QueryPattern& pattern, const QueryOptions& options) {
  check_pattern(t, pattern, options);
  auto cursor = locate(t, pattern.prefix, options.visited);
  auto terminal = t.symbol_of(pattern.terminal->str());
  if (!cursor || !terminal) return 0;
  return Counter{t, *terminal, options.strict, options.visited}.run(cursor->node, pattern.wildcards);
}

std::vector<Suggestion> q2_suggest(const Trie& t, const Sequence& prefix, std::size_t ahead, std::size_t top) {
  if (prefix.empty()) throw Error(ErrorCode::InvalidArgument, "suggestion prefix must be nonempty");
  if (ahead == 0 || top == 0) throw Error(ErrorCode::InvalidArgument, "ahead and top must be positive");
  auto cursor = locate(t, prefix, nullptr);
  if (!cursor) return {};

  // "better" = higher likelihood, then lexicographically smaller completion
  auto better = [](const Suggestion& a, const Suggestion& b) {
    if (a.likelihood != b.likelihood) return a.likelihood > b.likelihood;
    return a.completion < b.completion;
  };
  // heap top is the worst kept candidate
  std::priority_queue<Suggestion, std::vector<Suggestion>, decltype(better)> kept(better);

  Sequence path;
  auto visit = [&](auto&& self, NodeIndex node, double likelihood, std::size_t remaining) -> void {
    if (kept.size() == top && likelihood < kept.top().likelihood) return;
    if (remaining == 0) {
      Suggestion s{path, likelihood};
      if (kept.size() < top) {
        kept.push(std::move(s));
      } else if (better(s, kept.top())) {
        kept.pop();
        kept.push(std::move(s));
      }
      return;
    }
    for_each_step(t, node, [&](NodeIndex next, double p) {
      path.emplace_back(t.label(next));
      self(self, next, likelihood * p, remaining - 1);
      path.pop_back();
    });
  };
  visit(visit, cursor->node, 1.0, ahead);

  std::vector<Suggestion> out;
  out.reserve(kept.size());
  while (!kept.empty()) {
    out.push_back(kept.top());
    kept.pop();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<DepthEntry> depth_table(const Trie& t, std::size_t depth) {
  std::vector<DepthEntry> out;
  const auto& counts = t.depth_counts();
  if (depth == 0 || depth >= counts.size()) return out;
  std::uint64_t total = 0;
  for (const auto& [sym, freq] : counts[depth]) {
    out.push_back(DepthEntry{ResourceId(t.symbol_name(sym)), freq, 0.0});
    total += freq;
  }
  for (auto& e : out) e.share = static_cast<double>(e.freq) / static_cast<double>(total);
  std::sort(out.begin(), out.end(), [](const DepthEntry& a, const DepthEntry& b) {
    if (a.freq != b.freq) return a.freq > b.freq;
    return a.id < b.id;
  });
  return out;
}

DepthEntry most_probable_at_depth(const Trie& t, std::size_t depth) {
  if (depth == 0) throw Error(ErrorCode::InvalidArgument, "depth must be at least 1");
  auto table = depth_table(t, depth);
  if (table.empty()) throw Error(ErrorCode::EmptyDepth, "no trie node at depth " + std::to_string(depth));
  return table.front();
}

}  // namespace provtrie
