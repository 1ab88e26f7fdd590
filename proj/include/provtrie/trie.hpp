#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "provtrie/provgraph.hpp"

namespace provtrie {

using NodeIndex = std::uint32_t;
using Symbol = std::uint32_t;

inline constexpr NodeIndex kRootNode = 0;
inline constexpr NodeIndex kNoParent = std::numeric_limits<NodeIndex>::max();

enum class TrieMode { DAG, DG };

const char* to_string(TrieMode mode) noexcept;
std::optional<TrieMode> parse_trie_mode(std::string_view text) noexcept;

// Interned resource identifiers. Symbols are dense indices in first-seen order;
// they say nothing about lexicographic order.
class SymbolTable {
 public:
  Symbol intern(const std::string& uri);
  std::optional<Symbol> find(std::string_view uri) const;
  const std::string& name(Symbol s) const { return names_.at(s); }
  std::size_t size() const noexcept { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
};

struct ChildEdge {
  Symbol symbol;
  NodeIndex node;
};

// Back-reference from a node to an ancestor (or itself) carrying the same
// identifier as the repeated symbol; DG mode only.
struct CycleEdge {
  NodeIndex target;
  std::uint64_t count;  // traversals recorded by insert_dg
};

struct TrieNode {
  Symbol symbol = 0;  // unused on the root
  NodeIndex parent = kNoParent;
  std::uint32_t depth = 0;
  std::uint64_t freq = 0;            // every arrival, including through cycle edges
  std::uint64_t descents = 0;        // arrivals from the parent
  std::uint64_t terminal_count = 0;  // inserted sequences ending here
  std::vector<ChildEdge> children;   // ordered by identifier text
  std::vector<CycleEdge> cycle_edges;  // ordered by target identifier text
};

// Generalized prefix trie over resource identifiers with online frequency and
// conditional-probability statistics.
//
// Statistics: a node's conditional probability is descents / parent.freq. In
// DAG mode descents == freq. In DG mode a cycle edge carries its own
// probability, count / source.freq, so the out-going probabilities of a node
// plus its termination share always sum to one.
//
// Single writer, many readers: insert() needs exclusive access; const methods
// may run concurrently on an unmodified trie.
class Trie {
 public:
  explicit Trie(TrieMode mode = TrieMode::DAG, std::size_t ngram = 0);

  TrieMode mode() const noexcept { return mode_; }
  // Window length the index was built with; 0 means whole sequences.
  std::size_t ngram() const noexcept { return ngram_; }
  void set_ngram(std::size_t n) noexcept { ngram_ = n; }
  std::uint64_t sequence_count() const noexcept { return sequence_count_; }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  const TrieNode& node(NodeIndex i) const { return nodes_.at(i); }
  const TrieNode& root() const { return nodes_.front(); }

  const SymbolTable& symbols() const noexcept { return symbols_; }
  std::optional<Symbol> symbol_of(std::string_view uri) const { return symbols_.find(uri); }
  const std::string& label(NodeIndex i) const { return symbols_.name(nodes_.at(i).symbol); }
  const std::string& symbol_name(Symbol s) const { return symbols_.name(s); }

  std::optional<NodeIndex> find_child(NodeIndex parent, Symbol symbol) const;
  // One step along a child edge or, in DG mode, a cycle edge.
  std::optional<NodeIndex> step(NodeIndex from, Symbol symbol) const;

  double probability(NodeIndex i) const;
  double cycle_probability(NodeIndex from, const CycleEdge& edge) const;

  // Per-depth cumulative frequency of each identifier. Index = depth.
  const std::vector<std::unordered_map<Symbol, std::uint64_t>>& depth_counts() const noexcept {
    return depth_counts_;
  }
  // Depth statistics keyed by identifier text, for reporting and comparison.
  std::map<std::size_t, std::map<std::string, std::uint64_t>> depth_stats() const;

  // DAG-mode insertion. Throws EmptySequence, ModeMismatch.
  void insert(std::span<const ResourceId> seq);
  // DG-mode insertion: a symbol already on the cursor's root path becomes a
  // cycle edge to that ancestor instead of a new child.
  void insert_dg(std::span<const ResourceId> seq);

  // Returns a description of the first violated structural or statistical
  // invariant, or nullopt when the trie is consistent.
  std::optional<std::string> check_invariants() const;

  // Structural equality by identifier text; node numbering may differ.
  friend bool operator==(const Trie& a, const Trie& b);

 private:
  friend Trie load_trie(std::istream& in);

  NodeIndex add_child(NodeIndex parent, Symbol symbol);
  void bump(NodeIndex i);
  bool label_less(Symbol a, Symbol b) const { return symbols_.name(a) < symbols_.name(b); }

  TrieMode mode_;
  std::size_t ngram_;
  std::uint64_t sequence_count_ = 0;
  std::vector<TrieNode> nodes_;
  SymbolTable symbols_;
  std::vector<std::unordered_map<Symbol, std::uint64_t>> depth_counts_;
};

// Builds the DG index of a (possibly cyclic) graph: for every start node in
// lexicographic order, a lexicographic DFS over simple paths; every path step
// whose successor is already on the path is inserted as a closing cycle step,
// and paths with no successor at all are inserted as they are. Every node of
// the resulting trie that is labelled x then offers exactly the successors of
// x in the graph, so root-anchored walks in the trie are the graph's walks.
void index_graph_dg(Trie& t, const ProvGraph& g);

inline constexpr int kTrieFormatVersion = 1;

// Versioned JSON document: header, pre-order node records, cycle-edge
// records and the depth statistics table. Probabilities are not stored.
void save_trie(const Trie& t, std::ostream& out);
// Throws FormatVersionMismatch or CorruptDocument.
Trie load_trie(std::istream& in);

}  // namespace provtrie
