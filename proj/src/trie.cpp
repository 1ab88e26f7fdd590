#include "provtrie/trie.hpp"

#include <algorithm>
#include <functional>

#include "provtrie/error.hpp"

namespace provtrie {

const char* to_string(TrieMode mode) noexcept { return mode == TrieMode::DAG ? "dag" : "dg"; }

std::optional<TrieMode> parse_trie_mode(std::string_view text) noexcept {
  if (text == "dag") return TrieMode::DAG;
  if (text == "dg") return TrieMode::DG;
  return std::nullopt;
}

Symbol SymbolTable::intern(const std::string& uri) {
  auto [it, inserted] = index_.try_emplace(uri, static_cast<Symbol>(names_.size()));
  if (inserted) names_.push_back(uri);
  return it->second;
}

std::optional<Symbol> SymbolTable::find(std::string_view uri) const {
  auto it = index_.find(std::string(uri));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Trie::Trie(TrieMode mode, std::size_t ngram) : mode_(mode), ngram_(ngram) {
  nodes_.emplace_back();
}

std::optional<NodeIndex> Trie::find_child(NodeIndex parent, Symbol symbol) const {
  const auto& children = nodes_.at(parent).children;
  if (children.size() <= 16) {
    for (const auto& e : children)
      if (e.symbol == symbol) return e.node;
    return std::nullopt;
  }
  const std::string& key = symbols_.name(symbol);
  auto it = std::lower_bound(children.begin(), children.end(), key,
                             [&](const ChildEdge& e, const std::string& k) {
                               return symbols_.name(e.symbol) < k;
                             });
  if (it != children.end() && it->symbol == symbol) return it->node;
  return std::nullopt;
}

std::optional<NodeIndex> Trie::step(NodeIndex from, Symbol symbol) const {
  if (auto child = find_child(from, symbol)) return child;
  for (const auto& edge : nodes_.at(from).cycle_edges)
    if (nodes_[edge.target].symbol == symbol) return edge.target;
  return std::nullopt;
}

double Trie::probability(NodeIndex i) const {
  const TrieNode& n = nodes_.at(i);
  if (n.parent == kNoParent) return 1.0;
  const std::uint64_t parent_freq = nodes_[n.parent].freq;
  return parent_freq == 0 ? 0.0 : static_cast<double>(n.descents) / static_cast<double>(parent_freq);
}

double Trie::cycle_probability(NodeIndex from, const CycleEdge& edge) const {
  const std::uint64_t freq = nodes_.at(from).freq;
  return freq == 0 ? 0.0 : static_cast<double>(edge.count) / static_cast<double>(freq);
}

std::map<std::size_t, std::map<std::string, std::uint64_t>> Trie::depth_stats() const {
  std::map<std::size_t, std::map<std::string, std::uint64_t>> out;
  for (std::size_t d = 1; d < depth_counts_.size(); ++d) {
    if (depth_counts_[d].empty()) continue;
    auto& row = out[d];
    for (const auto& [sym, count] : depth_counts_[d]) row[symbols_.name(sym)] = count;
  }
  return out;
}

NodeIndex Trie::add_child(NodeIndex parent, Symbol symbol) {
  const auto index = static_cast<NodeIndex>(nodes_.size());
  TrieNode child;
  child.symbol = symbol;
  child.parent = parent;
  child.depth = nodes_[parent].depth + 1;
  nodes_.push_back(std::move(child));

  auto& children = nodes_[parent].children;
  auto it = std::lower_bound(children.begin(), children.end(), symbol,
                             [&](const ChildEdge& e, Symbol s) { return label_less(e.symbol, s); });
  children.insert(it, ChildEdge{symbol, index});
  return index;
}

void Trie::bump(NodeIndex i) {
  TrieNode& n = nodes_[i];
  ++n.freq;
  if (i == kRootNode) return;
  if (depth_counts_.size() <= n.depth) depth_counts_.resize(n.depth + 1);
  ++depth_counts_[n.depth][n.symbol];
}

void Trie::insert(std::span<const ResourceId> seq) {
  if (mode_ != TrieMode::DAG) throw Error(ErrorCode::ModeMismatch, "insert requires a DAG-mode trie");
  if (seq.empty()) throw Error(ErrorCode::EmptySequence, "cannot insert an empty sequence");

  NodeIndex cursor = kRootNode;
  bump(cursor);
  ++sequence_count_;
  for (const auto& id : seq) {
    const Symbol sym = symbols_.intern(id.str());
    auto child = find_child(cursor, sym);
    cursor = child ? *child : add_child(cursor, sym);
    ++nodes_[cursor].descents;
    bump(cursor);
  }
  ++nodes_[cursor].terminal_count;
}

void Trie::insert_dg(std::span<const ResourceId> seq) {
  if (mode_ != TrieMode::DG) throw Error(ErrorCode::ModeMismatch, "insert_dg requires a DG-mode trie");
  if (seq.empty()) throw Error(ErrorCode::EmptySequence, "cannot insert an empty sequence");

  NodeIndex cursor = kRootNode;
  bump(cursor);
  ++sequence_count_;
  for (const auto& id : seq) {
    const Symbol sym = symbols_.intern(id.str());
    if (auto child = find_child(cursor, sym)) {
      cursor = *child;
      ++nodes_[cursor].descents;
      bump(cursor);
      continue;
    }

    NodeIndex ancestor = cursor;
    while (ancestor != kRootNode && nodes_[ancestor].symbol != sym) ancestor = nodes_[ancestor].parent;

    if (ancestor == kRootNode) {
      cursor = add_child(cursor, sym);
      ++nodes_[cursor].descents;
      bump(cursor);
      continue;
    }

    auto& edges = nodes_[cursor].cycle_edges;
    auto it = std::find_if(edges.begin(), edges.end(),
                           [&](const CycleEdge& e) { return e.target == ancestor; });
    if (it == edges.end()) {
      auto pos = std::lower_bound(edges.begin(), edges.end(), sym, [&](const CycleEdge& e, Symbol s) {
        return label_less(nodes_[e.target].symbol, s);
      });
      it = edges.insert(pos, CycleEdge{ancestor, 0});
    }
    ++it->count;
    cursor = ancestor;
    bump(cursor);
  }
  ++nodes_[cursor].terminal_count;
}

std::optional<std::string> Trie::check_invariants() const {
  auto where = [&](NodeIndex i) { return "node " + std::to_string(i); };
  if (nodes_.empty()) return std::string("missing root");
  const TrieNode& root = nodes_.front();
  if (root.parent != kNoParent || root.depth != 0) return std::string("malformed root");
  if (root.terminal_count != 0 || !root.cycle_edges.empty()) return std::string("root cannot terminate or cycle");
  if (root.freq != sequence_count_) return std::string("root freq differs from sequence_count");

  std::vector<std::uint64_t> cycle_in(nodes_.size(), 0);
  std::vector<std::unordered_map<Symbol, std::uint64_t>> depth(1);

  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    const TrieNode& n = nodes_[i];
    std::uint64_t out = n.terminal_count;
    for (std::size_t c = 0; c < n.children.size(); ++c) {
      const ChildEdge& edge = n.children[c];
      if (edge.node >= nodes_.size()) return where(i) + ": child index out of range";
      const TrieNode& child = nodes_[edge.node];
      if (child.parent != i || child.symbol != edge.symbol) return where(i) + ": child link mismatch";
      if (child.depth != n.depth + 1) return where(edge.node) + ": depth is not parent depth + 1";
      if (c > 0 && !label_less(n.children[c - 1].symbol, edge.symbol))
        return where(i) + ": children not strictly ordered";
      out += child.descents;
    }
    if (mode_ == TrieMode::DAG && !n.cycle_edges.empty()) return where(i) + ": cycle edge in DAG mode";
    for (const auto& edge : n.cycle_edges) {
      if (edge.target >= nodes_.size() || edge.target == kRootNode) return where(i) + ": bad cycle target";
      NodeIndex a = i;
      while (a != kRootNode && a != edge.target) a = nodes_[a].parent;
      if (a != edge.target) return where(i) + ": cycle target is not on the root path";
      if (edge.count == 0) return where(i) + ": cycle edge without traversals";
      cycle_in[edge.target] += edge.count;
      out += edge.count;
    }
    if (out != n.freq) return where(i) + ": freq is not conserved";
    if (i != kRootNode) {
      if (n.parent >= nodes_.size()) return where(i) + ": parent index out of range";
      if (mode_ == TrieMode::DG) {
        for (NodeIndex a = n.parent; a != kRootNode; a = nodes_[a].parent)
          if (nodes_[a].symbol == n.symbol) return where(i) + ": repeated identifier on a DG root path";
      }
      if (depth.size() <= n.depth) depth.resize(n.depth + 1);
      depth[n.depth][n.symbol] += n.freq;
    }
  }
  for (NodeIndex i = 1; i < nodes_.size(); ++i)
    if (nodes_[i].freq != nodes_[i].descents + cycle_in[i]) return where(i) + ": arrivals do not add up";
  if (root.descents != 0 || cycle_in[kRootNode] != 0) return std::string("root has arrivals");

  for (std::size_t d = 0; d < std::max(depth.size(), depth_counts_.size()); ++d) {
    static const std::unordered_map<Symbol, std::uint64_t> none;
    const auto& expect = d < depth.size() ? depth[d] : none;
    const auto& have = d < depth_counts_.size() ? depth_counts_[d] : none;
    if (expect != have) return "depth statistics differ at depth " + std::to_string(d);
  }
  return std::nullopt;
}

bool operator==(const Trie& a, const Trie& b) {
  if (a.mode_ != b.mode_ || a.ngram_ != b.ngram_ || a.sequence_count_ != b.sequence_count_ ||
      a.nodes_.size() != b.nodes_.size())
    return false;
  if (a.depth_stats() != b.depth_stats()) return false;

  std::vector<NodeIndex> map_ab(a.nodes_.size(), kNoParent);
  std::vector<std::pair<NodeIndex, NodeIndex>> stack{{kRootNode, kRootNode}};
  std::vector<std::pair<NodeIndex, NodeIndex>> visited;
  while (!stack.empty()) {
    auto [ia, ib] = stack.back();
    stack.pop_back();
    const TrieNode& na = a.nodes_[ia];
    const TrieNode& nb = b.nodes_[ib];
    if (na.freq != nb.freq || na.descents != nb.descents || na.terminal_count != nb.terminal_count ||
        na.depth != nb.depth || na.children.size() != nb.children.size() ||
        na.cycle_edges.size() != nb.cycle_edges.size())
      return false;
    if (ia != kRootNode && a.label(ia) != b.label(ib)) return false;
    map_ab[ia] = ib;
    visited.emplace_back(ia, ib);
    for (std::size_t c = 0; c < na.children.size(); ++c)
      stack.emplace_back(na.children[c].node, nb.children[c].node);
  }
  for (auto [ia, ib] : visited) {
    const auto& ea = a.nodes_[ia].cycle_edges;
    const auto& eb = b.nodes_[ib].cycle_edges;
    for (std::size_t c = 0; c < ea.size(); ++c)
      if (map_ab[ea[c].target] != eb[c].target || ea[c].count != eb[c].count) return false;
  }
  return true;
}

void index_graph_dg(Trie& t, const ProvGraph& g) {
  if (t.mode() != TrieMode::DG) throw Error(ErrorCode::ModeMismatch, "index_graph_dg requires a DG-mode trie");

  std::vector<ResourceId> path;
  std::set<ResourceId> on_path;
  std::function<void()> visit = [&]() {
    const auto& succ = g.successors(path.back());
    if (succ.empty()) {
      t.insert_dg(path);
      return;
    }
    for (const auto& next : succ) {
      path.push_back(next);
      if (on_path.count(next)) {
        t.insert_dg(path);
        path.pop_back();
        continue;
      }
      on_path.insert(next);
      visit();
      on_path.erase(next);
      path.pop_back();
    }
  };

  for (const auto& [start, info] : g.nodes()) {
    path.assign(1, start);
    on_path = {start};
    visit();
  }
}

}  // namespace provtrie
