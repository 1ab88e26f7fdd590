#include <algorithm>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "provtrie/error.hpp"
#include "provtrie/trie.hpp"

namespace provtrie {

using nlohmann::json;

void save_trie(const Trie& t, std::ostream& out) {
  // pre-order renumbering
  std::vector<NodeIndex> order;
  std::vector<NodeIndex> position(t.node_count(), kNoParent);
  order.reserve(t.node_count());
  std::vector<NodeIndex> stack{kRootNode};
  while (!stack.empty()) {
    NodeIndex i = stack.back();
    stack.pop_back();
    position[i] = static_cast<NodeIndex>(order.size());
    order.push_back(i);
    const auto& children = t.node(i).children;
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(it->node);
  }

  json doc;
  doc["header"] = {{"format_version", kTrieFormatVersion},
                   {"mode", to_string(t.mode())},
                   {"n", t.ngram()},
                   {"sequence_count", t.sequence_count()}};

  json nodes = json::array();
  json cycles = json::array();
  for (NodeIndex i : order) {
    const TrieNode& n = t.node(i);
    json rec = {{"node_index", position[i]},
                {"parent_index", n.parent == kNoParent ? json(-1) : json(position[n.parent])},
                {"id", i == kRootNode ? json(nullptr) : json(t.label(i))},
                {"freq", n.freq},
                {"terminal_count", n.terminal_count},
                {"depth", n.depth}};
    nodes.push_back(std::move(rec));
    for (const auto& e : n.cycle_edges)
      cycles.push_back({{"from_index", position[i]}, {"to_index", position[e.target]}, {"count", e.count}});
  }
  doc["nodes"] = std::move(nodes);
  doc["cycle_edges"] = std::move(cycles);

  json stats = json::array();
  for (const auto& [depth, row] : t.depth_stats())
    for (const auto& [id, freq] : row) stats.push_back({{"depth", depth}, {"id", id}, {"cum_freq", freq}});
  doc["depth_stats"] = std::move(stats);

  out << doc.dump() << '\n';
  if (!out) throw Error(ErrorCode::IoError, "failed to write trie document");
}

Trie load_trie(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CorruptDocument, std::string("unparsable trie document: ") + e.what());
  }

  try {
    const json& header = doc.at("header");
    const int version = header.at("format_version").get<int>();
    if (version != kTrieFormatVersion) {
      throw Error(ErrorCode::FormatVersionMismatch,
                  "expected format_version " + std::to_string(kTrieFormatVersion) + ", got " +
                      std::to_string(version));
    }
    auto mode = parse_trie_mode(header.at("mode").get<std::string>());
    if (!mode) throw Error(ErrorCode::CorruptDocument, "unknown mode");

    Trie t(*mode, header.at("n").get<std::size_t>());
    t.sequence_count_ = header.at("sequence_count").get<std::uint64_t>();

    const json& nodes = doc.at("nodes");
    if (!nodes.is_array() || nodes.empty()) throw Error(ErrorCode::CorruptDocument, "missing root node");
    t.nodes_.clear();
    t.nodes_.reserve(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const json& rec = nodes[k];
      if (rec.at("node_index").get<std::size_t>() != k)
        throw Error(ErrorCode::CorruptDocument, "node records out of order at " + std::to_string(k));
      const auto parent = rec.at("parent_index").get<std::int64_t>();
      TrieNode n;
      n.freq = rec.at("freq").get<std::uint64_t>();
      n.terminal_count = rec.at("terminal_count").get<std::uint64_t>();
      n.depth = rec.at("depth").get<std::uint32_t>();
      if (k == 0) {
        if (parent != -1 || !rec.at("id").is_null()) throw Error(ErrorCode::CorruptDocument, "malformed root");
        t.nodes_.push_back(std::move(n));
        continue;
      }
      if (parent < 0 || static_cast<std::size_t>(parent) >= k)
        throw Error(ErrorCode::CorruptDocument, "parent_index not before node " + std::to_string(k));
      n.parent = static_cast<NodeIndex>(parent);
      n.symbol = t.symbols_.intern(rec.at("id").get<std::string>());
      const Symbol sym = n.symbol;
      t.nodes_.push_back(std::move(n));
      auto& children = t.nodes_[static_cast<NodeIndex>(parent)].children;
      auto it = std::lower_bound(children.begin(), children.end(), sym,
                                 [&](const ChildEdge& e, Symbol s) { return t.label_less(e.symbol, s); });
      if (it != children.end() && it->symbol == sym)
        throw Error(ErrorCode::CorruptDocument, "duplicate child id at node " + std::to_string(k));
      children.insert(it, ChildEdge{sym, static_cast<NodeIndex>(k)});
    }

    std::vector<std::uint64_t> cycle_in(t.nodes_.size(), 0);
    for (const json& rec : doc.at("cycle_edges")) {
      const auto from = rec.at("from_index").get<std::size_t>();
      const auto to = rec.at("to_index").get<std::size_t>();
      const auto count = rec.at("count").get<std::uint64_t>();
      if (from >= t.nodes_.size() || to >= t.nodes_.size())
        throw Error(ErrorCode::CorruptDocument, "cycle edge index out of range");
      auto& edges = t.nodes_[from].cycle_edges;
      const Symbol sym = t.nodes_[to].symbol;
      auto pos = std::lower_bound(edges.begin(), edges.end(), sym, [&](const CycleEdge& e, Symbol s) {
        return t.label_less(t.nodes_[e.target].symbol, s);
      });
      edges.insert(pos, CycleEdge{static_cast<NodeIndex>(to), count});
      cycle_in[to] += count;
    }
    for (std::size_t k = 1; k < t.nodes_.size(); ++k) {
      if (cycle_in[k] > t.nodes_[k].freq)
        throw Error(ErrorCode::CorruptDocument, "cycle traversals exceed freq at node " + std::to_string(k));
      t.nodes_[k].descents = t.nodes_[k].freq - cycle_in[k];
    }

    for (const json& rec : doc.at("depth_stats")) {
      const auto depth = rec.at("depth").get<std::size_t>();
      auto sym = t.symbols_.find(rec.at("id").get<std::string>());
      if (!sym || depth == 0) throw Error(ErrorCode::CorruptDocument, "depth_stats entry matches no node");
      if (t.depth_counts_.size() <= depth) t.depth_counts_.resize(depth + 1);
      t.depth_counts_[depth][*sym] = rec.at("cum_freq").get<std::uint64_t>();
    }

    if (auto problem = t.check_invariants()) throw Error(ErrorCode::CorruptDocument, *problem);
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CorruptDocument, std::string("malformed trie document: ") + e.what());
  }
}

}  // namespace provtrie
