#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace provtrie {

// URI (or opaque identifier) of a provenance resource. Ordering is plain
// byte-wise comparison of the string; every tie-break in the library uses it.
class ResourceId {
 public:
  explicit ResourceId(std::string uri);

  const std::string& str() const noexcept { return uri_; }

  friend bool operator==(const ResourceId&, const ResourceId&) = default;
  friend std::strong_ordering operator<=>(const ResourceId& a, const ResourceId& b) noexcept {
    return a.uri_.compare(b.uri_) <=> 0;
  }

 private:
  std::string uri_;
};

enum class Role { Input, Output, Process };

const char* to_string(Role role) noexcept;
std::optional<Role> parse_role(std::string_view text) noexcept;

enum class GraphKind { DAG, DG };

const char* to_string(GraphKind kind) noexcept;

// Directed graph of provenance resources. Nodes carry a role; a role is either
// explicit (given by the producer of the graph) or provisional until
// infer_roles() assigns one from the node's degrees.
class ProvGraph {
 public:
  struct NodeInfo {
    Role role = Role::Process;
    bool explicit_role = false;

    friend bool operator==(const NodeInfo&, const NodeInfo&) = default;
  };

  using Edge = std::pair<ResourceId, ResourceId>;

  explicit ProvGraph(GraphKind kind = GraphKind::DAG) : kind_(kind) {}

  GraphKind kind() const noexcept { return kind_; }

  // Adds a node with an explicit role. Re-adding with the same role is a
  // no-op; a different explicit role throws RoleConflict.
  void add_node(const ResourceId& id, Role role);
  // Adds a node whose role is left for infer_roles().
  void add_node(const ResourceId& id);

  // Throws MissingNode if an endpoint is absent, SelfLoopInDag for a DAG
  // self-loop. Duplicate edges are ignored.
  void add_edge(const ResourceId& from, const ResourceId& to);

  bool contains(const ResourceId& id) const { return nodes_.count(id) != 0; }
  bool has_edge(const ResourceId& from, const ResourceId& to) const;

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::map<ResourceId, NodeInfo>& nodes() const noexcept { return nodes_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }

  // Successors / predecessors in lexicographic order.
  const std::set<ResourceId>& successors(const ResourceId& id) const;
  const std::set<ResourceId>& predecessors(const ResourceId& id) const;

  Role role(const ResourceId& id) const;

  friend bool operator==(const ProvGraph& a, const ProvGraph& b) {
    return a.kind_ == b.kind_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  GraphKind kind_;
  std::map<ResourceId, NodeInfo> nodes_;
  std::set<Edge> edges_;
  std::map<ResourceId, std::set<ResourceId>> succ_;
  std::map<ResourceId, std::set<ResourceId>> pred_;
};

// Kahn-style acyclicity check.
bool validate_dag(const ProvGraph& g);

// Complete graph on n vertices :r0 .. :r(n-1), every unordered pair encoded as
// two directed edges. Throws InvalidSize for n < 2.
ProvGraph gen_clique(std::size_t n);

// Sources become Input, sinks Output, everything else Process. Isolated
// nodes are Input. Explicit roles are kept.
ProvGraph infer_roles(const ProvGraph& g);

}  // namespace provtrie
