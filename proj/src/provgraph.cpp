#include "provtrie/provgraph.hpp"

#include <deque>

#include "provtrie/error.hpp"

namespace provtrie {

namespace {

const std::set<ResourceId>& empty_set() {
  static const std::set<ResourceId> empty;
  return empty;
}

}  // namespace

ResourceId::ResourceId(std::string uri) : uri_(std::move(uri)) {
  if (uri_.empty()) throw Error(ErrorCode::InvalidArgument, "resource id must be nonempty");
}

const char* to_string(Role role) noexcept {
  switch (role) {
    case Role::Input: return "input";
    case Role::Output: return "output";
    case Role::Process: return "process";
  }
  return "process";
}

std::optional<Role> parse_role(std::string_view text) noexcept {
  if (text == "input") return Role::Input;
  if (text == "output") return Role::Output;
  if (text == "process") return Role::Process;
  return std::nullopt;
}

const char* to_string(GraphKind kind) noexcept { return kind == GraphKind::DAG ? "dag" : "dg"; }

void ProvGraph::add_node(const ResourceId& id, Role role) {
  auto [it, inserted] = nodes_.try_emplace(id, NodeInfo{role, true});
  if (inserted) return;
  NodeInfo& info = it->second;
  if (info.explicit_role && info.role != role) {
    throw Error(ErrorCode::RoleConflict, id.str() + " already has role " + to_string(info.role));
  }
  info = NodeInfo{role, true};
}

void ProvGraph::add_node(const ResourceId& id) { nodes_.try_emplace(id, NodeInfo{}); }

void ProvGraph::add_edge(const ResourceId& from, const ResourceId& to) {
  if (!contains(from)) throw Error(ErrorCode::MissingNode, from.str());
  if (!contains(to)) throw Error(ErrorCode::MissingNode, to.str());
  if (kind_ == GraphKind::DAG && from == to) throw Error(ErrorCode::SelfLoopInDag, from.str());
  if (edges_.emplace(from, to).second) {
    succ_[from].insert(to);
    pred_[to].insert(from);
  }
}

bool ProvGraph::has_edge(const ResourceId& from, const ResourceId& to) const {
  return edges_.count(Edge{from, to}) != 0;
}

const std::set<ResourceId>& ProvGraph::successors(const ResourceId& id) const {
  auto it = succ_.find(id);
  return it == succ_.end() ? empty_set() : it->second;
}

const std::set<ResourceId>& ProvGraph::predecessors(const ResourceId& id) const {
  auto it = pred_.find(id);
  return it == pred_.end() ? empty_set() : it->second;
}

Role ProvGraph::role(const ResourceId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error(ErrorCode::MissingNode, id.str());
  return it->second.role;
}

bool validate_dag(const ProvGraph& g) {
  std::map<ResourceId, std::size_t> indegree;
  for (const auto& [id, info] : g.nodes()) indegree[id] = g.predecessors(id).size();

  std::deque<ResourceId> ready;
  for (const auto& [id, deg] : indegree)
    if (deg == 0) ready.push_back(id);

  std::size_t emitted = 0;
  while (!ready.empty()) {
    ResourceId id = std::move(ready.front());
    ready.pop_front();
    ++emitted;
    for (const auto& next : g.successors(id))
      if (--indegree.at(next) == 0) ready.push_back(next);
  }
  return emitted == g.node_count();
}

ProvGraph gen_clique(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidSize, "clique size must be at least 2, got " + std::to_string(n));
  ProvGraph g(GraphKind::DG);
  std::vector<ResourceId> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ids.emplace_back(":r" + std::to_string(i));
    g.add_node(ids.back(), Role::Process);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) g.add_edge(ids[i], ids[j]);
  return g;
}

ProvGraph infer_roles(const ProvGraph& g) {
  ProvGraph out(g.kind());
  for (const auto& [id, info] : g.nodes()) {
    if (info.explicit_role) {
      out.add_node(id, info.role);
      continue;
    }
    Role role = Role::Process;
    if (g.predecessors(id).empty()) {
      role = Role::Input;
    } else if (g.successors(id).empty()) {
      role = Role::Output;
    }
    out.add_node(id, role);
  }
  for (const auto& [from, to] : g.edges()) out.add_edge(from, to);
  return out;
}

}  // namespace provtrie
