#include "provtrie/oracle.hpp"

#include <map>

#include "provtrie/error.hpp"

namespace provtrie {

namespace {

void require_node(const ProvGraph& g, const ResourceId& id) {
  if (!g.contains(id)) throw Error(ErrorCode::MissingNode, id.str());
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "walk count exceeds 64 bits");
  return r;
}

}  // namespace

WalkSet enumerate_walks(const ProvGraph& g, const ResourceId& start, const ResourceId& end, std::size_t m) {
  require_node(g, start);
  require_node(g, end);
  WalkSet out;
  out.length = m;
  Sequence walk{start};
  // successors are visited in order, so walks come out sorted
  auto extend = [&](auto&& self, std::size_t remaining) -> void {
    if (remaining == 0) {
      if (walk.back() == end) out.walks.push_back(walk);
      return;
    }
    for (const auto& next : g.successors(walk.back())) {
      walk.push_back(next);
      self(self, remaining - 1);
      walk.pop_back();
    }
  };
  extend(extend, m);
  return out;
}

std::uint64_t count_walks(const ProvGraph& g, const ResourceId& start, const ResourceId& end, std::size_t m) {
  require_node(g, start);
  require_node(g, end);
  auto count = [&](auto&& self, const ResourceId& at, std::size_t remaining) -> std::uint64_t {
    if (remaining == 0) return at == end ? 1 : 0;
    std::uint64_t total = 0;
    for (const auto& next : g.successors(at)) total += self(self, next, remaining - 1);
    return total;
  };
  return count(count, start, m);
}

std::uint64_t clique_walk_count(std::uint64_t n, std::uint64_t m) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "clique size must be at least 2");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "walk length must be at least 1");
  std::uint64_t power = 1;
  for (std::uint64_t i = 0; i < m; ++i) power = checked_mul(power, n - 1);
  // (n-1)^m - (-1)^m
  std::uint64_t numerator;
  if (m % 2 == 0) {
    numerator = power - 1;
  } else if (__builtin_add_overflow(power, 1, &numerator)) {
    throw Error(ErrorCode::Overflow, "walk count exceeds 64 bits");
  }
  if (numerator % n != 0) throw Error(ErrorCode::InvalidArgument, "closed form is not integral");
  return numerator / n;
}

std::uint64_t all_pairs_clique_count(std::uint64_t n, std::uint64_t m) {
  const std::uint64_t pairs = n * (n - 1) / 2;
  return checked_mul(pairs, clique_walk_count(n, m));
}

std::set<Sequence> enumerate_topological_orders(const ProvGraph& g) {
  if (g.node_count() > kMaxTopologicalNodes) {
    throw Error(ErrorCode::TooLarge, std::to_string(g.node_count()) + " nodes exceeds the limit of " +
                                         std::to_string(kMaxTopologicalNodes));
  }
  if (!validate_dag(g)) throw Error(ErrorCode::CyclicInput, "graph has a cycle");

  std::map<ResourceId, std::size_t> indegree;
  for (const auto& [id, info] : g.nodes()) indegree.emplace(id, g.predecessors(id).size());

  std::set<Sequence> out;
  Sequence order;
  auto recurse = [&](auto&& self) -> void {
    if (order.size() == g.node_count()) {
      out.insert(order);
      return;
    }
    for (auto& [id, deg] : indegree) {
      if (deg != 0) continue;
      deg = static_cast<std::size_t>(-1);  // emitted
      for (const auto& next : g.successors(id)) --indegree.at(next);
      order.push_back(id);
      self(self);
      order.pop_back();
      for (const auto& next : g.successors(id)) ++indegree.at(next);
      deg = 0;
    }
  };
  recurse(recurse);
  return out;
}

}  // namespace provtrie
