#include <gtest/gtest.h>

#include <random>

#include "provtrie/canonicalize.hpp"
#include "provtrie/error.hpp"
#include "provtrie/oracle.hpp"
#include "support/generators.hpp"

using namespace provtrie;

namespace {

ResourceId R(const std::string& s) { return ResourceId(s); }

Sequence seq(std::initializer_list<const char*> items) {
  Sequence out;
  for (auto s : items) out.emplace_back(s);
  return out;
}

}  // namespace

TEST(Sequence, TwoInputsFeedingOneProcess) {
  ProvGraph g;
  for (auto s : {"r_i1", "r_i2", "r_p1", "r_o1"}) g.add_node(R(s));
  g.add_edge(R("r_i1"), R("r_p1"));
  g.add_edge(R("r_i2"), R("r_p1"));
  g.add_edge(R("r_p1"), R("r_o1"));
  EXPECT_EQ(sequence(g).items, seq({"r_i1", "r_i2", "r_p1", "r_o1"}));
}

TEST(Sequence, SingleNodeAndEmpty) {
  ProvGraph g;
  g.add_node(R(":a"));
  EXPECT_EQ(sequence(g).items, seq({":a"}));
  EXPECT_TRUE(sequence(ProvGraph{}).items.empty());
}

TEST(Sequence, CyclicInputThrows) {
  try {
    sequence(gen_clique(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CyclicInput);
  }
}

TEST(Sequence, DisconnectedComponentsInterleaveByFrontier) {
  ProvGraph g;
  for (auto s : {"a", "z", "b", "c"}) g.add_node(R(s));
  g.add_edge(R("a"), R("z"));
  g.add_edge(R("b"), R("c"));
  EXPECT_EQ(sequence(g).items, seq({"a", "b", "c", "z"}));
}

TEST(Sequence, MatchesPermutationOracleOnRandomTenNodeDags) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 20; ++i) {
    auto g = testkit::random_dag(rng, 7 + i % 4, 0.3);
    auto orders = testkit::all_orders_by_permutation(g);
    ASSERT_FALSE(orders.empty());
    EXPECT_EQ(sequence(g).items, *std::min_element(orders.begin(), orders.end()));
  }
}

TEST(Sequence, LinearExtensionAndInsertionOrderInvariance) {
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    auto g = testkit::random_dag(rng, 1 + i % 15, 0.25);
    auto s = sequence(g).items;
    ASSERT_EQ(s.size(), g.node_count());
    std::map<ResourceId, std::size_t> pos;
    for (std::size_t k = 0; k < s.size(); ++k) pos.emplace(s[k], k);
    EXPECT_EQ(pos.size(), s.size());
    for (const auto& [a, b] : g.edges()) EXPECT_LT(pos.at(a), pos.at(b));
    EXPECT_EQ(sequence(testkit::shuffled_copy(g, rng)).items, s);
  }
}

TEST(Sequence, NonBijective) {
  ProvGraph chain, fork;
  for (auto* g : {&chain, &fork})
    for (auto s : {"a", "b", "c"}) g->add_node(R(s));
  chain.add_edge(R("a"), R("b"));
  chain.add_edge(R("b"), R("c"));
  fork.add_edge(R("a"), R("c"));
  EXPECT_EQ(sequence(chain).items, sequence(fork).items);
}

TEST(Ngrams, ThreeWindowsOfFour) {
  CanonicalSequence s{seq({"ri1", "ri2", "ri3", "ri4"}), std::nullopt};
  auto w = ngrams(s, 3);
  ASSERT_EQ(w.windows.size(), 2u);
  EXPECT_EQ(w.windows[0], seq({"ri1", "ri2", "ri3"}));
  EXPECT_EQ(w.windows[1], seq({"ri2", "ri3", "ri4"}));
}

TEST(Ngrams, SingleSymbol) {
  auto w = ngrams(CanonicalSequence{seq({"a"}), std::nullopt}, 1);
  ASSERT_EQ(w.windows.size(), 1u);
  EXPECT_EQ(w.windows[0], seq({"a"}));
}

TEST(Ngrams, IndexArithmetic) {
  CanonicalSequence s{seq({"s0", "s1", "s2", "s3", "s4", "s5", "s6"}), std::nullopt};
  auto w = ngrams(s, 4);
  ASSERT_EQ(w.windows.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    ASSERT_EQ(w.windows[i].size(), 4u);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(w.windows[i][k], s.items[i + k]);
  }
}

TEST(Ngrams, ShortSequenceIsKeptWhole) {
  CanonicalSequence s{seq({"a", "b"}), std::nullopt};
  auto w = ngrams(s, 5);
  ASSERT_EQ(w.windows.size(), 1u);
  EXPECT_EQ(w.windows[0], s.items);
}

TEST(Ngrams, WindowCountProperty) {
  for (std::size_t len = 1; len <= 12; ++len) {
    CanonicalSequence s;
    for (std::size_t i = 0; i < len; ++i) s.items.emplace_back("x" + std::to_string(i));
    for (std::size_t n = 1; n <= 14; ++n)
      EXPECT_EQ(ngrams(s, n).windows.size(), std::max<std::size_t>(1, len >= n ? len - n + 1 : 1));
  }
}

TEST(Ngrams, ZeroLengthRejected) {
  EXPECT_THROW(ngrams(CanonicalSequence{seq({"a"}), std::nullopt}, 0), Error);
}

TEST(ComparePairs, ProductOrder) {
  using P = std::pair<ResourceId, ResourceId>;
  EXPECT_EQ(compare_pairs(P{R("a"), R("z")}, P{R("b"), R("a")}), std::strong_ordering::less);
  EXPECT_EQ(compare_pairs(P{R("a"), R("b")}, P{R("a"), R("b")}), std::strong_ordering::equal);
  EXPECT_EQ(compare_pairs(P{R("a"), R("c")}, P{R("a"), R("b")}), std::strong_ordering::greater);
}
