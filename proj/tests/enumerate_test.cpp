#include <set>

#include "copnum/enumerate.hpp"
#include "copnum/error.hpp"
#include "gtest/gtest.h"
#include "oracles/regular_oracles.hpp"

namespace copnum {
namespace {

TEST(EnumerateRegularTest, SmallCounts) {
  const auto k4 = enumerate_regular(4, 3);
  ASSERT_EQ(k4.size(), 1u);
  EXPECT_EQ(k4[0], complete_graph(4));
  EXPECT_EQ(enumerate_regular(4, 2).size(), 3u);
  EXPECT_EQ(count_regular(5, 2), 12u);  // 4!/2 labeled 5-cycles
}

TEST(EnumerateRegularTest, CountsMatchIndependentOracles) {
  // Matching-model count divided by the (d!)^n point relabelings per graph.
  const std::uint64_t via_matchings = oracle::count_simple_matchings(6, 3);
  EXPECT_EQ(via_matchings % oracle::factorial(3), 0u);
  std::uint64_t per_graph = 1;
  for (int i = 0; i < 6; ++i) per_graph *= oracle::factorial(3);
  EXPECT_EQ(count_regular(6, 3), via_matchings / per_graph);

  for (int n = 3; n <= 8; ++n) {
    for (int d = 0; d < n; ++d) {
      if ((n * d) % 2 != 0) continue;
      EXPECT_EQ(count_regular(static_cast<std::size_t>(n), static_cast<std::size_t>(d)),
                oracle::count_regular_by_edge_subsets(n, d))
          << "n=" << n << " d=" << d;
    }
  }
}

TEST(EnumerateRegularTest, EachGraphOnceAndRegular) {
  for (auto [n, d] : {std::pair<std::size_t, std::size_t>{6, 3}, {7, 2}, {8, 3}, {7, 4}}) {
    std::set<std::vector<Edge>> seen;
    std::vector<Edge> previous;
    for (const Graph& g : enumerate_regular(n, d)) {
      EXPECT_TRUE(g.is_regular());
      EXPECT_EQ(g.min_degree(), d);
      auto edges = g.edges();
      EXPECT_TRUE(seen.insert(edges).second);
      EXPECT_LT(previous, edges);
      previous = std::move(edges);
    }
  }
}

TEST(EnumerateRegularTest, CapAndParity) {
  EXPECT_THROW(enumerate_regular(11, 2), Error);
  EXPECT_THROW(enumerate_regular(7, 3), Error);
  EXPECT_EQ(count_regular(10, 3), oracle::count_regular_by_edge_subsets(10, 3));
}

TEST(SwitchingClassTest, PartitionAndEmptyClasses) {
  const VertexSet s(8, {0, 1});
  const VertexSet t(8, {2, 3});
  const auto counts = switching_class_counts(8, 3, s, t);
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  EXPECT_EQ(total, count_regular(8, 3));
  // At most d * min(|S|,|T|) = 6 edges can join two 2-sets... but each pair
  // of vertices carries at most one edge, so 4 is the true ceiling.
  for (std::size_t i = 5; i < counts.size(); ++i) EXPECT_EQ(counts[i], 0u);
  EXPECT_EQ(count_switching_class(8, 3, s, t, 7), 0u);
  EXPECT_EQ(count_switching_class(8, 3, s, t, 2), counts[2]);
  EXPECT_THROW(switching_class_counts(8, 3, s, VertexSet(8, {1, 4})), Error);
}

TEST(SwitchingClassTest, CountsInvariantUnderChoiceOfSets) {
  const auto base = switching_class_counts(8, 3, VertexSet(8, {0, 1}), VertexSet(8, {2, 3}));
  EXPECT_EQ(base, switching_class_counts(8, 3, VertexSet(8, {7, 2}), VertexSet(8, {5, 0})));
}

}  // namespace
}  // namespace copnum
