#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "copnum/enumerate.hpp"
#include "copnum/error.hpp"
#include "copnum/game.hpp"
#include "copnum/pairing.hpp"
#include "copnum/playout.hpp"
#include "copnum/strategies.hpp"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles/game_oracle.hpp"

namespace copnum {
namespace {

using ::testing::HasSubstr;

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(CopWinOneCopTest, Examples) {
  EXPECT_TRUE(is_copwin_one_cop(path_graph(7)));
  EXPECT_TRUE(is_copwin_one_cop(star_graph(5)));
  EXPECT_TRUE(is_copwin_one_cop(balanced_tree(3, 3)));
  EXPECT_FALSE(is_copwin_one_cop(cycle_graph(4)));
  EXPECT_FALSE(is_copwin_one_cop(petersen_graph()));
  EXPECT_TRUE(is_copwin_one_cop(complete_graph(6)));
  EXPECT_THAT(error_of([] { is_copwin_one_cop(disjoint_union(path_graph(2), path_graph(2))); }),
              HasSubstr("connected graph required"));
}

TEST(SolveKTest, Examples) {
  EXPECT_TRUE(solve_k(path_graph(5), 1).cops_win());
  EXPECT_FALSE(solve_k(cycle_graph(4), 1).cops_win());
  EXPECT_TRUE(solve_k(cycle_graph(4), 2).cops_win());
  EXPECT_FALSE(solve_k(petersen_graph(), 2).cops_win());
  EXPECT_TRUE(solve_k(petersen_graph(), 3).cops_win());
}

TEST(SolveKTest, Errors) {
  EXPECT_THROW(solve_k(cycle_graph(5), 0), Error);
  EXPECT_THAT(error_of([] { solve_k(disjoint_union(cycle_graph(3), cycle_graph(3)), 1); }),
              HasSubstr("connected graph required"));
  EXPECT_THAT(error_of([] { solve_k(petersen_graph(), 3, 1000); }),
              HasSubstr("state space too large"));
}

TEST(SolveKTest, ConfigRankingRoundTrips) {
  const GameTable t = solve_k(cycle_graph(6), 3);
  EXPECT_EQ(t.config_count(), 56u);  // C(8, 3)
  std::set<std::vector<Vertex>> seen;
  for (std::size_t i = 0; i < t.config_count(); ++i) {
    const auto c = t.config(i);
    EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
    EXPECT_EQ(t.config_index(c), i);
    seen.insert(c);
  }
  EXPECT_EQ(seen.size(), t.config_count());
  const std::vector<Vertex> unsorted = {3, 1, 2};
  EXPECT_THROW(t.config_index(unsorted), Error);
}

TEST(CopNumberTest, KnownValues) {
  EXPECT_EQ(cop_number(balanced_tree(3, 3), 3), 1u);
  EXPECT_EQ(cop_number(path_graph(9), 3), 1u);
  for (std::size_t n = 4; n <= 9; ++n) EXPECT_EQ(cop_number(cycle_graph(n), 3), 2u) << n;
  EXPECT_EQ(cop_number(complete_graph(5), 3), 1u);
  EXPECT_EQ(cop_number(petersen_graph(), 4), 3u);
  EXPECT_EQ(cop_number(petersen_graph(), 2), std::nullopt);
  EXPECT_EQ(cop_number(heawood_graph(), 4), 3u);
}

TEST(CopNumberTest, AgreesWithNaiveOracleOnNamedGraphs) {
  std::vector<Graph> graphs = {path_graph(5), complete_graph(4), complete_graph(5),
                               petersen_graph(), heawood_graph(), complete_bipartite(2, 3)};
  for (std::size_t n = 4; n <= 8; ++n) graphs.push_back(cycle_graph(n));
  for (const Graph& g : graphs) {
    const auto exact = cop_number(g, 3);
    const auto naive = oracle::naive_cop_number(g, 3);
    ASSERT_TRUE(exact.has_value());
    ASSERT_TRUE(naive.has_value());
    EXPECT_EQ(*exact, static_cast<std::size_t>(*naive)) << to_edge_list(g);
  }
}

TEST(CopNumberTest, AgreesWithNaiveOracleOnSmallRegularGraphs) {
  for (std::size_t n = 4; n <= 7; ++n) {
    for (std::size_t d : {2u, 3u}) {
      if ((n * d) % 2 != 0 || d >= n) continue;
      for (const Graph& g : enumerate_regular(n, d)) {
        if (!is_connected(g)) continue;
        const auto exact = cop_number(g, 2);
        const auto naive = oracle::naive_cop_number(g, 2);
        ASSERT_EQ(exact.has_value(), naive.has_value());
        if (exact) EXPECT_EQ(*exact, static_cast<std::size_t>(*naive));
      }
    }
  }
}

TEST(SolveKTest, EveryLabelMatchesNaiveOracle) {
  for (const Graph& g : {petersen_graph(), cycle_graph(7), complete_bipartite(3, 3)}) {
    for (std::size_t k = 1; k <= 2; ++k) {
      const GameTable t = solve_k(g, k);
      const oracle::NaiveGame naive(g, g, static_cast<int>(k));
      for (std::size_t c = 0; c < t.config_count(); ++c) {
        const auto cops = t.config(c);
        const std::vector<int> ordered(cops.begin(), cops.end());
        for (Vertex r = 0; r < g.order(); ++r) {
          EXPECT_EQ(t.cop_win({cops, r, Mover::cops}), naive.cop_turn_wins(ordered, static_cast<int>(r)));
        }
      }
    }
  }
}

TEST(SolveKTest, InitialPlacementIrrelevantAtCopNumber) {
  for (std::size_t n = 4; n <= 7; ++n) {
    for (std::size_t d : {2u, 3u}) {
      if ((n * d) % 2 != 0 || d >= n) continue;
      for (const Graph& g : enumerate_regular(n, d)) {
        if (!is_connected(g)) continue;
        const auto c = cop_number(g, 3);
        ASSERT_TRUE(c.has_value());
        const GameTable t = solve_k(g, *c);
        EXPECT_EQ(t.winning_placements().size(), t.config_count());
      }
    }
  }
}

TEST(SolveKTest, Monotone) {
  for (const Graph& g : {petersen_graph(), cycle_graph(6), heawood_graph()}) {
    bool previous = false;
    for (std::size_t k = 1; k <= 4; ++k) {
      const bool now = solve_k(g, k).cops_win();
      if (previous) EXPECT_TRUE(now);
      previous = now;
    }
  }
}

TEST(CopWinOneCopTest, AgreesWithSolver) {
  std::vector<Graph> graphs;
  for (std::size_t n = 4; n <= 8; ++n) {
    for (std::size_t d = 2; d < n; ++d) {
      if ((n * d) % 2 != 0) continue;
      for (Graph& g : enumerate_regular(n, d)) {
        if (is_connected(g)) graphs.push_back(std::move(g));
      }
    }
  }
  // Dismantlable graphs that are neither trees nor complete.
  graphs.push_back(Graph::from_edges(5, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 4}}));
  graphs.push_back(complete_bipartite(1, 4));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph g = sample_regular(10, 3, seed, 10000);
    if (is_connected(g)) graphs.push_back(g);
  }
  for (const Graph& g : graphs) {
    EXPECT_EQ(is_copwin_one_cop(g), solve_k(g, 1).cops_win()) << to_edge_list(g);
  }
}

// From each winning placement, the stored moves must catch every robber:
// explores all robber placements and replies and checks that the recorded
// capture depth strictly drops every round.
void expect_strategy_captures(const Graph& g, const GameTable& t) {
  ASSERT_TRUE(t.cops_win());
  const auto placement = t.winning_placements().front();
  std::vector<std::pair<std::vector<Vertex>, Vertex>> stack;
  std::set<std::pair<std::vector<Vertex>, Vertex>> seen;
  for (Vertex r = 0; r < g.order(); ++r) stack.emplace_back(placement, r);
  while (!stack.empty()) {
    auto [cops, r] = stack.back();
    stack.pop_back();
    if (!seen.insert({cops, r}).second) continue;
    const std::size_t depth = t.capture_rounds(cops, r);
    ASSERT_LE(depth, t.state_count());
    if (std::binary_search(cops.begin(), cops.end(), r)) continue;
    const auto next = t.best_move(cops, r);
    std::vector<Vertex> from = cops;
    // The move is legal: some matching pairs each cop with a closed neighbor.
    std::sort(from.begin(), from.end());
    bool legal = false;
    do {
      bool ok = true;
      for (std::size_t i = 0; i < from.size() && ok; ++i) {
        ok = from[i] == next[i] || g.has_edge(from[i], next[i]);
      }
      legal = legal || ok;
    } while (!legal && std::next_permutation(from.begin(), from.end()));
    ASSERT_TRUE(legal);
    if (std::binary_search(next.begin(), next.end(), r)) {
      EXPECT_EQ(depth, 1u);
      continue;
    }
    std::vector<Vertex> replies(g.neighbors(r).begin(), g.neighbors(r).end());
    replies.push_back(r);
    for (Vertex q : replies) {
      ASSERT_TRUE(t.cop_win({next, q, Mover::cops}));
      EXPECT_LT(t.capture_rounds(next, q), depth);
      stack.emplace_back(next, q);
    }
  }
}

TEST(SolveKTest, StoredMovesCaptureAgainstEveryRobber) {
  expect_strategy_captures(petersen_graph(), solve_k(petersen_graph(), 3));
  expect_strategy_captures(cycle_graph(8), solve_k(cycle_graph(8), 2));
  expect_strategy_captures(balanced_tree(3, 3), solve_k(balanced_tree(3, 3), 1));
  expect_strategy_captures(heawood_graph(), solve_k(heawood_graph(), 3));
}

TEST(SolveTwoGraphsTest, SameGraphMatchesSolveK) {
  EXPECT_EQ(solve_two_graphs(petersen_graph(), petersen_graph(), 2).to_json(),
            solve_k(petersen_graph(), 2).to_json());
  EXPECT_EQ(solve_two_graphs(cycle_graph(6), cycle_graph(6), 2).cops_win(),
            solve_k(cycle_graph(6), 2).cops_win());
  EXPECT_TRUE(solve_two_graphs(cycle_graph(6), cycle_graph(6), 2).cops_win());
}

TEST(SolveTwoGraphsTest, SpanningTreeRobberIsWeaker) {
  EXPECT_TRUE(solve_two_graphs(path_graph(6), cycle_graph(6), 1).cops_win());
  // Spanning tree of the Petersen graph: drop the outer cycle edge 4-0 and
  // every inner edge except a path through them.
  const Graph p = petersen_graph();
  std::vector<Edge> tree;
  for (Vertex i = 0; i < 4; ++i) tree.emplace_back(i, i + 1);
  for (Vertex i = 0; i < 5; ++i) tree.emplace_back(i, i + 5);
  const Graph t = Graph::from_edges(10, tree);
  ASSERT_TRUE(is_subgraph(t, p));
  EXPECT_TRUE(solve_two_graphs(t, p, 1).cops_win());
  EXPECT_EQ(solve_two_graphs(t, p, 1).cops_win(), oracle::NaiveGame(t, p, 1).cops_win());
}

TEST(SolveTwoGraphsTest, AgreesWithNaiveOracleOnRandomSubgraphs) {
  Rng rng(11);
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 20; ++seed) {
    const Graph h = sample_regular(8, 3, seed, 10000);
    if (!is_connected(h)) continue;
    std::vector<Edge> edges = h.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    edges.resize(edges.size() - 3);
    const Graph g = Graph::from_edges(8, edges);
    if (!is_connected(g)) continue;
    ++checked;
    for (std::size_t k = 1; k <= 2; ++k) {
      EXPECT_EQ(solve_two_graphs(g, h, k).cops_win(),
                oracle::NaiveGame(g, h, static_cast<int>(k)).cops_win());
    }
    const auto ch = cop_number(h, 3);
    ASSERT_TRUE(ch.has_value());
    EXPECT_TRUE(solve_two_graphs(g, h, *ch).cops_win());
  }
}

TEST(SolveTwoGraphsTest, VertexSetMismatch) {
  EXPECT_THROW(solve_two_graphs(cycle_graph(5), cycle_graph(6), 1), Error);
}

TEST(GameTableTest, Json) {
  const GameTable t = solve_k(cycle_graph(4), 2);
  const auto j = t.to_json();
  EXPECT_EQ(j["k"], 2);
  EXPECT_EQ(j["n"], 4);
  EXPECT_EQ(j["cops_win"], true);
  EXPECT_EQ(j["cop_to_move"].size(), t.config_count() * 4);
  EXPECT_EQ(j["robber_graph_fingerprint"], fingerprint(cycle_graph(4)));
}

TEST(PlayoutTest, DominatingSetCapturesWithinTwoSteps) {
  std::vector<Graph> graphs = {petersen_graph(), heawood_graph(), cycle_graph(9),
                               balanced_tree(3, 3)};
  for (std::uint64_t seed = 0; seed < 10; ++seed) graphs.push_back(sample_regular(40, 3, seed, 10000));
  for (const Graph& g : graphs) {
    const DominatingSet ds = greedy_dominating_set(g);
    for (const auto& robber : {evader_robber_policy(), random_robber_policy()}) {
      const PlayoutResult r = playout(g, dominating_cop_policy(g, ds), robber, 5, 100);
      EXPECT_TRUE(r.captured);
      EXPECT_LE(r.steps, 2u);
    }
  }
}

TEST(PlayoutTest, StayingRobberCaughtWithinEccentricity) {
  for (const Graph& g : {petersen_graph(), path_graph(12), heawood_graph(), cycle_graph(11)}) {
    const CopPolicy cop = pursuit_cop_policy(g, 1);
    Rng rng(0);
    const Vertex start = cop.place(g, rng).front();
    const PlayoutResult r = playout(g, cop, stay_robber_policy(), 3, 1000);
    EXPECT_TRUE(r.captured);
    EXPECT_LE(r.steps, static_cast<std::size_t>(eccentricity(g, start)));
  }
}

TEST(PlayoutTest, CopOnEveryVertexCapturesAtPlacement) {
  const Graph g = petersen_graph();
  std::vector<Vertex> all(10);
  for (Vertex v = 0; v < 10; ++v) all[v] = v;
  const PlayoutResult r = playout(g, stay_cop_policy(all), random_robber_policy(), 1, 10);
  EXPECT_TRUE(r.captured);
  EXPECT_EQ(r.steps, 0u);
  EXPECT_EQ(r.trace.size(), 1u);
}

TEST(PlayoutTest, IllegalMoveNamesPolicy) {
  CopPolicy teleport = random_cop_policy(1);
  teleport.name = "teleporter";
  teleport.place = [](const Graph&, Rng&) { return std::vector<Vertex>{0}; };
  teleport.move = [](const Graph&, std::span<const Vertex>, Vertex, Rng&) {
    return std::vector<Vertex>{7};
  };
  EXPECT_THAT(error_of([&] { playout(cycle_graph(12), teleport, stay_robber_policy(), 1, 5); }),
              HasSubstr("teleporter"));

  RobberPolicy jumper = random_robber_policy();
  jumper.name = "jumper";
  jumper.move = [](const Graph&, std::span<const Vertex>, Vertex r, Rng&) {
    return static_cast<Vertex>((r + 5) % 12);
  };
  EXPECT_THAT(error_of([&] {
                playout(cycle_graph(12), stay_cop_policy(std::vector<Vertex>{0}), jumper, 1, 5);
              }),
              HasSubstr("jumper"));
}

TEST(PlayoutTest, Deterministic) {
  const Graph g = sample_regular(50, 3, 4, 10000);
  const auto a = playout(g, random_cop_policy(2), random_robber_policy(), 9, 200);
  const auto b = playout(g, random_cop_policy(2), random_robber_policy(), 9, 200);
  EXPECT_EQ(a.captured, b.captured);
  EXPECT_EQ(a.steps, b.steps);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(a.trace[i].cops, b.trace[i].cops);
    EXPECT_EQ(a.trace[i].robber, b.trace[i].robber);
  }
}

}  // namespace
}  // namespace copnum
