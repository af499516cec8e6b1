#include <cmath>
#include <map>
#include <set>

#include "copnum/error.hpp"
#include "copnum/neighborhood.hpp"
#include "copnum/pairing.hpp"
#include "copnum/stats.hpp"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles/regular_oracles.hpp"

namespace copnum {
namespace {

using ::testing::HasSubstr;

void expect_valid_involution(const Pairing& p) {
  ASSERT_EQ(p.mate.size(), p.n * p.degree);
  for (std::uint32_t a = 0; a < p.mate.size(); ++a) {
    ASSERT_LT(p.mate[a], p.mate.size());
    EXPECT_NE(p.mate[a], a);
    EXPECT_EQ(p.mate[p.mate[a]], a);
  }
}

TEST(RandomPairingTest, SmallCases) {
  const Pairing two = random_pairing(2, 1, 99);
  EXPECT_EQ(two.mate, (std::vector<std::uint32_t>{1, 0}));

  const Pairing a = random_pairing(2, 3, 1234);
  const Pairing b = random_pairing(2, 3, 1234);
  expect_valid_involution(a);
  EXPECT_EQ(a.mate, b.mate);
  EXPECT_EQ(a.seed, 1234u);
}

TEST(RandomPairingTest, OddDegreeSumRejected) {
  try {
    random_pairing(5, 3, 1);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_THAT(std::string(e.what()), HasSubstr("degree sum must be even"));
  }
  EXPECT_THROW(random_pairing(1, 2, 1), Error);
  EXPECT_THROW(random_pairing(4, 0, 1), Error);
}

TEST(RandomPairingTest, UniformOverAllFifteenMatchings) {
  // Oracle: the 15 = 5!! matchings of 6 points, listed exhaustively.
  std::map<oracle::PointPairs, std::size_t> index;
  oracle::for_each_matching(6, [&](const oracle::PointPairs& m) { index.emplace(m, index.size()); });
  ASSERT_EQ(index.size(), 15u);

  constexpr std::size_t kSamples = 100000;
  std::vector<std::uint64_t> counts(15, 0);
  Rng rng(2024);
  for (std::size_t i = 0; i < kSamples; ++i) {
    const Pairing p = random_pairing(2, 3, rng);
    oracle::PointPairs key;
    for (std::uint32_t a = 0; a < 6; ++a) {
      if (a < p.mate[a]) key.emplace_back(static_cast<int>(a), static_cast<int>(p.mate[a]));
    }
    ++counts[index.at(key)];
  }
  const double expected = kSamples / 15.0;
  const double sigma = std::sqrt(kSamples * (1.0 / 15.0) * (14.0 / 15.0));
  // 4 sigma per cell keeps the family-wise false alarm rate near 1e-3.
  for (std::uint64_t c : counts) EXPECT_NEAR(static_cast<double>(c), expected, 4 * sigma);
  EXPECT_GE(chi_square_uniform(counts).p_value, 0.01);
}

TEST(ProjectTest, Examples) {
  // Points 0,1 are both in bucket 0 when degree is 2.
  const Pairing loop = pairing_from_pairs(2, 2, {{0, 1}, {2, 3}});
  EXPECT_GE(project(loop).loops, 1u);
  EXPECT_FALSE(project(loop).simple());

  const Pairing doubled = pairing_from_pairs(2, 2, {{0, 2}, {1, 3}});
  const MultigraphSummary s = project(doubled);
  EXPECT_EQ(s.loops, 0u);
  EXPECT_EQ(s.multi_edges, 1u);
  EXPECT_FALSE(s.simple());
  EXPECT_FALSE(projects_to_simple(doubled));

  const Pairing matching = pairing_from_pairs(4, 1, {{0, 1}, {2, 3}});
  EXPECT_TRUE(project(matching).simple());
  EXPECT_TRUE(projects_to_simple(matching));
  const Graph g = project(matching).to_graph();
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {2, 3}}));

  EXPECT_THROW(pairing_from_pairs(2, 2, {{0, 1}, {1, 3}}), Error);
}

TEST(ProjectTest, FastSimplicityAgreesWithProjection) {
  Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    const Pairing p = random_pairing(6 + 2 * (i % 5), 3, rng);
    EXPECT_EQ(projects_to_simple(p), project(p).simple());
  }
}

TEST(SampleRegularTest, Examples) {
  const Graph k4 = complete_graph(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_EQ(sample_regular(4, 3, seed, 10000), k4);
  EXPECT_THROW(sample_regular(5, 3, 1, 100), Error);
  EXPECT_THROW(sample_regular(4, 4, 1, 100), Error);

  const Graph g = sample_regular(100, 3, 17, 10000);
  EXPECT_TRUE(g.is_regular());
  EXPECT_EQ(g.min_degree(), 3u);
  EXPECT_EQ(g, sample_regular(100, 3, 17, 10000));
}

TEST(SampleRegularTest, BudgetExhaustion) {
  // P(simple) for 12-point buckets is about exp(-143/4); zero retries fail.
  try {
    sample_regular(40, 12, 3, 0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_THAT(std::string(e.what()), HasSubstr("rejection budget exhausted"));
  }
}

TEST(SimplicityRateTest, DegreeOneAlwaysSimple) {
  EXPECT_EQ(simplicity_rate(100, 1, 500, 3), 1.0);
  EXPECT_THROW(simplicity_rate(10, 3, 0, 1), Error);
}

TEST(SimplicityRateTest, TwoBucketsOfTwoNeverSimple) {
  // Oracle: all 3 matchings of 4 points; one gives two loops, two give a
  // doubled edge, so none is simple.
  int simple = 0;
  int total = 0;
  oracle::for_each_matching(4, [&](const oracle::PointPairs& m) {
    ++total;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (auto [a, b] : m) pairs.emplace_back(a, b);
    if (project(pairing_from_pairs(2, 2, pairs)).simple()) ++simple;
  });
  EXPECT_EQ(total, 3);
  EXPECT_EQ(simple, 0);
  EXPECT_EQ(oracle::count_simple_matchings(2, 2), 0u);
  EXPECT_EQ(simplicity_rate(2, 2, 1000, 5), 0.0);
}

TEST(SimplicityRateTest, MatchesExactRateAtSmallN) {
  // Exact P(simple) = (#labeled cubic graphs) * (3!)^n / (3n-1)!!.
  const double exact6 = static_cast<double>(oracle::count_simple_matchings(6, 3)) /
                        static_cast<double>(oracle::double_factorial_odd(17));
  constexpr std::size_t kTrials = 100000;
  const double sigma6 = std::sqrt(exact6 * (1 - exact6) / kTrials);
  EXPECT_NEAR(simplicity_rate(6, 3, kTrials, 41), exact6, 4 * sigma6);

  const double exact8 = static_cast<double>(oracle::count_regular_by_edge_subsets(8, 3)) *
                        std::pow(6.0, 8) / static_cast<double>(oracle::double_factorial_odd(23));
  const double sigma8 = std::sqrt(exact8 * (1 - exact8) / kTrials);
  EXPECT_NEAR(simplicity_rate(8, 3, kTrials, 42), exact8, 4 * sigma8);
}

TEST(SimplicityRateTest, LargeNApproachesLimit) {
  EXPECT_NEAR(simplicity_limit(3), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(simplicity_limit_alternate(4), std::exp(1.5 - 2.25), 1e-15);
  EXPECT_NEAR(simplicity_rate(1000, 3, 20000, 7), std::exp(-2.0), 0.01);
}

TEST(ExposureTest, StartingFromEverythingExposesAllInRoundOne) {
  const Pairing p = random_pairing(20, 3, 5);
  const ExposureTrace t = exposure_process(p, VertexSet::full(20), 5);
  ASSERT_EQ(t.rounds.size(), 1u);
  EXPECT_EQ(t.rounds[0].pairs, 30u);
  EXPECT_EQ(t.rounds[0].bad_pairs, 30u);
  EXPECT_TRUE(t.rounds[0].reached.empty());
}

TEST(ExposureTest, RoundsAreDisjointAndBadPairsBounded) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const Pairing p = random_pairing(200, 4, rng);
    const ExposureTrace t = exposure_process(p, VertexSet(200, {0, 7, 9}), 6);
    VertexSet seen = t.start;
    for (const auto& r : t.rounds) {
      EXPECT_LE(r.bad_pairs, r.pairs);
      EXPECT_FALSE(r.reached.intersects(seen));
      seen = seen | r.reached;
    }
  }
}

TEST(ExposureTest, NoBadPairsMeansPerfectTreeGrowth) {
  // Over many pairings, every trace with zero bad pairs through round r has
  // |S(V', r)| = k (d+1) d^(r-1) for bucket size d+1.
  Rng rng(7);
  int clean = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Pairing p = random_pairing(5000, 4, rng);
    const VertexSet start(5000, {1, 2000, 4000});
    const ExposureTrace t = exposure_process(p, start, 4);
    std::size_t bad = 0;
    std::size_t expected = 3 * 4;
    for (const auto& r : t.rounds) {
      bad += r.bad_pairs;
      if (bad == 0) {
        ++clean;
        EXPECT_EQ(r.reached.size(), expected) << "round " << r.round;
      }
      expected *= 3;
    }
  }
  EXPECT_GT(clean, 300);
}

TEST(ExposureTest, AgreesWithGraphSpheresAndExcess) {
  Rng rng(9);
  int simple = 0;
  for (int trial = 0; trial < 400 && simple < 40; ++trial) {
    const Pairing p = random_pairing(60, 3, rng);
    if (!projects_to_simple(p)) continue;
    ++simple;
    const Graph g = project(p).to_graph();
    const VertexSet start(60, {static_cast<Vertex>(trial % 60)});
    const ExposureTrace t = exposure_process(p, start, 5);
    std::size_t bad = 0;
    for (const auto& r : t.rounds) {
      EXPECT_EQ(r.reached, sphere(g, start, r.round));
      bad += r.bad_pairs;
      EXPECT_EQ(ball_graph(g, start, r.round).excess, bad) << "round " << r.round;
    }
  }
  EXPECT_EQ(simple, 40);
}

TEST(ExposureTest, FewBadPairsEarlyInLargePairing) {
  // n=1000, buckets of 4, two rounds reach 1 + 4 + 12 = 17 ~ n/64 vertices.
  int within = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Pairing p = random_pairing(1000, 4, seed);
    const ExposureTrace t = exposure_process(p, VertexSet(1000, {0}), 2);
    if (t.total_bad_pairs <= 20) ++within;
  }
  EXPECT_GE(within, 990);
}

TEST(ExposureTest, JsonRecords) {
  const Pairing p = random_pairing(50, 3, 3);
  const ExposureTrace t = exposure_process(p, VertexSet(50, {0}), 3);
  const auto j = to_json(t);
  ASSERT_EQ(j.size(), t.rounds.size());
  EXPECT_EQ(j[0]["round"], 1);
  EXPECT_EQ(j[0]["pairs"], 3);
  EXPECT_TRUE(j[0].contains("sphere_size"));
  EXPECT_TRUE(j[0].contains("bad_pairs"));
}

}  // namespace
}  // namespace copnum
