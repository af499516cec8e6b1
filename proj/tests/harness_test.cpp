#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "copnum/error.hpp"
#include "copnum/graph.hpp"
#include "copnum/harness.hpp"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace copnum::harness {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("copnum_harness_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::map<std::string, std::string> tree_contents(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) out[fs::relative(entry.path(), root).string()] = slurp(entry.path());
  }
  return out;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

ExperimentConfig base(const std::string& command, const fs::path& out) {
  ExperimentConfig c;
  c.command = command;
  c.out = out.string();
  return c;
}

TEST(ConfigTest, ParsesFlatKeyValueText) {
  const ExperimentConfig c = parse_config(
      "# comment\n"
      "command = solve\n"
      "n = 10, 20\n"
      "d = 3\n"
      "seeds = 0..3, 9   # trailing comment\n"
      "kmax = 4\n"
      "connected = true\n"
      "nbhd.eps = 0.3\n");
  EXPECT_EQ(c.command, "solve");
  EXPECT_EQ(c.n, (std::vector<std::size_t>{10, 20}));
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{0, 1, 2, 3, 9}));
  EXPECT_EQ(c.k_max, 4u);
  EXPECT_TRUE(c.connected);
  EXPECT_EQ(c.constant("nbhd.eps"), 0.3);
  EXPECT_EQ(c.constant("nbhd.c"), 0.25);
  EXPECT_NO_THROW(c.validate());
}

TEST(ConfigTest, FlagsAppliedAfterFileWin) {
  ExperimentConfig c = parse_config("n = 10\nkmax = 2\n");
  apply_setting(c, "kmax", "5");
  EXPECT_EQ(c.k_max, 5u);
  EXPECT_EQ(c.n, (std::vector<std::size_t>{10}));
}

TEST(ConfigTest, ErrorsNameTheLine) {
  try {
    parse_config("n = 10\n\nkmax = many\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_THAT(std::string(e.what()), HasSubstr("kmax"));
  }
  try {
    parse_config("n = 10\nbogus = 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_config("just words\n"), ParseError);
  EXPECT_THROW(parse_config("nbhd.nothing = 1\n"), ParseError);
}

TEST(ConfigTest, ValidationRules) {
  ExperimentConfig c = parse_config("command = solve\nn = 10\nd = 3\nseeds = 1, 1\n");
  EXPECT_THROW(c.validate(), Error);
  c.seeds = {1, 2};
  EXPECT_NO_THROW(c.validate());
  c.d.clear();
  EXPECT_THROW(c.validate(), Error);
  c.d = {3};
  c.checks = {"nope"};
  EXPECT_THROW(c.validate(), Error);
  c.checks.clear();
  c.k_max = 0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(RecordTest, InvariantsCheckedAtWriteTime) {
  ExperimentRecord good;
  good.seed = 4;
  good.n = 10;
  good.d = 3;
  good.connected = true;
  good.cop_exact = 3;
  good.gamma_greedy = 3;
  good.method = "exact";
  EXPECT_EQ(csv_row(good), "4,10,3,true,3,,3,exact,");

  ExperimentRecord bad = good;
  bad.cop_upper = 2;
  std::ostringstream out;
  const std::vector<ExperimentRecord> rows = {good, bad};
  EXPECT_THROW(write_records(out, rows), Error);
  EXPECT_TRUE(out.str().empty());

  bad = good;
  bad.gamma_greedy = 2;
  EXPECT_THROW(validate_record(bad), Error);
  EXPECT_EQ(csv_header(), "seed,n,d,connected,cop_exact,cop_upper,gamma_greedy,method,runtime_ms");
}

TEST(GenerateTest, DeterministicFilesAndPerInstanceErrors) {
  const fs::path a = scratch("gen_a");
  const fs::path b = scratch("gen_b");
  ExperimentConfig c = base("generate", a);
  c.n = {20, 5};
  c.d = {3};
  c.seeds = {7};
  const RunSummary s = run_command(c);
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_THAT(s.warnings[0], HasSubstr("n5_d3_s7"));
  c.out = b.string();
  run_command(c);
  EXPECT_EQ(slurp(a / "graphs" / "n20_d3_s7.edges"), slurp(b / "graphs" / "n20_d3_s7.edges"));
  EXPECT_EQ(tree_contents(a), tree_contents(b));
  const Graph g = load_edge_list((a / "graphs" / "n20_d3_s7.edges").string());
  EXPECT_EQ(g.order(), 20u);
  EXPECT_TRUE(g.is_regular());
}

TEST(GenerateTest, CubicGraphsUsuallyConnectedOnFirstDraw) {
  const fs::path dir = scratch("gen_conn");
  ExperimentConfig c = base("generate", dir);
  c.n = {50};
  c.d = {3};
  for (std::uint64_t s = 0; s < 100; ++s) c.seeds.push_back(s);
  c.connected = true;
  run_command(c);
  const auto rows = read_csv(dir / "generate.csv");
  ASSERT_EQ(rows.size(), 101u);
  std::size_t first_draw = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][4], "true");
    if (rows[i][5] == "0") ++first_draw;
  }
  EXPECT_GE(first_draw, 95u);
}

TEST(SolveTest, FixtureFiles) {
  const fs::path dir = scratch("solve_fix");
  save_edge_list((dir / "petersen.edges").string(), petersen_graph());
  save_edge_list((dir / "tree.edges").string(), balanced_tree(3, 3));
  ExperimentConfig c = base("solve", dir / "out");
  c.graphs = {(dir / "petersen.edges").string(), (dir / "tree.edges").string()};
  run_command(c);
  const auto rows = read_csv(dir / "out" / "solve.csv");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][4], "3");
  EXPECT_EQ(rows[1][7], "exact");
  EXPECT_EQ(rows[2][4], "1");
  EXPECT_EQ(rows[2][0], "");  // no seed for file inputs
}

TEST(SolveTest, TwoGraphRowIsSandwiched) {
  const fs::path dir = scratch("solve_two");
  const Graph h = petersen_graph();
  // Drop a perfect matching's worth of edges that keeps the robber graph connected.
  std::vector<Edge> kept;
  for (const Edge& e : h.edges()) {
    if (!(e.first == 0 && e.second == 1) && !(e.first == 2 && e.second == 3)) kept.push_back(e);
  }
  const Graph g = Graph::from_edges(10, kept);
  ASSERT_TRUE(is_connected(g));
  save_edge_list((dir / "h.edges").string(), h);
  save_edge_list((dir / "g.edges").string(), g);
  ExperimentConfig c = base("solve", dir / "out");
  c.graphs = {(dir / "g.edges").string()};
  c.cops_graph = (dir / "h.edges").string();
  run_command(c);
  const auto rows = read_csv(dir / "out" / "solve.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][7], "two_graph");
  ASSERT_FALSE(rows[1][4].empty());
  EXPECT_EQ(rows[1][5], "3");  // c(H)
  EXPECT_LE(std::stoul(rows[1][4]), 3u);
}

TEST(SolveTest, GeneratedInstancesAgreeWithDirectSolve) {
  const fs::path dir = scratch("solve_gen");
  ExperimentConfig c = base("solve", dir);
  c.n = {12, 10};
  c.d = {3};
  c.seeds = {2, 1};
  c.connected = true;
  run_command(c);
  const auto rows = read_csv(dir / "solve.csv");
  ASSERT_EQ(rows.size(), 5u);
  // Sorted by (n, d, seed).
  EXPECT_EQ(rows[1][1] + "/" + rows[1][0], "10/1");
  EXPECT_EQ(rows[4][1] + "/" + rows[4][0], "12/2");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const Instance inst = generate_instance(std::stoul(rows[i][1]), 3, std::stoull(rows[i][0]),
                                            true, 100, 100000);
    EXPECT_EQ(rows[i][4], std::to_string(*cop_number(*inst.graph, 3)));
  }
}

TEST(SolveTest, BudgetExhaustionIsNotFatal) {
  const fs::path dir = scratch("solve_budget");
  ExperimentConfig c = base("solve", dir);
  c.n = {30};
  c.d = {3};
  c.seeds = {0};
  c.connected = true;
  c.budget = 1000;
  const RunSummary s = run_command(c);
  const auto rows = read_csv(dir / "solve.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_THAT(rows[1][7], HasSubstr("heuristic"));
  EXPECT_EQ(rows[1][4], "");
  EXPECT_FALSE(s.warnings.empty());
}

TEST(VerifyTest, TreeFixtureGrowsLikeATree) {
  const fs::path dir = scratch("verify_tree");
  save_edge_list((dir / "tree.edges").string(), balanced_tree(4, 3));
  ExperimentConfig c = base("verify", dir / "out");
  c.graphs = {(dir / "tree.edges").string()};
  c.checks = {"union_ball", "disjoint_family"};
  c.constants["center"] = 0;
  c.constants["disjoint.tol"] = 0.0;
  run_command(c);
  const auto rows = read_csv(dir / "out" / "verify_summary.csv");
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 1; i < 3; ++i) {
    EXPECT_EQ(rows[i][5], "ok") << rows[i][4];
    EXPECT_EQ(rows[i][9], "1") << rows[i][4];
    EXPECT_EQ(rows[i][7], "0") << rows[i][4];
  }
  const auto doc = nlohmann::json::parse(slurp(dir / "out" / "verify" / "tree_union_ball.json"));
  EXPECT_EQ(doc["worst_ratio"], 1.0);
  EXPECT_EQ(doc["status"], "ok");
}

TEST(VerifyTest, RandomCubicSuitePasses) {
  const fs::path dir = scratch("verify_cubic");
  ExperimentConfig c = base("verify", dir);
  c.n = {1000};
  c.d = {3};
  c.seeds = {3};
  run_command(c);
  const auto rows = read_csv(dir / "verify_summary.csv");
  ASSERT_EQ(rows.size(), default_checks().size() + 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i][5], "ok") << rows[i][4] << ": " << rows[i].back();
    EXPECT_LE(std::stod(rows[i][8]), 0.01) << rows[i][4];
  }
}

TEST(VerifyTest, SkipsWithReasonAndReportsParseLine) {
  const fs::path dir = scratch("verify_skip");
  save_edge_list((dir / "cycle.edges").string(), cycle_graph(30));
  {
    std::ofstream bad(dir / "bad.edges");
    bad << "4 2\n0 1\n1 x\n";
  }
  ExperimentConfig c = base("verify", dir / "out");
  c.graphs = {(dir / "cycle.edges").string(), (dir / "bad.edges").string()};
  c.checks = {"disjoint_family"};
  const RunSummary s = run_command(c);
  const auto rows = read_csv(dir / "out" / "verify_summary.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][5], "skipped");
  EXPECT_THAT(rows[1].back(), HasSubstr("radius window"));
  bool named_line = false;
  for (const std::string& w : s.warnings) {
    if (w.find("bad") != std::string::npos && w.find("line 3") != std::string::npos) named_line = true;
  }
  EXPECT_TRUE(named_line);
}

TEST(ScalingTest, SmallCubicTableIsComplete) {
  const fs::path dir = scratch("scaling_cubic");
  ExperimentConfig c = base("scaling", dir);
  c.n = {10, 20, 30};
  c.d = {3};
  c.seeds = {0, 1, 2};
  run_command(c);
  const auto rows = read_csv(dir / "scaling.csv");
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][4], "3");
    const double ratio = std::stod(rows[i][7]);
    EXPECT_TRUE(std::isfinite(ratio));
    EXPECT_GT(ratio, 0.0);
  }
  const auto doc = nlohmann::json::parse(slurp(dir / "scaling_summary.json"));
  EXPECT_TRUE(doc["slope_log_bound_vs_log_n"].is_number());
}

TEST(ScalingTest, CirculantRegimeWithinDominationBound) {
  const fs::path dir = scratch("scaling_circ");
  ExperimentConfig c = base("scaling", dir);
  c.family = "circulant";
  c.n = {100, 400, 1600};
  run_command(c);
  const auto doc = nlohmann::json::parse(slurp(dir / "scaling_summary.json"));
  EXPECT_EQ(doc["within_domination_bound"], true);
  const auto rows = read_csv(dir / "scaling.csv");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(std::stod(rows[i][8]), std::stod(rows[i][9]));
  }
}

TEST(ScalingTest, SingleSizeIsAnError) {
  ExperimentConfig c = base("scaling", scratch("scaling_one"));
  c.n = {10};
  c.d = {3};
  c.seeds = {0};
  EXPECT_THROW(run_command(c), Error);
}

TEST(PlayoutTest, WritesTracesAndCapturesOnPetersen) {
  const fs::path dir = scratch("playout");
  save_edge_list((dir / "petersen.edges").string(), petersen_graph());
  ExperimentConfig c = base("playout", dir / "out");
  c.graphs = {(dir / "petersen.edges").string()};
  c.seeds = {0, 1};
  c.cop_policy = "dominating";
  c.k_max = 3;
  run_command(c);
  const auto rows = read_csv(dir / "out" / "playout.csv");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][7], "true");
  const auto trace = nlohmann::json::parse(slurp(dir / "out" / "playout" / "petersen_p0.json"));
  EXPECT_EQ(trace["captured"], true);
  EXPECT_FALSE(trace["trace"].empty());

  c.cop_policy = "nobody";
  const RunSummary s = run_command(c);
  EXPECT_FALSE(s.warnings.empty());
}

TEST(DeterminismTest, RepeatedRunsAreByteIdentical) {
  for (const std::string cmd : {"solve", "verify", "scaling", "playout"}) {
    const fs::path a = scratch("det_a_" + cmd);
    const fs::path b = scratch("det_b_" + cmd);
    ExperimentConfig c = base(cmd, a);
    c.n = cmd == "verify" ? std::vector<std::size_t>{600} : std::vector<std::size_t>{12, 16};
    c.d = {3};
    c.seeds = {4, 5};
    c.connected = true;
    c.threads = 4;
    run_command(c);
    c.out = b.string();
    c.threads = 1;
    run_command(c);
    EXPECT_EQ(tree_contents(a), tree_contents(b)) << cmd;
  }
}

}  // namespace
}  // namespace copnum::harness
