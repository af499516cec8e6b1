#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "copnum/expansion.hpp"
#include "copnum/game.hpp"
#include "copnum/graph.hpp"
#include "json.hpp"

namespace copnum::harness {

struct ExperimentConfig {
  std::string command;
  std::vector<std::size_t> n;
  std::vector<std::size_t> d;
  std::vector<std::uint64_t> seeds;
  std::size_t k_max = 3;
  std::size_t trials = 20;
  bool connected = false;
  std::size_t max_resamples = 100;
  std::size_t max_rejects = 100000;
  std::uint64_t budget = kDefaultStateBudget;
  // Explicit graph files; when empty, instances come from (n, d, seeds).
  std::vector<std::string> graphs;
  std::string cops_graph;
  std::string out = "out";
  // verify: subset of check_names(); empty means default_checks().
  std::vector<std::string> checks;
  // Check constants and tolerance overrides, keyed like "nbhd.eps".
  std::map<std::string, double> constants;
  // scaling: "regular" or "circulant".
  std::string family = "regular";
  std::string cop_policy = "pursuit";
  std::string robber_policy = "evader";
  // playout horizon; 0 means 4n.
  std::size_t max_steps = 0;
  std::size_t threads = 0;
  bool timing = false;

  // Override if set, else the built-in default. Throws on unknown keys.
  double constant(const std::string& key) const;
  // Throws Error describing the first problem.
  void validate() const;
};

// Built-in check constants, keyed as in ExperimentConfig::constants.
const std::map<std::string, double>& default_constants();
const std::vector<std::string>& check_names();
// Everything except disjoint_family, whose radius window saturates random
// cubic graphs below n ~ 10^5 (S(v,2r+1) covers most of the graph).
const std::vector<std::string>& default_checks();

// Applies one setting. Lists are comma separated; integer lists also take
// inclusive ranges "a..b". Keys containing a dot are check constants.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

// Flat "key = value" lines; '#' starts a comment. Errors name the line.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

struct ExperimentRecord {
  // Empty for graphs read from files.
  std::optional<std::uint64_t> seed;
  std::size_t n = 0;
  std::size_t d = 0;
  bool connected = false;
  std::optional<std::size_t> cop_exact;
  std::optional<std::size_t> cop_upper;
  std::optional<std::size_t> gamma_greedy;
  std::string method;
  // Only filled with timing enabled, so default output stays byte-stable.
  std::optional<double> runtime_ms;
};

// Throws Error when cop_exact exceeds cop_upper or gamma_greedy.
void validate_record(const ExperimentRecord& record);
std::string csv_header();
std::string csv_row(const ExperimentRecord& record);
// Validates every record before writing anything.
void write_records(std::ostream& out, std::span<const ExperimentRecord> records);

struct Instance {
  std::string label;
  std::optional<std::uint64_t> seed;
  std::size_t n = 0;
  std::size_t d = 0;
  std::optional<Graph> graph;
  bool connected = false;
  std::size_t resamples = 0;
  // Set when the instance could not be produced.
  std::string error;
};

// Draw 0 uses `seed` directly, resample a uses derive_seed(seed, a). With
// `want_connected`, redraws up to `max_resamples` times and otherwise keeps
// the last draw flagged as disconnected.
Instance generate_instance(std::size_t n, std::size_t d, std::uint64_t seed, bool want_connected,
                           std::size_t max_resamples, std::size_t max_rejects);

// Graph files in the given order, else every (n, d, seed) sorted that way.
std::vector<Instance> build_instances(const ExperimentConfig& config);

struct RunSummary {
  std::vector<std::string> written;
  // Per-instance problems that did not stop the run.
  std::vector<std::string> warnings;
};

RunSummary cmd_generate(const ExperimentConfig& config);
RunSummary cmd_solve(const ExperimentConfig& config);
RunSummary cmd_verify(const ExperimentConfig& config);
RunSummary cmd_scaling(const ExperimentConfig& config);
RunSummary cmd_playout(const ExperimentConfig& config);
RunSummary run_command(const ExperimentConfig& config);

// Record for one graph. Exact search up to k_max where the budget allows,
// pursuit heuristic over the same range, greedy domination always.
ExperimentRecord solve_instance(const Instance& instance, const ExperimentConfig& config);

struct CheckResult {
  std::string check;
  bool skipped = false;
  std::string reason;
  ExpansionReport report;
  // Check-specific fields merged into the JSON report.
  nlohmann::json extra;
};

// One verify check on one graph with the schedule `verify` uses. Throws on
// precondition violations; run_check_or_skip turns them into a skip.
CheckResult run_check(const std::string& name, const Graph& g, const ExperimentConfig& config,
                      std::uint64_t seed);
CheckResult run_check_or_skip(const std::string& name, const Graph& g,
                              const ExperimentConfig& config, std::uint64_t seed);

std::string format_double(double x);

}  // namespace copnum::harness
