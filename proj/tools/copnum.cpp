// copnum: generate | solve | verify | scaling | playout
//
// Settings come from --config (flat key = value file) and then from flags,
// so flags win. SPDLOG_LEVEL sets the log level.

#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "copnum/error.hpp"
#include "copnum/harness.hpp"

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const std::string& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("copnum"));
  spdlog::set_pattern("[%l] %v");
  spdlog::cfg::load_env_levels();

  CLI::App app{"Cops and robbers on random regular graphs"};
  std::string command;
  std::string config_path;
  std::string n, d, seeds, kmax, trials, cops_graph, out, checks, family, cop_policy,
      robber_policy, max_steps, threads, budget, max_resamples;
  std::vector<std::string> graphs;
  std::vector<std::string> sets;
  bool connected = false;
  bool timing = false;

  app.add_option("command", command, "generate | solve | verify | scaling | playout")
      ->check(CLI::IsMember({"generate", "solve", "verify", "scaling", "playout"}));
  app.add_option("--config", config_path, "key = value settings file");
  // Flags are kept as text and fed through the same parser as the file.
  std::vector<std::pair<std::string, CLI::Option*>> text_flags = {
      {"n", app.add_option("--n", n, "vertex counts, e.g. 10,20 or 10..12")},
      {"d", app.add_option("--d", d, "degrees")},
      {"seeds", app.add_option("--seeds", seeds, "seeds, e.g. 0..99")},
      {"kmax", app.add_option("--kmax", kmax, "largest cop count tried")},
      {"trials", app.add_option("--trials", trials, "heuristic playout trials")},
      {"cops_graph", app.add_option("--cops-graph", cops_graph, "graph file the cops move on")},
      {"out", app.add_option("--out", out, "output directory")},
      {"checks", app.add_option("--checks", checks, "verify checks, comma separated")},
      {"family", app.add_option("--family", family, "scaling family: regular | circulant")},
      {"cop_policy", app.add_option("--cop-policy", cop_policy, "dominating | pursuit | random | stay")},
      {"robber_policy", app.add_option("--robber-policy", robber_policy, "evader | random | stay")},
      {"max_steps", app.add_option("--max-steps", max_steps, "playout horizon, 0 = 4n")},
      {"threads", app.add_option("--threads", threads, "worker threads, 0 = all cores")},
      {"budget", app.add_option("--budget", budget, "solver state-move budget")},
      {"max_resamples", app.add_option("--max-resamples", max_resamples, "connectivity redraws")},
  };
  auto* graphs_opt = app.add_option("--graph", graphs, "input graph files (edge list)");
  app.add_option("--set", sets, "check constant override, key=value");
  auto* connected_opt = app.add_flag("--connected", connected, "redraw until connected");
  auto* timing_opt = app.add_flag("--timing", timing, "fill the runtime_ms column");

  CLI11_PARSE(app, argc, argv);

  try {
    copnum::harness::ExperimentConfig config;
    if (!config_path.empty()) config = copnum::harness::load_config(config_path);
    if (!command.empty()) config.command = command;
    for (const auto& [key, opt] : text_flags) {
      if (opt->count() > 0) copnum::harness::apply_setting(config, key, opt->as<std::string>());
    }
    if (graphs_opt->count() > 0) copnum::harness::apply_setting(config, "graphs", join(graphs));
    if (connected_opt->count() > 0) config.connected = connected;
    if (timing_opt->count() > 0) config.timing = timing;
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw copnum::Error("--set expects key=value, got '" + kv + "'");
      copnum::harness::apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (config.command.empty()) throw copnum::Error("no command given");

    spdlog::info("running {}", config.command);
    const copnum::harness::RunSummary summary = copnum::harness::run_command(config);
    for (const std::string& w : summary.warnings) spdlog::warn("{}", w);
    for (const std::string& f : summary.written) spdlog::debug("wrote {}", f);
    spdlog::info("{} files written to {}", summary.written.size(), config.out);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
