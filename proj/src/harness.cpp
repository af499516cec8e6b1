#include "copnum/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "copnum/error.hpp"
#include "copnum/expansion.hpp"
#include "copnum/neighborhood.hpp"
#include "copnum/pairing.hpp"
#include "copnum/parallel.hpp"
#include "copnum/playout.hpp"
#include "copnum/random.hpp"
#include "copnum/stats.hpp"
#include "copnum/strategies.hpp"
#include "json.hpp"

namespace copnum::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t parse_uint(const std::string& text, const std::string& key) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw Error("'" + key + "' expects a non-negative integer, got '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw Error("'" + key + "' value out of range: '" + text + "'");
  }
}

double parse_double(const std::string& text, const std::string& key) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error("'" + key + "' expects a number, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error("'" + key + "' expects true or false, got '" + text + "'");
}

std::vector<std::uint64_t> parse_uint_list(const std::string& value, const std::string& key) {
  std::vector<std::uint64_t> out;
  for (const std::string& item : split_list(value)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_uint(item, key));
      continue;
    }
    const std::uint64_t lo = parse_uint(trim(item.substr(0, dots)), key);
    const std::uint64_t hi = parse_uint(trim(item.substr(dots + 2)), key);
    if (hi < lo) throw Error("'" + key + "' has an empty range '" + item + "'");
    for (std::uint64_t x = lo; x <= hi; ++x) out.push_back(x);
  }
  if (out.empty()) throw Error("'" + key + "' must not be empty");
  return out;
}

std::vector<std::size_t> to_sizes(const std::vector<std::uint64_t>& v) {
  return {v.begin(), v.end()};
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
std::string opt_cell(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

void write_text(const fs::path& path, const std::string& text, RunSummary& summary) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
  summary.written.push_back(path.string());
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

double log_n(std::size_t n) { return std::log(static_cast<double>(n)); }

double ipow(double base, std::size_t e) { return std::pow(base, static_cast<double>(e)); }

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

const std::map<std::string, double>& default_constants() {
  static const std::map<std::string, double> table = {
      {"samples", 200},
      {"center", -1},
      {"union.c", kUnionBallC},
      {"union.tol", kUnionBallTol},
      {"nbhd.c", kNbhdC},
      {"nbhd.eps", kNbhdEps},
      {"induced.c", kInducedC},
      {"excess.K", kExcessK},
      {"excess.eps", kExcessEps},
      {"sphere.r", 4},
      {"sphere.r_prime", 3},
      {"sphere.a1", 1.0 / 9.0 - 0.01},
      // 0 selects 1 + 1/d.
      {"sphere.a2", 0},
      {"sphere.delta", 1.0 / 64.0},
      {"sphere.J", 1},
      {"sphere.samples", 50},
      {"access.c1", kAccessC1},
      {"access.c2", kAccessC2},
      {"access.gamma", kSphereUnionGamma},
      {"access.r", 2},
      {"access.r_prime", 1},
      {"access.samples", 20},
      {"disjoint.tol", 0.5},
  };
  return table;
}

const std::vector<std::string>& default_checks() {
  static const std::vector<std::string> names = {"union_ball", "closed_nbhd",      "induced_edges",
                                                 "excess",     "sphere_regularity", "accessibility"};
  return names;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "union_ball",        "closed_nbhd",   "induced_edges",  "excess",
      "sphere_regularity", "accessibility", "disjoint_family"};
  return names;
}

double ExperimentConfig::constant(const std::string& key) const {
  const auto& defaults = default_constants();
  if (!defaults.contains(key)) throw Error("unknown check constant '" + key + "'");
  const auto it = constants.find(key);
  return it == constants.end() ? defaults.at(key) : it->second;
}

void ExperimentConfig::validate() const {
  static const std::set<std::string> commands = {"generate", "solve", "verify", "scaling",
                                                 "playout"};
  if (!command.empty() && !commands.contains(command)) {
    throw Error("unknown command '" + command + "'");
  }
  const bool from_files = !graphs.empty();
  if (command == "generate" && from_files) throw Error("generate does not read graph files");
  // Circulant scaling picks its own degree and is deterministic.
  const bool circulant_run = command == "scaling" && family == "circulant";
  if (!from_files) {
    if (n.empty()) throw Error("n list must not be empty");
    if (!circulant_run && d.empty()) throw Error("d list must not be empty");
    if (!circulant_run && seeds.empty()) throw Error("seeds must not be empty");
  }
  std::set<std::uint64_t> distinct(seeds.begin(), seeds.end());
  if (distinct.size() != seeds.size()) throw Error("seeds must be distinct");
  if (k_max == 0) throw Error("k_max must be at least 1");
  if (trials == 0) throw Error("trials must be at least 1");
  if (family != "regular" && family != "circulant") {
    throw Error("unknown family '" + family + "'");
  }
  for (const std::string& c : checks) {
    const auto& names = check_names();
    if (std::find(names.begin(), names.end(), c) == names.end()) {
      throw Error("unknown check '" + c + "'");
    }
  }
  for (const auto& [key, value] : constants) {
    if (!default_constants().contains(key)) throw Error("unknown check constant '" + key + "'");
    (void)value;
  }
}

void apply_setting(ExperimentConfig& c, const std::string& raw_key, const std::string& raw) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw);
  if (key.find('.') != std::string::npos) {
    if (!default_constants().contains(key)) throw Error("unknown check constant '" + key + "'");
    c.constants[key] = parse_double(value, key);
  } else if (key == "command") {
    c.command = value;
  } else if (key == "n") {
    c.n = to_sizes(parse_uint_list(value, key));
  } else if (key == "d") {
    c.d = to_sizes(parse_uint_list(value, key));
  } else if (key == "seeds") {
    c.seeds = parse_uint_list(value, key);
  } else if (key == "kmax" || key == "k_max") {
    c.k_max = parse_uint(value, key);
  } else if (key == "trials") {
    c.trials = parse_uint(value, key);
  } else if (key == "connected") {
    c.connected = parse_bool(value, key);
  } else if (key == "max_resamples") {
    c.max_resamples = parse_uint(value, key);
  } else if (key == "max_rejects") {
    c.max_rejects = parse_uint(value, key);
  } else if (key == "budget") {
    c.budget = parse_uint(value, key);
  } else if (key == "graph" || key == "graphs") {
    c.graphs = split_list(value);
  } else if (key == "cops_graph" || key == "cops-graph") {
    c.cops_graph = value;
  } else if (key == "out") {
    c.out = value;
  } else if (key == "checks") {
    c.checks = split_list(value);
  } else if (key == "family") {
    c.family = value;
  } else if (key == "cop_policy") {
    c.cop_policy = value;
  } else if (key == "robber_policy") {
    c.robber_policy = value;
  } else if (key == "max_steps") {
    c.max_steps = parse_uint(value, key);
  } else if (key == "threads") {
    c.threads = parse_uint(value, key);
  } else if (key == "timing") {
    c.timing = parse_bool(value, key);
  } else {
    throw Error("unknown setting '" + key + "'");
  }
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    try {
      apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail() + " (in " + path + ")");
  }
}

void validate_record(const ExperimentRecord& r) {
  if (r.cop_exact && r.cop_upper && *r.cop_exact > *r.cop_upper) {
    throw Error("record invariant violated: cop_exact " + std::to_string(*r.cop_exact) +
                " > cop_upper " + std::to_string(*r.cop_upper) + " (n=" + std::to_string(r.n) +
                ", seed=" + opt_cell(r.seed) + ")");
  }
  if (r.cop_exact && r.gamma_greedy && *r.cop_exact > *r.gamma_greedy) {
    throw Error("record invariant violated: cop_exact " + std::to_string(*r.cop_exact) +
                " > gamma_greedy " + std::to_string(*r.gamma_greedy) + " (n=" +
                std::to_string(r.n) + ", seed=" + opt_cell(r.seed) + ")");
  }
  if (r.method.empty()) throw Error("record has no method tag");
}

std::string csv_header() {
  return "seed,n,d,connected,cop_exact,cop_upper,gamma_greedy,method,runtime_ms";
}

std::string csv_row(const ExperimentRecord& r) {
  std::string row = opt_cell(r.seed);
  row += "," + std::to_string(r.n) + "," + std::to_string(r.d);
  row += r.connected ? ",true" : ",false";
  row += "," + opt_cell(r.cop_exact) + "," + opt_cell(r.cop_upper) + "," + opt_cell(r.gamma_greedy);
  row += "," + csv_cell(r.method) + ",";
  if (r.runtime_ms) row += format_double(*r.runtime_ms);
  return row;
}

void write_records(std::ostream& out, std::span<const ExperimentRecord> records) {
  for (const ExperimentRecord& r : records) validate_record(r);
  out << csv_header() << '\n';
  for (const ExperimentRecord& r : records) out << csv_row(r) << '\n';
}

Instance generate_instance(std::size_t n, std::size_t d, std::uint64_t seed, bool want_connected,
                           std::size_t max_resamples, std::size_t max_rejects) {
  Instance inst;
  inst.label = "n" + std::to_string(n) + "_d" + std::to_string(d) + "_s" + std::to_string(seed);
  inst.seed = seed;
  inst.n = n;
  inst.d = d;
  try {
    for (std::size_t attempt = 0;; ++attempt) {
      const std::uint64_t s = attempt == 0 ? seed : derive_seed(seed, attempt);
      Graph g = sample_regular(n, d, s, max_rejects);
      inst.connected = is_connected(g);
      inst.resamples = attempt;
      inst.graph = std::move(g);
      if (!want_connected || inst.connected || attempt >= max_resamples) break;
    }
  } catch (const Error& e) {
    inst.graph.reset();
    inst.error = e.what();
  }
  return inst;
}

std::vector<Instance> build_instances(const ExperimentConfig& config) {
  std::vector<Instance> out;
  if (!config.graphs.empty()) {
    for (const std::string& path : config.graphs) {
      Instance inst;
      inst.label = fs::path(path).stem().string();
      try {
        Graph g = load_edge_list(path);
        inst.n = g.order();
        inst.d = g.max_degree();
        inst.connected = is_connected(g);
        inst.graph = std::move(g);
      } catch (const Error& e) {
        inst.error = e.what();
      }
      out.push_back(std::move(inst));
    }
    return out;
  }
  std::vector<std::size_t> ns = config.n;
  std::vector<std::size_t> ds = config.d;
  std::vector<std::uint64_t> seeds = config.seeds;
  std::sort(ns.begin(), ns.end());
  std::sort(ds.begin(), ds.end());
  std::sort(seeds.begin(), seeds.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  for (std::size_t n : ns) {
    for (std::size_t d : ds) {
      for (std::uint64_t s : seeds) {
        Instance inst;
        inst.label = "n" + std::to_string(n) + "_d" + std::to_string(d) + "_s" + std::to_string(s);
        inst.seed = s;
        inst.n = n;
        inst.d = d;
        out.push_back(std::move(inst));
      }
    }
  }
  // Sampling is the expensive part, so it runs in the pool.
  parallel_for(
      out.size(),
      [&](std::size_t i) {
        out[i] = generate_instance(out[i].n, out[i].d, *out[i].seed, config.connected,
                                   config.max_resamples, config.max_rejects);
      },
      config.threads);
  return out;
}

ExperimentRecord solve_instance(const Instance& inst, const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRecord rec;
  rec.seed = inst.seed;
  rec.n = inst.n;
  rec.d = inst.d;
  rec.connected = inst.connected;
  if (!inst.graph) throw Error("instance " + inst.label + " has no graph");
  const Graph& g = *inst.graph;
  const bool has_isolated = g.order() > 0 && g.min_degree() == 0;
  if (!has_isolated) rec.gamma_greedy = greedy_dominating_set(g).size();
  if (!inst.connected) {
    rec.method = "disconnected";
    if (config.timing) rec.runtime_ms = elapsed_ms(start);
    return rec;
  }

  bool budget_hit = false;
  for (std::size_t k = 1; k <= config.k_max; ++k) {
    if (estimated_work(g, g, k) > config.budget) {
      budget_hit = true;
      break;
    }
    if (solve_k(g, k, config.budget).cops_win()) {
      rec.cop_exact = k;
      break;
    }
  }
  std::vector<std::size_t> schedule(config.k_max);
  std::iota(schedule.begin(), schedule.end(), std::size_t{1});
  const std::uint64_t heuristic_seed = derive_seed(inst.seed.value_or(0), 0x5eed);
  const UpperBoundEstimate estimate =
      strategy_upper_bound(g, schedule, config.trials, heuristic_seed,
                           std::max<std::size_t>(2 * g.order(), 1), config.budget);
  rec.cop_upper = estimate.cops;
  if (rec.cop_exact) {
    rec.method = "exact";
  } else if (budget_hit) {
    rec.method = estimate.verified ? "heuristic_verified" : "heuristic";
  } else {
    rec.method = "above_kmax";
  }
  if (config.timing) rec.runtime_ms = elapsed_ms(start);
  return rec;
}

namespace {

ExperimentRecord solve_two_graph_instance(const Instance& inst, const Graph& h,
                                          std::optional<std::size_t> c_h,
                                          std::optional<std::size_t> gamma_h,
                                          const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRecord rec;
  rec.seed = inst.seed;
  rec.n = inst.n;
  rec.d = inst.d;
  rec.connected = inst.connected;
  rec.method = "two_graph";
  // c(H) and gamma(H) bound c(G,H) from above: cops keep to H's edges either way.
  rec.cop_upper = c_h;
  rec.gamma_greedy = gamma_h;
  const Graph& g = *inst.graph;
  if (g.order() != h.order()) throw Error(inst.label + ": cops graph has a different order");
  if (!is_subgraph(g, h)) throw Error(inst.label + ": robber graph is not a subgraph of the cops graph");
  if (!inst.connected) {
    rec.method = "disconnected";
  } else {
    for (std::size_t k = 1; k <= config.k_max; ++k) {
      if (estimated_work(g, h, k) > config.budget) {
        rec.method = "two_graph_budget";
        break;
      }
      if (solve_two_graphs(g, h, k, config.budget).cops_win()) {
        rec.cop_exact = k;
        break;
      }
    }
  }
  if (config.timing) rec.runtime_ms = elapsed_ms(start);
  return rec;
}

std::string records_csv(std::span<const ExperimentRecord> records) {
  std::ostringstream out;
  write_records(out, records);
  return out.str();
}

void require_instances(const std::vector<Instance>& instances) {
  if (instances.empty()) throw Error("no instances to process");
}

// ---- verify ----

void absorb(ExpansionReport& into, const ExpansionReport& part, bool lower, bool first) {
  if (first) {
    into = part;
    return;
  }
  into.samples += part.samples;
  into.failures += part.failures;
  into.worst_ratio = lower ? std::min(into.worst_ratio, part.worst_ratio)
                           : std::max(into.worst_ratio, part.worst_ratio);
  into.max_ratio = std::max(into.max_ratio, part.max_ratio);
  for (const Witness& w : part.witnesses) {
    if (into.witnesses.size() < kMaxWitnesses) into.witnesses.push_back(w);
  }
  into.notes.insert(into.notes.end(), part.notes.begin(), part.notes.end());
}

std::string join_sizes(std::span<const std::size_t> v) {
  std::string out;
  for (std::size_t x : v) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

}  // namespace

CheckResult run_check(const std::string& name, const Graph& g, const ExperimentConfig& cfg,
                      std::uint64_t seed) {
  CheckResult res;
  res.extra = json::object();
  res.check = name;
  const std::size_t n = g.order();
  const std::size_t big_d = g.max_degree();
  const std::size_t d = growth_base(g);
  const double ln = log_n(n);
  const auto samples = static_cast<std::size_t>(cfg.constant("samples"));
  const double center_c = cfg.constant("center");
  const Vertex center = center_c >= 0 ? static_cast<Vertex>(center_c) : 0;
  if (center >= n) throw Error("center vertex out of range");

  if (name == "union_ball") {
    const double c = cfg.constant("union.c");
    const double tol = cfg.constant("union.tol");
    auto radii_for = [&](std::size_t s) {
      std::vector<std::size_t> radii = {1};
      for (std::size_t r = 2; r <= 64; ++r) {
        if (static_cast<double>(s * big_d) * ipow(static_cast<double>(d), r - 1) > n / ln) break;
        radii.push_back(r);
      }
      return radii;
    };
    if (center_c >= 0) {
      const std::vector<VertexSet> sets = {VertexSet(n, {center})};
      const auto radii = radii_for(1);
      res.report = check_union_ball_growth(g, sets, radii, c, tol);
      res.report.notes.push_back("center " + std::to_string(center) + ", radii " + join_sizes(radii));
      return res;
    }
    bool first = true;
    for (std::size_t s : {std::size_t{1}, std::size_t{4}, std::size_t{16}}) {
      if (s > n) continue;
      const auto radii = radii_for(s);
      const std::vector<std::size_t> sizes = {s};
      ExpansionReport part = check_union_ball_growth(g, samples, sizes, radii, c, tol,
                                                     derive_seed(seed, s));
      part.notes.push_back("s=" + std::to_string(s) + " radii " + join_sizes(radii));
      absorb(res.report, part, true, first);
      first = false;
    }
    res.report.seed = seed;
    return res;
  }

  if (name == "closed_nbhd") {
    if (!g.is_regular()) throw Error("graph must be regular");
    std::vector<std::size_t> sizes;
    for (std::size_t s : {1, 5, 20, 40}) {
      if (static_cast<double>(s * big_d) < n / ln) sizes.push_back(s);
    }
    if (sizes.empty()) throw Error("no set size with s d < n / ln n");
    res.report = check_closed_nbhd_bounds(g, samples, sizes, cfg.constant("nbhd.c"),
                                          cfg.constant("nbhd.eps"), seed);
    return res;
  }

  if (name == "induced_edges") {
    const double c = cfg.constant("induced.c");
    std::vector<std::size_t> sizes;
    for (std::size_t s : {5, 20, 80}) {
      if (static_cast<double>(s) <= c * static_cast<double>(n) / static_cast<double>(std::max<std::size_t>(big_d, 1))) {
        sizes.push_back(s);
      }
    }
    if (sizes.empty()) throw Error("no set size with s <= c n / d");
    res.report = check_induced_edges(g, samples, sizes, c, seed);
    return res;
  }

  if (name == "excess") {
    const double k_exp = cfg.constant("excess.K");
    const std::size_t r_max = excess_radius_limit(g, k_exp);
    if (r_max == 0) throw Error("no radius with (d+1) d^(r-1) < ln^K n");
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{0});
    res.report = check_excess(g, all, r_max, cfg.constant("excess.eps"), k_exp);
    return res;
  }

  if (name == "sphere_regularity") {
    SphereRegularityOptions o;
    o.a1 = cfg.constant("sphere.a1");
    if (cfg.constant("sphere.a2") > 0) o.a2 = cfg.constant("sphere.a2");
    o.delta = cfg.constant("sphere.delta");
    o.j = cfg.constant("sphere.J");
    o.samples_per_k = static_cast<std::size_t>(cfg.constant("sphere.samples"));
    const auto r = static_cast<std::size_t>(cfg.constant("sphere.r"));
    const auto rp = static_cast<std::size_t>(cfg.constant("sphere.r_prime"));
    const std::size_t pool = sphere(g, VertexSet(n, {center}), r).size();
    std::vector<std::size_t> ks;
    for (std::size_t k : {1, 4, 16, 32}) {
      if (k <= pool && static_cast<double>(k) * ipow(static_cast<double>(d), rp) <= n / std::pow(ln, o.j)) {
        ks.push_back(k);
      }
    }
    if (ks.empty()) throw Error("no k with k d^r' <= n / ln^J n and k <= |N(v,r)|");
    res.report = check_sphere_regularity(g, center, r, rp, ks, o, seed);
    return res;
  }

  if (name == "accessibility") {
    const double c1 = cfg.constant("access.c1");
    const double c2 = cfg.constant("access.c2");
    const double gamma = cfg.constant("access.gamma");
    const auto r = static_cast<std::size_t>(cfg.constant("access.r"));
    const auto rp = static_cast<std::size_t>(cfg.constant("access.r_prime"));
    const auto count = static_cast<std::size_t>(cfg.constant("access.samples"));
    const std::size_t t = r + rp + 1;
    std::vector<AccessibilityCert> certs(count);
    std::vector<CertificateCheck> verdicts(count);
    std::vector<Vertex> roots(count);
    for (std::size_t i = 0; i < count; ++i) {
      Rng rng(derive_seed(seed, i));
      roots[i] = static_cast<Vertex>(uniform_below(rng, n));
    }
    parallel_for(count, [&](std::size_t i) {
      const VertexSet u = sample_sphere_union(g, roots[i], r, rp, gamma, derive_seed(seed, i + count));
      if (u.empty()) throw Error("sphere union is empty; graph too small for r");
      certs[i] = check_accessibility(g, u, t, c1, c2);
      verdicts[i] = validate_certificate(g, certs[i], c1, c2);
    });
    ExpansionReport& rep = res.report;
    rep.check = "accessibility";
    rep.seed = seed;
    rep.constants = {{"c1", c1}, {"c2", c2}, {"gamma", gamma}, {"r", static_cast<double>(r)},
                     {"r_prime", static_cast<double>(rp)}, {"t", static_cast<double>(t)}};
    rep.worst_ratio = std::numeric_limits<double>::infinity();
    std::size_t invalid = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const AccessibilityCert& cert = certs[i];
      rep.samples += cert.u.size();
      rep.failures += cert.q.size();
      for (const VertexSet& w : cert.family) {
        const double ratio = cert.threshold > 0 ? static_cast<double>(w.size()) / cert.threshold : 0.0;
        rep.worst_ratio = std::min(rep.worst_ratio, ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
      }
      if (!cert.q.empty() && rep.witnesses.size() < kMaxWitnesses) {
        rep.witnesses.push_back({"members left in Q", cert.q.to_vector(),
                                 static_cast<double>(cert.q.size()) / static_cast<double>(cert.u.size())});
      }
      if (!verdicts[i].valid) {
        ++invalid;
        rep.failures += cert.u.size() - cert.q.size();
        rep.notes.push_back("certificate " + std::to_string(i) + " invalid: " + verdicts[i].problems.front());
      }
    }
    if (rep.samples == 0) rep.worst_ratio = 0.0;
    res.extra["certificates"] = count;
    res.extra["invalid_certificates"] = invalid;
    return res;
  }

  if (name == "disjoint_family") {
    const double root_n = std::sqrt(static_cast<double>(n));
    std::optional<std::size_t> chosen;
    for (std::size_t r = 1; r < 64 && d > 1; ++r) {
      const double grow = ipow(static_cast<double>(d), r + 1);
      if (grow > root_n * ln) break;
      if (grow > root_n) {
        chosen = r;
        break;
      }
    }
    if (!chosen) throw Error("radius window violated: no r with sqrt(n) < d^(r+1) <= sqrt(n) ln n");
    const double tol = cfg.constant("disjoint.tol");
    const DisjointFamilyResult fam = check_disjoint_sphere_family(g, center, *chosen, tol);
    ExpansionReport& rep = res.report;
    rep.check = "disjoint_family";
    rep.constants = {{"tol", tol}, {"r", static_cast<double>(*chosen)}};
    const double target = ipow(static_cast<double>(d), *chosen + 1);
    rep.samples = fam.cert.family.size();
    rep.worst_ratio = fam.min_ratio;
    for (std::size_t i = 0; i < fam.cert.family.size(); ++i) {
      const double ratio = static_cast<double>(fam.cert.family[i].size()) / target;
      rep.max_ratio = std::max(rep.max_ratio, ratio);
      if (ratio < 1.0 - tol) {
        ++rep.failures;
        if (rep.witnesses.size() < kMaxWitnesses) {
          rep.witnesses.push_back({"W(u) below (1-tol) d^(r+1)", {fam.cert.members[i]}, ratio});
        }
      }
    }
    res.extra["success"] = fam.success;
    return res;
  }
  throw Error("unknown check '" + name + "'");
}

CheckResult run_check_or_skip(const std::string& name, const Graph& g,
                              const ExperimentConfig& config, std::uint64_t seed) {
  try {
    return run_check(name, g, config, seed);
  } catch (const Error& e) {
    CheckResult res;
    res.check = name;
    res.skipped = true;
    res.reason = e.what();
    return res;
  }
}

namespace {

// ---- scaling ----

struct ScalingRow {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t attempted = 0;
  std::vector<double> bounds;
  std::optional<double> reference;
};

}  // namespace

RunSummary cmd_generate(const ExperimentConfig& config) {
  config.validate();
  RunSummary summary;
  const std::vector<Instance> instances = build_instances(config);
  std::ostringstream manifest;
  manifest << "file,seed,n,d,connected,resamples,status\n";
  const fs::path dir = fs::path(config.out) / "graphs";
  for (const Instance& inst : instances) {
    if (!inst.graph) {
      summary.warnings.push_back(inst.label + ": " + inst.error);
      manifest << "," << opt_cell(inst.seed) << "," << inst.n << "," << inst.d << ",,,"
               << csv_cell("error: " + inst.error) << "\n";
      continue;
    }
    if (config.connected && !inst.connected) {
      summary.warnings.push_back(inst.label + ": still disconnected after " +
                                 std::to_string(inst.resamples) + " resamples");
    }
    const fs::path file = dir / (inst.label + ".edges");
    write_text(file, to_edge_list(*inst.graph), summary);
    manifest << csv_cell(file.filename().string()) << "," << opt_cell(inst.seed) << "," << inst.n
             << "," << inst.d << "," << (inst.connected ? "true" : "false") << ","
             << inst.resamples << ",ok\n";
  }
  write_text(fs::path(config.out) / "generate.csv", manifest.str(), summary);
  return summary;
}

RunSummary cmd_solve(const ExperimentConfig& config) {
  config.validate();
  RunSummary summary;
  const std::vector<Instance> instances = build_instances(config);
  require_instances(instances);

  std::optional<Graph> h;
  std::optional<std::size_t> c_h;
  std::optional<std::size_t> gamma_h;
  if (!config.cops_graph.empty()) {
    h = load_edge_list(config.cops_graph);
    if (!is_connected(*h)) throw Error("cops graph must be connected");
    gamma_h = greedy_dominating_set(*h).size();
    for (std::size_t k = 1; k <= config.k_max && estimated_work(*h, *h, k) <= config.budget; ++k) {
      if (solve_k(*h, k, config.budget).cops_win()) {
        c_h = k;
        break;
      }
    }
  }

  std::vector<std::optional<ExperimentRecord>> slots(instances.size());
  std::vector<std::string> errors(instances.size());
  parallel_for(
      instances.size(),
      [&](std::size_t i) {
        const Instance& inst = instances[i];
        if (!inst.graph) {
          errors[i] = inst.label + ": " + inst.error;
          return;
        }
        try {
          slots[i] = h ? solve_two_graph_instance(inst, *h, c_h, gamma_h, config)
                       : solve_instance(inst, config);
        } catch (const Error& e) {
          errors[i] = inst.label + ": " + e.what();
        }
      },
      config.threads);

  std::vector<ExperimentRecord> records;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!errors[i].empty()) summary.warnings.push_back(errors[i]);
    if (slots[i]) {
      if (slots[i]->method == "heuristic" || slots[i]->method == "heuristic_verified") {
        summary.warnings.push_back(instances[i].label + ": state budget exceeded, heuristic bound only");
      }
      records.push_back(*slots[i]);
    }
  }
  write_text(fs::path(config.out) / "solve.csv", records_csv(records), summary);
  return summary;
}

RunSummary cmd_verify(const ExperimentConfig& config) {
  config.validate();
  RunSummary summary;
  const std::vector<Instance> instances = build_instances(config);
  require_instances(instances);
  const std::vector<std::string> checks = config.checks.empty() ? default_checks() : config.checks;

  struct Item {
    std::size_t instance;
    std::size_t check;
  };
  std::vector<Item> items;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!instances[i].graph) {
      summary.warnings.push_back(instances[i].label + ": " + instances[i].error);
      continue;
    }
    for (std::size_t c = 0; c < checks.size(); ++c) items.push_back({i, c});
  }
  std::vector<CheckResult> results(items.size());
  parallel_for(
      items.size(),
      [&](std::size_t idx) {
        const Instance& inst = instances[items[idx].instance];
        const std::string& name = checks[items[idx].check];
        const std::uint64_t seed = derive_seed(inst.seed.value_or(0), items[idx].check);
        try {
          results[idx] = run_check_or_skip(name, *inst.graph, config, seed);
        } catch (const Error& e) {
          results[idx].check = name;
          results[idx].skipped = true;
          results[idx].reason = e.what();
        }
      },
      config.threads);

  std::ostringstream csv;
  csv << "graph,seed,n,d,check,status,samples,failures,failure_rate,worst_ratio,max_ratio,reason\n";
  const fs::path dir = fs::path(config.out) / "verify";
  for (std::size_t idx = 0; idx < items.size(); ++idx) {
    const Instance& inst = instances[items[idx].instance];
    const CheckResult& res = results[idx];
    json doc;
    if (res.skipped) {
      doc = {{"check", res.check}, {"status", "skipped"}, {"reason", res.reason}};
      summary.warnings.push_back(inst.label + " " + res.check + " skipped: " + res.reason);
    } else {
      doc = res.report.to_json();
      doc["status"] = "ok";
      for (const auto& [key, value] : res.extra.items()) doc[key] = value;
    }
    doc["graph"] = inst.label;
    doc["n"] = inst.n;
    doc["d"] = inst.d;
    doc["graph_seed"] = inst.seed ? json(*inst.seed) : json(nullptr);
    write_text(dir / (inst.label + "_" + res.check + ".json"), doc.dump(2) + "\n", summary);

    csv << csv_cell(inst.label) << "," << opt_cell(inst.seed) << "," << inst.n << "," << inst.d
        << "," << res.check << ",";
    if (res.skipped) {
      csv << "skipped,,,,,," << csv_cell(res.reason) << "\n";
    } else {
      const ExpansionReport& r = res.report;
      csv << "ok," << r.samples << "," << r.failures << "," << format_double(r.failure_rate())
          << "," << format_double(r.worst_ratio) << "," << format_double(r.max_ratio) << ",\n";
    }
  }
  write_text(fs::path(config.out) / "verify_summary.csv", csv.str(), summary);
  return summary;
}

RunSummary cmd_scaling(const ExperimentConfig& config) {
  config.validate();
  RunSummary summary;
  std::vector<std::size_t> ns = config.n;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.size() < 2) throw Error("scaling needs at least 2 distinct sizes");
  if (!config.graphs.empty()) throw Error("scaling generates its own graphs");

  std::vector<ScalingRow> rows;
  std::vector<ExperimentRecord> records;
  if (config.family == "circulant") {
    // Degree at least sqrt(n) ln n, rounded up to even so offsets 1..D/2 give it.
    std::vector<std::optional<ExperimentRecord>> slots(ns.size());
    parallel_for(
        ns.size(),
        [&](std::size_t i) {
          const std::size_t n = ns[i];
          const double want = std::sqrt(static_cast<double>(n)) * log_n(n);
          std::size_t big_d = static_cast<std::size_t>(std::ceil(want));
          if (big_d % 2 == 1) ++big_d;
          if (big_d > n - 1 || 2 * (big_d / 2) >= n) return;
          std::vector<std::size_t> offsets(big_d / 2);
          std::iota(offsets.begin(), offsets.end(), std::size_t{1});
          const auto start = std::chrono::steady_clock::now();
          const Graph g = circulant(n, offsets);
          ExperimentRecord rec;
          rec.n = n;
          rec.d = g.max_degree();
          rec.connected = is_connected(g);
          rec.gamma_greedy = greedy_dominating_set(g).size();
          rec.method = "circulant_greedy";
          if (config.timing) rec.runtime_ms = elapsed_ms(start);
          slots[i] = rec;
        },
        config.threads);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      ScalingRow row;
      row.n = ns[i];
      row.attempted = 1;
      if (!slots[i]) {
        summary.warnings.push_back("n=" + std::to_string(ns[i]) + ": no even degree >= sqrt(n) ln n fits");
        rows.push_back(row);
        continue;
      }
      const ExperimentRecord& rec = *slots[i];
      row.d = rec.d;
      row.bounds.push_back(static_cast<double>(*rec.gamma_greedy));
      row.reference = static_cast<double>(domination_bound(rec.n, rec.d));
      rows.push_back(row);
      records.push_back(rec);
    }
  } else {
    ExperimentConfig connected = config;
    connected.connected = true;
    connected.n = ns;
    const std::vector<Instance> instances = build_instances(connected);
    std::vector<std::optional<ExperimentRecord>> slots(instances.size());
    std::vector<std::string> errors(instances.size());
    parallel_for(
        instances.size(),
        [&](std::size_t i) {
          if (!instances[i].graph) {
            errors[i] = instances[i].label + ": " + instances[i].error;
            return;
          }
          try {
            slots[i] = solve_instance(instances[i], config);
          } catch (const Error& e) {
            errors[i] = instances[i].label + ": " + e.what();
          }
        },
        config.threads);
    std::map<std::pair<std::size_t, std::size_t>, ScalingRow> by_size;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      ScalingRow& row = by_size[{instances[i].n, instances[i].d}];
      row.n = instances[i].n;
      row.d = instances[i].d;
      ++row.attempted;
      if (!errors[i].empty()) summary.warnings.push_back(errors[i]);
      if (!slots[i]) continue;
      const ExperimentRecord& rec = *slots[i];
      records.push_back(rec);
      if (!rec.connected) {
        summary.warnings.push_back(instances[i].label + ": disconnected, excluded");
        continue;
      }
      std::optional<std::size_t> best = rec.cop_exact;
      if (!best) best = rec.cop_upper;
      if (!best || (rec.gamma_greedy && *rec.gamma_greedy < *best)) best = rec.gamma_greedy;
      if (best) row.bounds.push_back(static_cast<double>(*best));
    }
    for (auto& [key, row] : by_size) rows.push_back(std::move(row));
  }

  std::ostringstream table;
  table << "family,n,d,attempted,bounded,median_bound,max_bound,median_ratio,max_ratio,reference_ratio\n";
  std::vector<double> xs;
  std::vector<double> ys;
  bool within_reference = true;
  std::map<std::size_t, std::size_t> sizes_ok;
  for (const ScalingRow& row : rows) {
    const double root_n = std::sqrt(static_cast<double>(row.n));
    table << config.family << "," << row.n << "," << row.d << "," << row.attempted << ","
          << row.bounds.size() << ",";
    if (row.bounds.empty()) {
      table << ",,,,\n";
      continue;
    }
    const double med = median(row.bounds);
    const double mx = *std::max_element(row.bounds.begin(), row.bounds.end());
    table << format_double(med) << "," << format_double(mx) << "," << format_double(med / root_n)
          << "," << format_double(mx / root_n) << ",";
    if (row.reference) {
      table << format_double(*row.reference / root_n);
      if (mx > *row.reference) within_reference = false;
    }
    table << "\n";
    xs.push_back(std::log(static_cast<double>(row.n)));
    ys.push_back(std::log(med));
    ++sizes_ok[row.n];
  }
  if (sizes_ok.size() < 2) throw Error("scaling needs at least 2 sizes with a bound");
  json doc = {{"family", config.family},
              {"sizes", sizes_ok.size()},
              {"slope_log_bound_vs_log_n", least_squares_slope(xs, ys)}};
  if (config.family == "circulant") doc["within_domination_bound"] = within_reference;

  const fs::path out(config.out);
  write_text(out / "scaling_records.csv", records_csv(records), summary);
  write_text(out / "scaling.csv", table.str(), summary);
  write_text(out / "scaling_summary.json", doc.dump(2) + "\n", summary);
  return summary;
}

RunSummary cmd_playout(const ExperimentConfig& config) {
  config.validate();
  RunSummary summary;
  const std::vector<Instance> instances = build_instances(config);
  require_instances(instances);
  struct Item {
    std::size_t instance;
    std::uint64_t seed;
  };
  std::vector<Item> items;
  const std::vector<std::uint64_t> file_seeds =
      config.seeds.empty() ? std::vector<std::uint64_t>{0} : config.seeds;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!instances[i].graph) {
      summary.warnings.push_back(instances[i].label + ": " + instances[i].error);
      continue;
    }
    if (!instances[i].connected) {
      summary.warnings.push_back(instances[i].label + ": disconnected, skipped");
      continue;
    }
    if (instances[i].seed) {
      items.push_back({i, *instances[i].seed});
    } else {
      for (std::uint64_t s : file_seeds) items.push_back({i, s});
    }
  }
  std::vector<std::optional<PlayoutResult>> results(items.size());
  std::vector<std::string> errors(items.size());
  parallel_for(
      items.size(),
      [&](std::size_t idx) {
        const Graph& g = *instances[items[idx].instance].graph;
        try {
          const CopPolicy cops = make_cop_policy(config.cop_policy, g, config.k_max);
          const RobberPolicy robber = make_robber_policy(config.robber_policy);
          const std::size_t horizon = config.max_steps == 0 ? 4 * g.order() : config.max_steps;
          results[idx] = playout(g, cops, robber, items[idx].seed, horizon);
        } catch (const Error& e) {
          errors[idx] = e.what();
        }
      },
      config.threads);

  std::ostringstream csv;
  csv << "graph,seed,n,d,cop_policy,robber_policy,cops,captured,steps\n";
  const fs::path dir = fs::path(config.out) / "playout";
  for (std::size_t idx = 0; idx < items.size(); ++idx) {
    const Instance& inst = instances[items[idx].instance];
    const std::string tag = inst.label + "_p" + std::to_string(items[idx].seed);
    if (!results[idx]) {
      summary.warnings.push_back(tag + ": " + errors[idx]);
      continue;
    }
    const PlayoutResult& r = *results[idx];
    csv << csv_cell(inst.label) << "," << items[idx].seed << "," << inst.n << "," << inst.d << ","
        << csv_cell(config.cop_policy) << "," << csv_cell(config.robber_policy) << ","
        << config.k_max << "," << (r.captured ? "true" : "false") << "," << r.steps << "\n";
    json trace = json::array();
    for (const PlayoutFrame& f : r.trace) trace.push_back({{"cops", f.cops}, {"robber", f.robber}});
    const json doc = {{"graph", inst.label},     {"seed", items[idx].seed},
                      {"cop_policy", config.cop_policy}, {"robber_policy", config.robber_policy},
                      {"captured", r.captured},  {"steps", r.steps},
                      {"trace", trace}};
    write_text(dir / (tag + ".json"), doc.dump() + "\n", summary);
  }
  write_text(fs::path(config.out) / "playout.csv", csv.str(), summary);
  return summary;
}

RunSummary run_command(const ExperimentConfig& config) {
  if (config.command == "generate") return cmd_generate(config);
  if (config.command == "solve") return cmd_solve(config);
  if (config.command == "verify") return cmd_verify(config);
  if (config.command == "scaling") return cmd_scaling(config);
  if (config.command == "playout") return cmd_playout(config);
  throw Error("unknown command '" + config.command + "'");
}

}  // namespace copnum::harness
