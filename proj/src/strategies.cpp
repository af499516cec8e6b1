#include "copnum/strategies.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "copnum/error.hpp"

namespace copnum {

namespace {

// Lowest-id neighbor one step closer to the robber, or the cop itself when
// it already stands on the robber or cannot get closer.
Vertex pursuit_step(const Graph& g, std::span<const int> dist_to_robber, Vertex cop) {
  const int here = dist_to_robber[cop];
  if (here <= 0) return cop;
  for (Vertex w : g.neighbors(cop)) {
    if (dist_to_robber[w] == here - 1) return w;
  }
  return cop;
}

Vertex farthest_from(const Graph& g, std::span<const Vertex> cops,
                     std::span<const Vertex> candidates) {
  const std::vector<int> dist = bfs_distances(g, cops);
  auto key = [&](Vertex v) {
    return dist[v] < 0 ? std::numeric_limits<int>::max() : dist[v];
  };
  Vertex best = candidates.front();
  for (Vertex v : candidates) {
    if (key(v) > key(best) || (key(v) == key(best) && v < best)) best = v;
  }
  return best;
}

std::vector<Vertex> closed_list(const Graph& g, Vertex v) {
  std::vector<Vertex> out(g.neighbors(v).begin(), g.neighbors(v).end());
  out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> all_vertices(const Graph& g) {
  std::vector<Vertex> out(g.order());
  for (Vertex v = 0; v < g.order(); ++v) out[v] = v;
  return out;
}

class ExactDomination {
 public:
  explicit ExactDomination(const Graph& g) : n_(g.order()) {
    for (Vertex v = 0; v < n_; ++v) {
      std::uint32_t m = 1U << v;
      for (Vertex w : g.neighbors(v)) m |= 1U << w;
      closed_.push_back(m);
    }
    full_ = n_ == 32 ? ~0U : (1U << n_) - 1U;
    max_cover_ = static_cast<std::size_t>(g.max_degree() + 1);
  }

  std::vector<Vertex> solve(std::vector<Vertex> incumbent) {
    best_ = std::move(incumbent);
    std::vector<Vertex> chosen;
    search(0, chosen);
    return best_;
  }

 private:
  void search(std::uint32_t covered, std::vector<Vertex>& chosen) {
    if (covered == full_) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    const auto open = static_cast<std::size_t>(std::popcount(full_ & ~covered));
    const std::size_t lower = (open + max_cover_ - 1) / max_cover_;
    if (chosen.size() + lower >= best_.size()) return;
    // Some member of N[u] must be chosen for the lowest undominated u.
    const Vertex u = static_cast<Vertex>(std::countr_zero(full_ & ~covered));
    std::vector<Vertex> options;
    for (Vertex v = 0; v < n_; ++v) {
      if ((closed_[u] >> v) & 1U) options.push_back(v);
    }
    std::stable_sort(options.begin(), options.end(), [&](Vertex a, Vertex b) {
      return std::popcount(closed_[a] & ~covered) > std::popcount(closed_[b] & ~covered);
    });
    for (Vertex v : options) {
      chosen.push_back(v);
      search(covered | closed_[v], chosen);
      chosen.pop_back();
    }
  }

  std::size_t n_;
  std::vector<std::uint32_t> closed_;
  std::uint32_t full_ = 0;
  std::size_t max_cover_ = 1;
  std::vector<Vertex> best_;
};

}  // namespace

bool is_dominating(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.order()) return false;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (s.contains(v)) continue;
    const auto nb = g.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](Vertex w) { return s.contains(w); })) return false;
  }
  return true;
}

std::size_t domination_bound(std::size_t n, std::size_t min_degree) {
  const double d1 = static_cast<double>(min_degree) + 1.0;
  return static_cast<std::size_t>(std::ceil((1.0 + std::log(d1)) / d1 * static_cast<double>(n)));
}

DominatingSet greedy_dominating_set(const Graph& g) {
  const std::size_t n = g.order();
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) == 0) throw Error("isolated vertex " + std::to_string(v));
  }
  DominatingSet ds;
  ds.vertices = VertexSet(n);
  ds.method = DominationMethod::greedy;
  std::vector<std::size_t> gain(n);
  for (Vertex v = 0; v < n; ++v) gain[v] = g.degree(v) + 1;
  std::vector<bool> covered(n, false);
  std::size_t open = n;
  auto cover = [&](Vertex u) {
    if (covered[u]) return;
    covered[u] = true;
    --open;
    --gain[u];
    for (Vertex w : g.neighbors(u)) --gain[w];
  };
  while (open > 0) {
    Vertex best = 0;
    for (Vertex v = 1; v < n; ++v) {
      if (gain[v] > gain[best]) best = v;
    }
    ds.vertices.insert(best);
    ds.order.push_back(best);
    cover(best);
    for (Vertex w : g.neighbors(best)) cover(w);
  }
  if (!is_dominating(g, ds.vertices)) throw Error("internal: greedy set does not dominate");
  return ds;
}

DominatingSet exact_min_dominating_set(const Graph& g) {
  if (g.order() > kExactDominationCap) {
    throw Error("exact domination is capped at n <= " + std::to_string(kExactDominationCap));
  }
  DominatingSet ds;
  ds.method = DominationMethod::exact;
  ds.vertices = VertexSet(g.order());
  if (g.order() == 0) return ds;
  // Isolated vertices are allowed here; they must be chosen.
  std::vector<Vertex> incumbent = all_vertices(g);
  if (g.min_degree() > 0) incumbent = greedy_dominating_set(g).order;
  // The search only replaces strictly smaller sets, so seed it one larger.
  if (incumbent.size() < g.order()) incumbent.push_back(incumbent.front());
  ds.order = ExactDomination(g).solve(std::move(incumbent));
  for (Vertex v : ds.order) ds.vertices.insert(v);
  if (!is_dominating(g, ds.vertices)) throw Error("internal: exact set does not dominate");
  return ds;
}

CopPolicy dominating_cop_policy(const Graph& g, const DominatingSet& ds, std::size_t cops) {
  if (!is_dominating(g, ds.vertices)) throw Error("not a dominating set");
  if (ds.size() == 0) throw Error("not a dominating set");
  if (cops < ds.size()) {
    throw Error("dominating strategy needs " + std::to_string(ds.size()) + " cops, got " +
                std::to_string(cops));
  }
  std::vector<Vertex> start = ds.vertices.to_vector();
  start.resize(cops, start.front());
  CopPolicy p;
  p.name = "dominating";
  p.cops = cops;
  p.place = [start](const Graph&, Rng&) { return start; };
  p.move = [](const Graph& h, std::span<const Vertex> now, Vertex robber, Rng&) {
    std::vector<Vertex> next(now.begin(), now.end());
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (next[i] == robber || h.has_edge(next[i], robber)) {
        next[i] = robber;
        break;
      }
    }
    return next;
  };
  return p;
}

CopPolicy dominating_cop_policy(const Graph& g, const DominatingSet& ds) {
  return dominating_cop_policy(g, ds, ds.size());
}

CopPolicy pursuit_cop_policy(const Graph& g, std::size_t k, bool random_start) {
  if (k == 0) throw Error("cop count must be at least 1");
  std::vector<Vertex> start;
  if (!random_start) {
    const DominatingSet ds = greedy_dominating_set(g);
    for (std::size_t i = 0; i < k; ++i) start.push_back(ds.order[i % ds.order.size()]);
  }
  CopPolicy p;
  p.name = "pursuit";
  p.cops = k;
  p.place = [start, k, random_start](const Graph& h, Rng& rng) {
    if (!random_start) return start;
    std::vector<Vertex> out(k);
    for (auto& v : out) v = static_cast<Vertex>(uniform_below(rng, h.order()));
    return out;
  };
  p.move = [](const Graph& h, std::span<const Vertex> now, Vertex robber, Rng&) {
    const Vertex src[] = {robber};
    const std::vector<int> dist = bfs_distances(h, src);
    std::vector<Vertex> next(now.size());
    for (std::size_t i = 0; i < now.size(); ++i) next[i] = pursuit_step(h, dist, now[i]);
    return next;
  };
  return p;
}

CopPolicy random_cop_policy(std::size_t k) {
  if (k == 0) throw Error("cop count must be at least 1");
  CopPolicy p;
  p.name = "random";
  p.cops = k;
  p.place = [k](const Graph& h, Rng& rng) {
    std::vector<Vertex> out(k);
    for (auto& v : out) v = static_cast<Vertex>(uniform_below(rng, h.order()));
    return out;
  };
  p.move = [](const Graph& h, std::span<const Vertex> now, Vertex, Rng& rng) {
    std::vector<Vertex> next(now.size());
    for (std::size_t i = 0; i < now.size(); ++i) {
      const std::size_t pick = uniform_below(rng, h.degree(now[i]) + 1);
      next[i] = pick == 0 ? now[i] : h.neighbors(now[i])[pick - 1];
    }
    return next;
  };
  return p;
}

CopPolicy stay_cop_policy(std::span<const Vertex> positions) {
  CopPolicy p;
  p.name = "stay";
  p.cops = positions.size();
  std::vector<Vertex> start(positions.begin(), positions.end());
  p.place = [start](const Graph&, Rng&) { return start; };
  p.move = [](const Graph&, std::span<const Vertex> now, Vertex, Rng&) {
    return std::vector<Vertex>(now.begin(), now.end());
  };
  return p;
}

RobberPolicy evader_robber_policy() {
  RobberPolicy p;
  p.name = "evader";
  p.place = [](const Graph& g, std::span<const Vertex> cops, Rng&) {
    return farthest_from(g, cops, all_vertices(g));
  };
  p.move = [](const Graph& g, std::span<const Vertex> cops, Vertex robber, Rng&) {
    return farthest_from(g, cops, closed_list(g, robber));
  };
  return p;
}

RobberPolicy random_robber_policy() {
  RobberPolicy p;
  p.name = "random";
  p.place = [](const Graph& g, std::span<const Vertex>, Rng& rng) {
    return static_cast<Vertex>(uniform_below(rng, g.order()));
  };
  p.move = [](const Graph& g, std::span<const Vertex>, Vertex robber, Rng& rng) {
    const std::size_t pick = uniform_below(rng, g.degree(robber) + 1);
    return pick == 0 ? robber : g.neighbors(robber)[pick - 1];
  };
  return p;
}

RobberPolicy stay_robber_policy() {
  RobberPolicy p = evader_robber_policy();
  p.name = "stay";
  p.move = [](const Graph&, std::span<const Vertex>, Vertex robber, Rng&) { return robber; };
  return p;
}

CopPolicy make_cop_policy(const std::string& name, const Graph& g, std::size_t k) {
  if (name == "dominating") {
    const DominatingSet ds = greedy_dominating_set(g);
    return dominating_cop_policy(g, ds, std::max(k, ds.size()));
  }
  if (name == "pursuit") return pursuit_cop_policy(g, k);
  if (name == "random") return random_cop_policy(k);
  if (name == "stay") {
    const DominatingSet ds = greedy_dominating_set(g);
    std::vector<Vertex> start;
    for (std::size_t i = 0; i < k; ++i) start.push_back(ds.order[i % ds.order.size()]);
    return stay_cop_policy(start);
  }
  throw Error("unknown cop policy '" + name + "'");
}

RobberPolicy make_robber_policy(const std::string& name) {
  if (name == "evader") return evader_robber_policy();
  if (name == "random") return random_robber_policy();
  if (name == "stay") return stay_robber_policy();
  throw Error("unknown robber policy '" + name + "'");
}

std::optional<bool> pursuit_always_captures(const Graph& g, std::size_t k, std::uint64_t budget) {
  if (k == 0) throw Error("cop count must be at least 1");
  const std::size_t n = g.order();
  long double space = n;
  for (std::size_t i = 0; i < k; ++i) space *= n;
  if (space * static_cast<long double>(g.max_degree() + 1) > static_cast<long double>(budget)) {
    return std::nullopt;
  }
  std::vector<std::vector<int>> dist(n);
  for (Vertex v = 0; v < n; ++v) {
    const Vertex src[] = {v};
    dist[v] = bfs_distances(g, src);
  }
  const CopPolicy policy = pursuit_cop_policy(g, k);
  Rng unused(0);
  const std::vector<Vertex> start = policy.place(g, unused);

  auto encode = [&](std::span<const Vertex> cops, Vertex robber) {
    std::uint64_t code = 0;
    for (Vertex c : cops) code = code * n + c;
    return code * n + robber;
  };
  auto decode = [&](std::uint64_t code, std::vector<Vertex>& cops) {
    const auto robber = static_cast<Vertex>(code % n);
    code /= n;
    for (std::size_t i = k; i-- > 0;) {
      cops[i] = static_cast<Vertex>(code % n);
      code /= n;
    }
    return robber;
  };

  // Cop-to-move states; the robber escapes iff a non-capture cycle is
  // reachable, since every choice after placement is the robber's.
  enum Color : std::uint8_t { kGrey = 1, kBlack = 2 };
  std::unordered_map<std::uint64_t, std::uint8_t> color;
  std::vector<Vertex> cops(k);
  std::vector<Vertex> next(k);
  auto successors = [&](std::uint64_t code) {
    std::vector<std::uint64_t> out;
    const Vertex r = decode(code, cops);
    for (std::size_t i = 0; i < k; ++i) next[i] = pursuit_step(g, dist[r], cops[i]);
    if (std::find(next.begin(), next.end(), r) != next.end()) return out;
    auto add = [&](Vertex q) {
      if (std::find(next.begin(), next.end(), q) == next.end()) out.push_back(encode(next, q));
    };
    add(r);
    for (Vertex q : g.neighbors(r)) add(q);
    return out;
  };

  struct Frame {
    std::uint64_t code;
    std::vector<std::uint64_t> succ;
    std::size_t at = 0;
  };
  for (Vertex r = 0; r < n; ++r) {
    if (std::find(start.begin(), start.end(), r) != start.end()) continue;
    const std::uint64_t root = encode(start, r);
    if (color.count(root)) continue;
    std::vector<Frame> stack;
    color[root] = kGrey;
    stack.push_back({root, successors(root)});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.at == top.succ.size()) {
        color[top.code] = kBlack;
        stack.pop_back();
        continue;
      }
      const std::uint64_t s = top.succ[top.at++];
      const auto it = color.find(s);
      if (it != color.end()) {
        if (it->second == kGrey) return false;
        continue;
      }
      color[s] = kGrey;
      stack.push_back({s, successors(s)});
    }
  }
  return true;
}

UpperBoundEstimate strategy_upper_bound(const Graph& g, std::span<const std::size_t> k_schedule,
                                        std::size_t trials, std::uint64_t seed,
                                        std::size_t horizon, std::uint64_t budget) {
  if (k_schedule.empty()) throw Error("empty cop schedule");
  if (horizon < g.order()) throw Error("horizon must be at least n");
  if (trials == 0) throw Error("trials must be at least 1");
  std::vector<std::size_t> schedule(k_schedule.begin(), k_schedule.end());
  std::sort(schedule.begin(), schedule.end());
  const RobberPolicy evader = evader_robber_policy();
  for (std::size_t k : schedule) {
    const CopPolicy fixed = pursuit_cop_policy(g, k);
    const CopPolicy roaming = pursuit_cop_policy(g, k, true);
    bool all = true;
    for (std::size_t trial = 0; trial < trials && all; ++trial) {
      const CopPolicy& cops = trial == 0 ? fixed : roaming;
      all = playout(g, cops, evader, derive_seed(seed, trial), horizon).captured;
    }
    if (!all) continue;
    const std::optional<bool> proof = pursuit_always_captures(g, k, budget);
    if (proof.has_value() && !*proof) continue;
    return {k, proof.has_value()};
  }
  return {};
}

}  // namespace copnum
