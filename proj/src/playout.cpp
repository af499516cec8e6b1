#include "copnum/playout.hpp"

#include <algorithm>
#include <string>

#include "copnum/error.hpp"

namespace copnum {

namespace {

[[noreturn]] void illegal(const std::string& policy, const std::string& what) {
  throw Error("illegal move by policy '" + policy + "': " + what);
}

bool adjacent_or_same(const Graph& g, Vertex from, Vertex to) {
  return from == to || g.has_edge(from, to);
}

bool caught(std::span<const Vertex> cops, Vertex robber) {
  return std::find(cops.begin(), cops.end(), robber) != cops.end();
}

}  // namespace

PlayoutResult playout(const Graph& g_robber, const Graph& h_cops, const CopPolicy& cop_policy,
                      const RobberPolicy& robber_policy, std::uint64_t seed,
                      std::size_t max_steps) {
  if (g_robber.order() != h_cops.order()) throw Error("graphs must share the same vertex set");
  const std::size_t n = h_cops.order();
  Rng rng(seed);
  PlayoutResult result;

  std::vector<Vertex> cops = cop_policy.place(h_cops, rng);
  if (cops.size() != cop_policy.cops) {
    illegal(cop_policy.name, "placed " + std::to_string(cops.size()) + " cops, expected " +
                                 std::to_string(cop_policy.cops));
  }
  for (Vertex c : cops) {
    if (c >= n) illegal(cop_policy.name, "placement outside the graph");
  }
  Vertex robber = robber_policy.place(g_robber, cops, rng);
  if (robber >= n) illegal(robber_policy.name, "placement outside the graph");
  result.trace.push_back({cops, robber});
  if (caught(cops, robber)) {
    result.captured = true;
    return result;
  }

  while (result.steps < max_steps) {
    std::vector<Vertex> next = cop_policy.move(h_cops, cops, robber, rng);
    if (next.size() != cops.size()) illegal(cop_policy.name, "wrong number of cops");
    for (std::size_t i = 0; i < cops.size(); ++i) {
      if (next[i] >= n || !adjacent_or_same(h_cops, cops[i], next[i])) {
        illegal(cop_policy.name, "cop " + std::to_string(i) + " cannot move from " +
                                     std::to_string(cops[i]) + " to " + std::to_string(next[i]));
      }
    }
    cops = std::move(next);
    ++result.steps;
    if (caught(cops, robber)) {
      result.captured = true;
      result.trace.push_back({cops, robber});
      return result;
    }
    const Vertex to = robber_policy.move(g_robber, cops, robber, rng);
    if (to >= n || !adjacent_or_same(g_robber, robber, to)) {
      illegal(robber_policy.name,
              "robber cannot move from " + std::to_string(robber) + " to " + std::to_string(to));
    }
    robber = to;
    result.trace.push_back({cops, robber});
    if (caught(cops, robber)) {
      result.captured = true;
      return result;
    }
  }
  return result;
}

PlayoutResult playout(const Graph& g, const CopPolicy& cop_policy,
                      const RobberPolicy& robber_policy, std::uint64_t seed,
                      std::size_t max_steps) {
  return playout(g, g, cop_policy, robber_policy, seed, max_steps);
}

}  // namespace copnum
