#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "copnum/graph.hpp"
#include "copnum/random.hpp"

namespace copnum {

// Cops are kept in a fixed order during a playout so a policy can track
// individual cops; positions need not be distinct.
struct CopPolicy {
  std::string name;
  std::size_t cops = 0;
  std::function<std::vector<Vertex>(const Graph&, Rng&)> place;
  // Returns the next position of every cop, in the same order.
  std::function<std::vector<Vertex>(const Graph&, std::span<const Vertex> cops, Vertex robber,
                                    Rng&)>
      move;
};

struct RobberPolicy {
  std::string name;
  std::function<Vertex(const Graph&, std::span<const Vertex> cops, Rng&)> place;
  std::function<Vertex(const Graph&, std::span<const Vertex> cops, Vertex robber, Rng&)> move;
};

struct PlayoutFrame {
  std::vector<Vertex> cops;
  Vertex robber = 0;
};

struct PlayoutResult {
  bool captured = false;
  // Cop moves made after placement; 0 when the robber is caught on placement.
  std::size_t steps = 0;
  // Positions after placement and after each robber move.
  std::vector<PlayoutFrame> trace;
};

// Cops place, the robber places, then cops and robber alternate with the
// cops first. Stops at capture or after max_steps cop moves. An illegal
// placement or move throws an Error naming the policy.
PlayoutResult playout(const Graph& g, const CopPolicy& cop_policy,
                      const RobberPolicy& robber_policy, std::uint64_t seed,
                      std::size_t max_steps);
// Cops move on h_cops, the robber on g_robber.
PlayoutResult playout(const Graph& g_robber, const Graph& h_cops, const CopPolicy& cop_policy,
                      const RobberPolicy& robber_policy, std::uint64_t seed,
                      std::size_t max_steps);

}  // namespace copnum
