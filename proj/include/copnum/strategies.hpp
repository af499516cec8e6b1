#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "copnum/game.hpp"
#include "copnum/graph.hpp"
#include "copnum/playout.hpp"
#include "copnum/vertex_set.hpp"

namespace copnum {

enum class DominationMethod { greedy, exact };

struct DominatingSet {
  VertexSet vertices;
  DominationMethod method = DominationMethod::greedy;
  // Members in the order they were chosen.
  std::vector<Vertex> order;

  std::size_t size() const { return vertices.size(); }
};

inline constexpr std::size_t kExactDominationCap = 24;

// Every vertex outside s has a neighbor in s.
bool is_dominating(const Graph& g, const VertexSet& s);

// ceil((1 + ln(delta+1)) / (delta+1) * n).
std::size_t domination_bound(std::size_t n, std::size_t min_degree);

// Repeatedly takes the vertex covering the most undominated vertices, ties
// to the lowest id. Throws on isolated vertices.
DominatingSet greedy_dominating_set(const Graph& g);
// Minimum dominating set by branch and bound; n <= kExactDominationCap.
DominatingSet exact_min_dominating_set(const Graph& g);

// Cops sit on the set; any cop next to the robber steps onto it. Throws if
// the set does not dominate g or fewer than |ds| cops are available. Extra
// cops start on the first member.
CopPolicy dominating_cop_policy(const Graph& g, const DominatingSet& ds, std::size_t cops);
CopPolicy dominating_cop_policy(const Graph& g, const DominatingSet& ds);

// Cops start on the greedy dominating set in selection order (cycling when
// k exceeds it) and each steps to the lowest-id neighbor on a shortest path
// to the robber. With random_start the placement is uniform instead.
CopPolicy pursuit_cop_policy(const Graph& g, std::size_t k, bool random_start = false);
// Uniform placement and uniform moves over each closed neighborhood.
CopPolicy random_cop_policy(std::size_t k);
CopPolicy stay_cop_policy(std::span<const Vertex> positions);

// Places and moves to maximize the distance to the nearest cop, ties to the
// lowest id.
RobberPolicy evader_robber_policy();
RobberPolicy random_robber_policy();
// Places like the evader, then never moves.
RobberPolicy stay_robber_policy();

// Names: "dominating", "pursuit", "random", "stay" for cops.
CopPolicy make_cop_policy(const std::string& name, const Graph& g, std::size_t k);
// Names: "evader", "random", "stay".
RobberPolicy make_robber_policy(const std::string& name);

struct UpperBoundEstimate {
  std::optional<std::size_t> cops;
  // The deterministic pursuit strategy was shown to catch every robber, so
  // `cops` is a true upper bound on the cop number.
  bool verified = false;
};

// Least scheduled k for which pursuit cops catch the evader in every trial
// within the horizon. Trial 0 uses the deterministic placement, later trials
// random placements. Each candidate is then checked against every robber
// strategy when the state space fits the budget; candidates that fail the
// check are skipped. Throws on an empty schedule or horizon < n.
UpperBoundEstimate strategy_upper_bound(const Graph& g, std::span<const std::size_t> k_schedule,
                                        std::size_t trials, std::uint64_t seed,
                                        std::size_t horizon,
                                        std::uint64_t budget = kDefaultStateBudget);

// Whether the deterministic pursuit policy with k cops catches every robber,
// placed anywhere and moving arbitrarily. nullopt when the ordered state
// space n^k * n exceeds the budget.
std::optional<bool> pursuit_always_captures(const Graph& g, std::size_t k,
                                            std::uint64_t budget = kDefaultStateBudget);

}  // namespace copnum
