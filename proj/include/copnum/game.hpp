#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "copnum/graph.hpp"
#include "json.hpp"

namespace copnum {

inline constexpr std::uint64_t kDefaultStateBudget = 200'000'000;

enum class Mover : std::uint8_t { cops, robber };

struct GameState {
  // Sorted; cops are interchangeable.
  std::vector<Vertex> cops;
  Vertex robber = 0;
  Mover to_move = Mover::cops;
};

// Exact solution of the k-cop game. The robber moves along robber-graph
// edges, the cops along cop-graph edges; both may stay put. A state is
// captured when some cop shares the robber's vertex.
class GameTable {
 public:
  std::size_t order() const noexcept { return n_; }
  std::size_t cop_count() const noexcept { return k_; }
  std::uint64_t robber_graph_fingerprint() const noexcept { return robber_fp_; }
  std::uint64_t cop_graph_fingerprint() const noexcept { return cop_fp_; }

  // Some placement wins against every robber placement, robber placing
  // second and cops moving first afterwards.
  bool cops_win() const noexcept { return !winning_placements_.empty(); }

  std::size_t config_count() const noexcept { return config_count_; }
  std::size_t state_count() const noexcept { return 2 * config_count_ * n_; }
  // Ranks a sorted multiset of cop positions; throws on bad input.
  std::size_t config_index(std::span<const Vertex> cops) const;
  std::vector<Vertex> config(std::size_t index) const;

  bool cop_win(const GameState& s) const;
  // Successor configuration chosen for a cop-to-move cop_win state. Throws
  // when the state is not cop_win.
  std::vector<Vertex> best_move(std::span<const Vertex> cops, Vertex robber) const;
  // Placements that win against every robber placement, in rank order.
  std::vector<std::vector<Vertex>> winning_placements() const;
  bool placement_wins(std::span<const Vertex> cops) const;
  // Rounds of cop play needed to force capture from a cop-to-move state
  // under the stored moves; 0 when already captured. Throws unless cop_win.
  std::size_t capture_rounds(std::span<const Vertex> cops, Vertex robber) const;

  // {k, n, fingerprints, cops_win, config_count, cop_to_move, robber_to_move,
  // winning_placements}; label arrays are indexed by config * n + robber.
  nlohmann::json to_json() const;

 private:
  friend class GameSolver;

  std::size_t state_of(std::span<const Vertex> cops, Vertex robber) const;

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::uint64_t robber_fp_ = 0;
  std::uint64_t cop_fp_ = 0;
  std::size_t config_count_ = 0;
  std::vector<std::vector<std::uint64_t>> binom_;
  std::vector<std::uint8_t> cop_to_move_win_;
  std::vector<std::uint8_t> robber_to_move_win_;
  std::vector<std::uint32_t> move_;
  std::vector<std::uint32_t> rounds_;
  std::vector<std::uint32_t> winning_placements_;
};

// Requires a connected graph and k >= 1. Throws "state space too large"
// when the estimated state-move pairs exceed the budget.
GameTable solve_k(const Graph& g, std::size_t k, std::uint64_t budget = kDefaultStateBudget);

// Robber on g_robber, cops on h_cops, shared vertex set. Both graphs must be
// connected.
GameTable solve_two_graphs(const Graph& g_robber, const Graph& h_cops, std::size_t k,
                           std::uint64_t budget = kDefaultStateBudget);

// Least k <= k_max whose table is cop_win, or nullopt.
std::optional<std::size_t> cop_number(const Graph& g, std::size_t k_max,
                                      std::uint64_t budget = kDefaultStateBudget);

// Number of state-move pairs the solver would touch; compared to the budget.
std::uint64_t estimated_work(const Graph& g_robber, const Graph& h_cops, std::size_t k);

// One-cop win test by repeatedly deleting a vertex whose closed neighborhood
// lies inside another vertex's closed neighborhood.
bool is_copwin_one_cop(const Graph& g);

}  // namespace copnum
