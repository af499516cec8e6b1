#include "copnum/game.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "copnum/error.hpp"

namespace copnum {

namespace {

constexpr std::uint32_t kNoMove = std::numeric_limits<std::uint32_t>::max();

std::vector<std::vector<std::uint64_t>> binomial_table(std::size_t top, std::size_t k) {
  std::vector<std::vector<std::uint64_t>> c(top + 1, std::vector<std::uint64_t>(k + 1, 0));
  for (std::size_t m = 0; m <= top; ++m) {
    c[m][0] = 1;
    for (std::size_t j = 1; j <= std::min(m, k); ++j) {
      c[m][j] = c[m - 1][j - 1] + (j <= m - 1 ? c[m - 1][j] : 0);
    }
  }
  return c;
}

// Multisets a_1 <= ... <= a_k map to sets b_i = a_i + i - 1, ranked in
// colex order by sum C(b_i, i).
std::size_t rank_multiset(const std::vector<std::vector<std::uint64_t>>& c,
                          std::span<const Vertex> sorted) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) r += c[sorted[i] + i][i + 1];
  return static_cast<std::size_t>(r);
}

void unrank_multiset(const std::vector<std::vector<std::uint64_t>>& c, std::size_t k,
                     std::uint64_t rank, std::vector<Vertex>& out) {
  out.resize(k);
  for (std::size_t i = k; i >= 1; --i) {
    std::size_t b = i - 1;
    while (b + 1 < c.size() && c[b + 1][i] <= rank) ++b;
    rank -= c[b][i];
    out[i - 1] = static_cast<Vertex>(b - (i - 1));
  }
}

void require_connected(const Graph& g) {
  if (g.order() == 0 || !is_connected(g)) throw Error("connected graph required");
}

}  // namespace

std::uint64_t estimated_work(const Graph& g_robber, const Graph& h_cops, std::size_t k) {
  const std::size_t n = h_cops.order();
  long double configs = 1;
  for (std::size_t i = 1; i <= k; ++i) configs = configs * static_cast<long double>(n + i - 1) / i;
  const long double cop_moves = std::pow(static_cast<long double>(h_cops.max_degree() + 1),
                                         static_cast<long double>(k));
  const long double work =
      configs * n * (cop_moves + static_cast<long double>(g_robber.max_degree() + 1));
  if (work >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(std::llround(work));
}

class GameSolver {
 public:
  GameSolver(const Graph& robber, const Graph& cops, std::size_t k)
      : robber_(robber), cops_(cops), n_(cops.order()), k_(k) {}

  GameTable run() {
    GameTable t;
    t.n_ = n_;
    t.k_ = k_;
    t.robber_fp_ = fingerprint(robber_);
    t.cop_fp_ = fingerprint(cops_);
    t.binom_ = binomial_table(n_ + k_, k_);
    t.config_count_ = static_cast<std::size_t>(t.binom_[n_ + k_ - 1][k_]);
    build_moves(t);
    propagate(t);
    for (std::size_t c = 0; c < t.config_count_; ++c) {
      bool all = true;
      for (std::size_t r = 0; r < n_ && all; ++r) all = t.cop_to_move_win_[c * n_ + r] != 0;
      if (all) t.winning_placements_.push_back(static_cast<std::uint32_t>(c));
    }
    return t;
  }

 private:
  void build_moves(const GameTable& t) {
    const std::size_t configs = t.config_count_;
    configs_.resize(configs * k_);
    std::vector<Vertex> cur;
    for (std::size_t c = 0; c < configs; ++c) {
      unrank_multiset(t.binom_, k_, c, cur);
      std::copy(cur.begin(), cur.end(), configs_.begin() + static_cast<std::ptrdiff_t>(c * k_));
    }
    offsets_.assign(configs + 1, 0);
    std::vector<std::uint32_t> local;
    std::vector<std::size_t> digit(k_);
    std::vector<Vertex> next(k_);
    for (std::size_t c = 0; c < configs; ++c) {
      local.clear();
      const Vertex* from = configs_.data() + c * k_;
      // Odometer over the closed neighborhoods of each cop.
      std::fill(digit.begin(), digit.end(), 0);
      while (true) {
        for (std::size_t i = 0; i < k_; ++i) {
          const auto nb = cops_.neighbors(from[i]);
          next[i] = digit[i] == 0 ? from[i] : nb[digit[i] - 1];
        }
        std::sort(next.begin(), next.end());
        local.push_back(static_cast<std::uint32_t>(rank_multiset(t.binom_, next)));
        std::size_t i = 0;
        while (i < k_) {
          if (++digit[i] <= cops_.degree(from[i])) break;
          digit[i] = 0;
          ++i;
        }
        if (i == k_) break;
      }
      std::sort(local.begin(), local.end());
      local.erase(std::unique(local.begin(), local.end()), local.end());
      moves_.insert(moves_.end(), local.begin(), local.end());
      offsets_[c + 1] = moves_.size();
    }
  }

  bool captured(std::size_t c, Vertex r) const {
    const Vertex* p = configs_.data() + c * k_;
    return std::binary_search(p, p + k_, r);
  }

  // Retrograde analysis. Work items are (state, side); the deque stays sorted
  // by capture depth so recorded round counts are exact.
  void propagate(GameTable& t) {
    const std::size_t states = t.config_count_ * n_;
    t.cop_to_move_win_.assign(states, 0);
    t.robber_to_move_win_.assign(states, 0);
    t.move_.assign(states, kNoMove);
    t.rounds_.assign(states, 0);
    std::vector<std::uint32_t> robber_depth(states, 0);
    std::vector<std::uint16_t> remaining(states, 0);

    struct Item {
      std::size_t state;
      Mover side;
    };
    std::deque<Item> queue;
    for (std::size_t c = 0; c < t.config_count_; ++c) {
      for (Vertex r = 0; r < n_; ++r) {
        const std::size_t s = c * n_ + r;
        if (captured(c, r)) {
          t.cop_to_move_win_[s] = 1;
          t.robber_to_move_win_[s] = 1;
          t.move_[s] = static_cast<std::uint32_t>(c);
          queue.push_back({s, Mover::cops});
          queue.push_back({s, Mover::robber});
        } else {
          remaining[s] = static_cast<std::uint16_t>(robber_.degree(r) + 1);
        }
      }
    }

    while (!queue.empty()) {
      const Item item = queue.front();
      queue.pop_front();
      const std::size_t c = item.state / n_;
      const Vertex r = static_cast<Vertex>(item.state % n_);
      if (item.side == Mover::cops) {
        // Robber-to-move states (c, q) with r in N[q] lose one escape.
        auto visit = [&](Vertex q) {
          const std::size_t s = c * n_ + q;
          if (t.robber_to_move_win_[s]) return;
          if (--remaining[s] == 0) {
            t.robber_to_move_win_[s] = 1;
            robber_depth[s] = t.rounds_[item.state];
            queue.push_front({s, Mover::robber});
          }
        };
        visit(r);
        for (Vertex q : robber_.neighbors(r)) visit(q);
      } else {
        // Cop-to-move states (p, r) with c reachable from p in one move.
        for (std::size_t i = offsets_[c]; i < offsets_[c + 1]; ++i) {
          const std::size_t s = moves_[i] * n_ + r;
          if (t.cop_to_move_win_[s]) continue;
          t.cop_to_move_win_[s] = 1;
          t.move_[s] = static_cast<std::uint32_t>(c);
          t.rounds_[s] = robber_depth[item.state] + 1;
          queue.push_back({s, Mover::cops});
        }
      }
    }
  }

  const Graph& robber_;
  const Graph& cops_;
  std::size_t n_;
  std::size_t k_;
  std::vector<Vertex> configs_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> moves_;
};

std::size_t GameTable::config_index(std::span<const Vertex> cops) const {
  if (cops.size() != k_) throw Error("expected " + std::to_string(k_) + " cop positions");
  for (std::size_t i = 0; i < cops.size(); ++i) {
    if (cops[i] >= n_) throw Error("cop position out of range");
    if (i > 0 && cops[i - 1] > cops[i]) throw Error("cop positions must be sorted");
  }
  return rank_multiset(binom_, cops);
}

std::vector<Vertex> GameTable::config(std::size_t index) const {
  if (index >= config_count_) throw Error("configuration index out of range");
  std::vector<Vertex> out;
  unrank_multiset(binom_, k_, index, out);
  return out;
}

std::size_t GameTable::state_of(std::span<const Vertex> cops, Vertex robber) const {
  if (robber >= n_) throw Error("robber position out of range");
  return config_index(cops) * n_ + robber;
}

bool GameTable::cop_win(const GameState& s) const {
  const std::size_t id = state_of(s.cops, s.robber);
  return (s.to_move == Mover::cops ? cop_to_move_win_[id] : robber_to_move_win_[id]) != 0;
}

std::vector<Vertex> GameTable::best_move(std::span<const Vertex> cops, Vertex robber) const {
  const std::size_t id = state_of(cops, robber);
  if (!cop_to_move_win_[id]) throw Error("state is not winning for the cops");
  return config(move_[id]);
}

std::size_t GameTable::capture_rounds(std::span<const Vertex> cops, Vertex robber) const {
  const std::size_t id = state_of(cops, robber);
  if (!cop_to_move_win_[id]) throw Error("state is not winning for the cops");
  return rounds_[id];
}

std::vector<std::vector<Vertex>> GameTable::winning_placements() const {
  std::vector<std::vector<Vertex>> out;
  out.reserve(winning_placements_.size());
  for (std::uint32_t c : winning_placements_) out.push_back(config(c));
  return out;
}

bool GameTable::placement_wins(std::span<const Vertex> cops) const {
  const auto c = static_cast<std::uint32_t>(config_index(cops));
  return std::binary_search(winning_placements_.begin(), winning_placements_.end(), c);
}

nlohmann::json GameTable::to_json() const {
  nlohmann::json j;
  j["k"] = k_;
  j["n"] = n_;
  j["robber_graph_fingerprint"] = robber_fp_;
  j["cop_graph_fingerprint"] = cop_fp_;
  j["cops_win"] = cops_win();
  j["config_count"] = config_count_;
  j["cop_to_move"] = cop_to_move_win_;
  j["robber_to_move"] = robber_to_move_win_;
  j["winning_placements"] = winning_placements();
  return j;
}

GameTable solve_two_graphs(const Graph& g_robber, const Graph& h_cops, std::size_t k,
                           std::uint64_t budget) {
  if (k == 0) throw Error("cop count must be at least 1");
  if (g_robber.order() != h_cops.order()) throw Error("graphs must share the same vertex set");
  require_connected(g_robber);
  require_connected(h_cops);
  if (std::max(g_robber.max_degree(), h_cops.max_degree()) + 1 >
      std::numeric_limits<std::uint16_t>::max()) {
    throw Error("state space too large");
  }
  const std::uint64_t work = estimated_work(g_robber, h_cops, k);
  if (work > budget) {
    throw Error("state space too large: " + std::to_string(work) + " state-move pairs exceeds " +
                std::to_string(budget));
  }
  return GameSolver(g_robber, h_cops, k).run();
}

GameTable solve_k(const Graph& g, std::size_t k, std::uint64_t budget) {
  return solve_two_graphs(g, g, k, budget);
}

std::optional<std::size_t> cop_number(const Graph& g, std::size_t k_max, std::uint64_t budget) {
  require_connected(g);
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (solve_k(g, k, budget).cops_win()) return k;
  }
  return std::nullopt;
}

bool is_copwin_one_cop(const Graph& g) {
  require_connected(g);
  const std::size_t n = g.order();
  std::vector<VertexSet> closed;
  closed.reserve(n);
  for (Vertex v = 0; v < n; ++v) {
    VertexSet s(n, g.neighbors(v));
    s.insert(v);
    closed.push_back(std::move(s));
  }
  VertexSet alive = VertexSet::full(n);
  bool removed = true;
  while (alive.size() > 1 && removed) {
    removed = false;
    for (Vertex u = 0; u < n && !removed; ++u) {
      if (!alive.contains(u)) continue;
      const VertexSet mine = closed[u] & alive;
      for (Vertex v = 0; v < n; ++v) {
        if (v == u || !alive.contains(v)) continue;
        if (mine.is_subset_of(closed[v] & alive)) {
          alive.erase(u);
          removed = true;
          break;
        }
      }
    }
  }
  return alive.size() <= 1;
}

}  // namespace copnum
