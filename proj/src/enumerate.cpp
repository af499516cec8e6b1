#include "copnum/enumerate.hpp"

#include <array>
#include <bit>
#include <string>

#include "copnum/error.hpp"

namespace copnum {

namespace {

void require_enumerable(std::size_t n, std::size_t degree) {
  if (n > kEnumerationCap) {
    throw Error("enumeration is capped at n <= " + std::to_string(kEnumerationCap) + ", got n=" +
                std::to_string(n));
  }
  if ((n * degree) % 2 != 0) throw Error("degree sum must be even");
}

// Fills rows vertex by vertex. Vertex v picks its missing neighbors among
// higher-numbered vertices with spare degree, so each graph is produced by
// exactly one sequence of choices.
class RegularEnumerator {
 public:
  RegularEnumerator(std::size_t n, std::size_t degree,
                    const std::function<void(AdjacencyRows)>& visit)
      : n_(n), degree_(degree), visit_(visit) {}

  void run() { fill(0); }

 private:
  void fill(std::size_t v) {
    if (v == n_) {
      visit_(AdjacencyRows(rows_.data(), n_));
      return;
    }
    const std::size_t need = degree_ - static_cast<std::size_t>(std::popcount(rows_[v]));
    std::array<Vertex, kEnumerationCap> candidates{};
    std::size_t count = 0;
    for (std::size_t w = v + 1; w < n_; ++w) {
      if (static_cast<std::size_t>(std::popcount(rows_[w])) < degree_) {
        candidates[count++] = static_cast<Vertex>(w);
      }
    }
    if (count < need) return;
    choose(v, candidates, count, 0, need);
  }

  void choose(std::size_t v, const std::array<Vertex, kEnumerationCap>& candidates,
              std::size_t count, std::size_t from, std::size_t remaining) {
    if (remaining == 0) {
      fill(v + 1);
      return;
    }
    for (std::size_t i = from; i + remaining <= count; ++i) {
      const Vertex w = candidates[i];
      rows_[v] |= static_cast<std::uint16_t>(1U << w);
      rows_[w] |= static_cast<std::uint16_t>(1U << v);
      choose(v, candidates, count, i + 1, remaining - 1);
      rows_[v] &= static_cast<std::uint16_t>(~(1U << w));
      rows_[w] &= static_cast<std::uint16_t>(~(1U << v));
    }
  }

  std::size_t n_;
  std::size_t degree_;
  const std::function<void(AdjacencyRows)>& visit_;
  std::array<std::uint16_t, kEnumerationCap> rows_{};
};

}  // namespace

void for_each_regular(std::size_t n, std::size_t degree,
                      const std::function<void(AdjacencyRows)>& visit) {
  require_enumerable(n, degree);
  if (degree >= n && n > 0) return;
  RegularEnumerator(n, degree, visit).run();
}

Graph graph_from_rows(AdjacencyRows rows) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < rows.size(); ++u) {
    for (Vertex v = u + 1; v < rows.size(); ++v) {
      if ((rows[u] >> v) & 1U) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(rows.size(), edges);
}

std::vector<Graph> enumerate_regular(std::size_t n, std::size_t degree) {
  std::vector<Graph> out;
  for_each_regular(n, degree, [&](AdjacencyRows rows) { out.push_back(graph_from_rows(rows)); });
  return out;
}

std::uint64_t count_regular(std::size_t n, std::size_t degree) {
  std::uint64_t total = 0;
  for_each_regular(n, degree, [&](AdjacencyRows) { ++total; });
  return total;
}

std::vector<std::uint64_t> switching_class_counts(std::size_t n, std::size_t degree,
                                                  const VertexSet& s, const VertexSet& t) {
  require_enumerable(n, degree);
  if (s.universe() != n || t.universe() != n) throw Error("vertex set universe does not match n");
  if (s.intersects(t)) throw Error("sets must be disjoint");
  std::uint16_t t_mask = 0;
  t.for_each([&](Vertex v) { t_mask |= static_cast<std::uint16_t>(1U << v); });
  const auto s_members = s.to_vector();

  std::vector<std::uint64_t> counts(s.size() * degree + 1, 0);
  for_each_regular(n, degree, [&](AdjacencyRows rows) {
    std::size_t between = 0;
    for (Vertex a : s_members) between += static_cast<std::size_t>(std::popcount(static_cast<std::uint16_t>(rows[a] & t_mask)));
    ++counts[between];
  });
  return counts;
}

std::uint64_t count_switching_class(std::size_t n, std::size_t degree, const VertexSet& s,
                                    const VertexSet& t, std::size_t i) {
  const auto counts = switching_class_counts(n, degree, s, t);
  return i < counts.size() ? counts[i] : 0;
}

}  // namespace copnum
