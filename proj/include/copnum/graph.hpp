#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "copnum/vertex_set.hpp"

namespace copnum {

using Edge = std::pair<Vertex, Vertex>;

// Immutable simple undirected graph on vertices 0..n-1, stored as sorted
// adjacency lists in CSR layout.
class Graph {
 public:
  Graph() = default;

  // Throws Error on self-loops, duplicate edges or out-of-range endpoints.
  // Edge orientation is irrelevant.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(Vertex u, Vertex v) const;

  std::size_t min_degree() const;
  std::size_t max_degree() const;
  bool is_regular() const { return n_ == 0 || min_degree() == max_degree(); }

  // Canonical edge list: u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  bool operator==(const Graph& other) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

// Hop distances from the nearest source; -1 for unreachable vertices.
std::vector<int> bfs_distances(const Graph& g, std::span<const Vertex> sources);

// Component id per vertex, numbered in order of smallest member.
std::vector<std::uint32_t> component_labels(const Graph& g);
std::size_t component_count(const Graph& g);
bool is_connected(const Graph& g);
int eccentricity(const Graph& g, Vertex v);

// Returns the graph with vertex v renamed perm[v].
Graph relabel(const Graph& g, std::span<const Vertex> perm);

// Stable 64-bit hash of the canonical edge list.
std::uint64_t fingerprint(const Graph& g);

bool is_subgraph(const Graph& sub, const Graph& super);

// Canonical edge-list text: "n m", then one "u v" line per edge with u < v,
// lexicographically sorted.
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list(const Graph& g);
// Accepts either orientation per line; rejects loops, duplicates, bad counts.
Graph read_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);
Graph load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const Graph& g);

// Fixtures.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph star_graph(std::size_t leaves);
Graph petersen_graph();
Graph heawood_graph();
// Root of degree `branching`, every internal vertex of degree `branching`,
// leaves at depth `height`. Vertices are numbered in BFS order from the root.
Graph balanced_tree(std::size_t branching, std::size_t height);
Graph disjoint_union(const Graph& a, const Graph& b);

// Vertex i is adjacent to i +- o (mod n) for each offset o in 1..n/2.
Graph circulant(std::size_t n, std::span<const std::size_t> offsets);

}  // namespace copnum
