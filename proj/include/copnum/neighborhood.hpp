#pragma once

#include <cstddef>
#include <vector>

#include "copnum/graph.hpp"
#include "copnum/vertex_set.hpp"

namespace copnum {

// The subgraph formed by every edge with at least one endpoint within
// distance radius-1 of the sources, over the vertex set of the radius ball.
struct BallGraph {
  VertexSet vertices;
  std::vector<Edge> edges;
  std::size_t components = 0;
  // |E| - |V| + components: edges beyond a spanning forest.
  std::size_t excess = 0;
};

// Vertices at hop distance exactly `radius` from the nearest source.
VertexSet sphere(const Graph& g, const VertexSet& sources, std::size_t radius);
// Vertices at hop distance at most `radius`.
VertexSet ball(const Graph& g, const VertexSet& sources, std::size_t radius);
VertexSet closed_neighborhood(const Graph& g, const VertexSet& s);

std::size_t edges_within(const Graph& g, const VertexSet& s);
// Throws when the sets overlap.
std::size_t edges_between(const Graph& g, const VertexSet& s, const VertexSet& t);

BallGraph ball_graph(const Graph& g, const VertexSet& sources, std::size_t radius);

// Sphere sizes |S(sources, 0)|, |S(sources, 1)|, ... up to max_radius.
std::vector<std::size_t> sphere_profile(const Graph& g, const VertexSet& sources,
                                        std::size_t max_radius);

}  // namespace copnum
