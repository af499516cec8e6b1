#include "copnum/neighborhood.hpp"

#include <numeric>
#include <queue>

#include "copnum/error.hpp"

namespace copnum {

namespace {

void require_sources(const Graph& g, const VertexSet& sources) {
  if (sources.universe() != g.order()) throw Error("vertex set universe does not match graph");
  if (sources.empty()) throw Error("empty source set");
}

// Distances from the source set, truncated: vertices beyond `limit` stay -1.
std::vector<int> truncated_distances(const Graph& g, const VertexSet& sources, std::size_t limit) {
  std::vector<int> dist(g.order(), -1);
  std::queue<Vertex> frontier;
  sources.for_each([&](Vertex v) {
    dist[v] = 0;
    frontier.push(v);
  });
  while (!frontier.empty()) {
    const Vertex u = frontier.front();
    frontier.pop();
    if (static_cast<std::size_t>(dist[u]) == limit) continue;
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

}  // namespace

VertexSet sphere(const Graph& g, const VertexSet& sources, std::size_t radius) {
  require_sources(g, sources);
  const auto dist = truncated_distances(g, sources, radius);
  VertexSet out(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    if (dist[v] >= 0 && static_cast<std::size_t>(dist[v]) == radius) out.insert(v);
  }
  return out;
}

VertexSet ball(const Graph& g, const VertexSet& sources, std::size_t radius) {
  require_sources(g, sources);
  const auto dist = truncated_distances(g, sources, radius);
  VertexSet out(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    if (dist[v] >= 0) out.insert(v);
  }
  return out;
}

VertexSet closed_neighborhood(const Graph& g, const VertexSet& s) {
  require_sources(g, s);
  VertexSet out = s;
  s.for_each([&](Vertex v) {
    for (Vertex w : g.neighbors(v)) out.insert(w);
  });
  return out;
}

std::size_t edges_within(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.order()) throw Error("vertex set universe does not match graph");
  std::size_t count = 0;
  s.for_each([&](Vertex v) {
    for (Vertex w : g.neighbors(v)) {
      if (v < w && s.contains(w)) ++count;
    }
  });
  return count;
}

std::size_t edges_between(const Graph& g, const VertexSet& s, const VertexSet& t) {
  if (s.universe() != g.order() || t.universe() != g.order()) {
    throw Error("vertex set universe does not match graph");
  }
  if (s.intersects(t)) throw Error("sets must be disjoint");
  std::size_t count = 0;
  s.for_each([&](Vertex v) {
    for (Vertex w : g.neighbors(v)) {
      if (t.contains(w)) ++count;
    }
  });
  return count;
}

BallGraph ball_graph(const Graph& g, const VertexSet& sources, std::size_t radius) {
  if (radius == 0) throw Error("ball graph radius must be at least 1");
  require_sources(g, sources);
  const auto dist = truncated_distances(g, sources, radius);

  BallGraph out{VertexSet(g.order()), {}, 0, 0};
  const auto inner = static_cast<int>(radius) - 1;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (dist[v] < 0) continue;
    out.vertices.insert(v);
    for (Vertex w : g.neighbors(v)) {
      const bool v_inner = dist[v] <= inner;
      const bool w_inner = dist[w] >= 0 && dist[w] <= inner;
      // Count each qualifying edge once, from its smaller endpoint.
      if ((v_inner || w_inner) && v < w) out.edges.emplace_back(v, w);
    }
  }

  // Union-find over the ball's vertices for the component count.
  std::vector<Vertex> parent(g.order());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t components = out.vertices.size();
  for (auto [u, v] : out.edges) {
    const Vertex a = find(u);
    const Vertex b = find(v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  out.components = components;
  out.excess = out.edges.size() + components - out.vertices.size();
  return out;
}

std::vector<std::size_t> sphere_profile(const Graph& g, const VertexSet& sources,
                                        std::size_t max_radius) {
  require_sources(g, sources);
  const auto dist = truncated_distances(g, sources, max_radius);
  std::vector<std::size_t> sizes(max_radius + 1, 0);
  for (int d : dist) {
    if (d >= 0) ++sizes[static_cast<std::size_t>(d)];
  }
  return sizes;
}

}  // namespace copnum
