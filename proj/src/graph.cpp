#include "copnum/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

#include "copnum/error.hpp"

namespace copnum {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw Error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                  ") out of range for n=" + std::to_string(n));
    }
    if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
    normalized.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(normalized.begin(), normalized.end());
  if (auto dup = std::adjacent_find(normalized.begin(), normalized.end()); dup != normalized.end()) {
    throw Error("duplicate edge (" + std::to_string(dup->first) + "," +
                std::to_string(dup->second) + ")");
  }

  Graph g;
  g.n_ = n;
  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : normalized) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adjacency_.resize(2 * normalized.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : normalized) {
    g.adjacency_[cursor[u]++] = v;
    g.adjacency_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::min_degree() const {
  std::size_t best = n_ == 0 ? 0 : degree(0);
  for (Vertex v = 1; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<int> bfs_distances(const Graph& g, std::span<const Vertex> sources) {
  std::vector<int> dist(g.order(), -1);
  std::queue<Vertex> frontier;
  for (Vertex s : sources) {
    if (s >= g.order()) throw Error("source vertex " + std::to_string(s) + " out of range");
    if (dist[s] != 0) {
      dist[s] = 0;
      frontier.push(s);
    }
  }
  while (!frontier.empty()) {
    const Vertex u = frontier.front();
    frontier.pop();
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

std::vector<std::uint32_t> component_labels(const Graph& g) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> label(g.order(), kUnset);
  std::uint32_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u)) {
        if (label[w] == kUnset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t component_count(const Graph& g) {
  const auto labels = component_labels(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

bool is_connected(const Graph& g) { return component_count(g) <= 1; }

int eccentricity(const Graph& g, Vertex v) {
  const Vertex src[] = {v};
  const auto dist = bfs_distances(g, src);
  int ecc = 0;
  for (int d : dist) {
    if (d < 0) throw Error("eccentricity undefined on a disconnected graph");
    ecc = std::max(ecc, d);
  }
  return ecc;
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  if (perm.size() != g.order()) throw Error("permutation size does not match graph order");
  std::vector<Edge> mapped;
  mapped.reserve(g.edge_count());
  for (auto [u, v] : g.edges()) mapped.emplace_back(perm[u], perm[v]);
  return Graph::from_edges(g.order(), mapped);
}

std::uint64_t fingerprint(const Graph& g) {
  // FNV-1a over (n, edges).
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(g.order());
  for (auto [u, v] : g.edges()) {
    mix(u);
    mix(v);
  }
  return h;
}

bool is_subgraph(const Graph& sub, const Graph& super) {
  if (sub.order() != super.order()) return false;
  for (auto [u, v] : sub.edges()) {
    if (!super.has_edge(u, v)) return false;
  }
  return true;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

namespace {

std::vector<unsigned long long> parse_numbers(const std::string& line, std::size_t line_no,
                                              std::size_t expected) {
  std::istringstream in(line);
  std::vector<unsigned long long> values;
  std::string token;
  while (in >> token) {
    if (token.empty() || !std::all_of(token.begin(), token.end(),
                                      [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError(line_no, "expected a non-negative integer, got '" + token + "'");
    }
    try {
      values.push_back(std::stoull(token));
    } catch (const std::out_of_range&) {
      throw ParseError(line_no, "integer out of range: '" + token + "'");
    }
  }
  if (values.size() != expected) {
    throw ParseError(line_no, "expected " + std::to_string(expected) + " integers, got " +
                                  std::to_string(values.size()));
  }
  return values;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError(line_no + 1, "missing header 'n m'");
  const auto header = parse_numbers(line, line_no, 2);
  const std::size_t n = header[0];
  const std::size_t m = header[1];
  if (n > 0xffffffffULL) throw ParseError(line_no, "vertex count too large");

  std::vector<Edge> edges;
  std::vector<std::size_t> edge_line;
  while (next_line()) {
    const auto uv = parse_numbers(line, line_no, 2);
    if (uv[0] >= n || uv[1] >= n) throw ParseError(line_no, "vertex id out of range");
    if (uv[0] == uv[1]) throw ParseError(line_no, "self-loop");
    edges.emplace_back(static_cast<Vertex>(std::min(uv[0], uv[1])),
                       static_cast<Vertex>(std::max(uv[0], uv[1])));
    edge_line.push_back(line_no);
  }
  if (edges.size() != m) {
    throw ParseError(line_no, "header declares " + std::to_string(m) + " edges, found " +
                                  std::to_string(edges.size()));
  }
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (edges[order[i]] == edges[order[i - 1]]) {
      throw ParseError(edge_line[order[i]], "duplicate edge");
    }
  }
  return Graph::from_edges(n, edges);
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file '" + path + "'");
  try {
    return read_edge_list(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail() + " (in " + path + ")");
  }
}

void save_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write graph file '" + path + "'");
  write_edge_list(out, g);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw Error("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph::from_edges(n, edges);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < a; ++u) {
    for (std::size_t j = 0; j < b; ++j) edges.emplace_back(u, static_cast<Vertex>(a + j));
  }
  return Graph::from_edges(a + b, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, edges);
}

Graph petersen_graph() {
  // Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9.
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph::from_edges(10, edges);
}

Graph heawood_graph() {
  // 14-cycle with chords from each even vertex i to i+5.
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 14; ++i) {
    edges.emplace_back(i, (i + 1) % 14);
    if (i % 2 == 0) edges.emplace_back(i, (i + 5) % 14);
  }
  return Graph::from_edges(14, edges);
}

Graph balanced_tree(std::size_t branching, std::size_t height) {
  if (branching < 2) throw Error("balanced tree needs branching >= 2");
  std::vector<Edge> edges;
  std::vector<Vertex> level = {0};
  Vertex next = 1;
  for (std::size_t depth = 0; depth < height; ++depth) {
    std::vector<Vertex> children;
    const std::size_t fan = depth == 0 ? branching : branching - 1;
    for (Vertex parent : level) {
      for (std::size_t c = 0; c < fan; ++c) {
        edges.emplace_back(parent, next);
        children.push_back(next++);
      }
    }
    level = std::move(children);
  }
  return Graph::from_edges(next, edges);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  const auto shift = static_cast<Vertex>(a.order());
  for (auto [u, v] : b.edges()) edges.emplace_back(u + shift, v + shift);
  return Graph::from_edges(a.order() + b.order(), edges);
}

Graph circulant(std::size_t n, std::span<const std::size_t> offsets) {
  if (n < 2) throw Error("circulant needs n >= 2");
  std::vector<std::size_t> seen;
  std::vector<Edge> edges;
  for (std::size_t o : offsets) {
    if (o < 1 || o > n / 2) {
      throw Error("circulant offset " + std::to_string(o) + " outside 1.." + std::to_string(n / 2));
    }
    if (std::find(seen.begin(), seen.end(), o) != seen.end()) {
      throw Error("duplicate circulant offset " + std::to_string(o));
    }
    seen.push_back(o);
    for (Vertex i = 0; i < n; ++i) {
      const auto j = static_cast<Vertex>((i + o) % n);
      // n/2 with n even pairs each vertex with its antipode once.
      if (2 * o == n && j < i) continue;
      edges.emplace_back(i, j);
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace copnum
