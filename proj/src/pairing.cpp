#include "copnum/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "copnum/error.hpp"

namespace copnum {

namespace {

void require_pairing_shape(std::size_t n, std::size_t degree) {
  if (degree < 1) throw Error("degree must be at least 1");
  if (n < 2) throw Error("pairing needs at least 2 buckets");
  if ((n * degree) % 2 != 0) throw Error("degree sum must be even");
}

}  // namespace

Pairing random_pairing(std::size_t n, std::size_t degree, Rng& rng) {
  require_pairing_shape(n, degree);
  const auto points = static_cast<std::uint32_t>(n * degree);
  // A uniform permutation read off in consecutive pairs is a uniform perfect
  // matching: every matching has exactly 2^(m) m! preimages.
  std::vector<std::uint32_t> order(points);
  for (std::uint32_t i = 0; i < points; ++i) order[i] = i;
  for (std::uint32_t i = points - 1; i > 0; --i) {
    const auto j = static_cast<std::uint32_t>(uniform_below(rng, i + 1));
    std::swap(order[i], order[j]);
  }
  Pairing p;
  p.n = n;
  p.degree = degree;
  p.mate.resize(points);
  for (std::uint32_t i = 0; i < points; i += 2) {
    p.mate[order[i]] = order[i + 1];
    p.mate[order[i + 1]] = order[i];
  }
  return p;
}

Pairing random_pairing(std::size_t n, std::size_t degree, std::uint64_t seed) {
  Rng rng(seed);
  Pairing p = random_pairing(n, degree, rng);
  p.seed = seed;
  return p;
}

Pairing pairing_from_pairs(std::size_t n, std::size_t degree,
                           const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  require_pairing_shape(n, degree);
  const std::size_t points = n * degree;
  if (pairs.size() * 2 != points) throw Error("pairs do not cover every point exactly once");
  constexpr auto kFree = static_cast<std::uint32_t>(-1);
  Pairing p;
  p.n = n;
  p.degree = degree;
  p.mate.assign(points, kFree);
  for (auto [a, b] : pairs) {
    if (a >= points || b >= points || a == b || p.mate[a] != kFree || p.mate[b] != kFree) {
      throw Error("invalid point pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    p.mate[a] = b;
    p.mate[b] = a;
  }
  return p;
}

Graph MultigraphSummary::to_graph() const {
  if (!simple()) throw Error("pairing projects to a multigraph");
  return Graph::from_edges(n, edges);
}

MultigraphSummary project(const Pairing& p) {
  MultigraphSummary out;
  out.n = p.n;
  for (std::uint32_t a = 0; a < p.point_count(); ++a) {
    const std::uint32_t b = p.mate[a];
    if (a > b) continue;
    const Vertex u = p.bucket(a);
    const Vertex v = p.bucket(b);
    if (u == v) ++out.loops;
    out.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(out.edges.begin(), out.edges.end());
  for (std::size_t i = 1; i < out.edges.size(); ++i) {
    const Edge& e = out.edges[i];
    if (e == out.edges[i - 1] && e.first != e.second) ++out.multi_edges;
  }
  return out;
}

bool projects_to_simple(const Pairing& p) {
  std::vector<Vertex> targets(p.degree);
  for (Vertex u = 0; u < p.n; ++u) {
    const std::size_t base = static_cast<std::size_t>(u) * p.degree;
    for (std::size_t j = 0; j < p.degree; ++j) {
      const Vertex v = p.bucket(p.mate[base + j]);
      if (v == u) return false;
      for (std::size_t i = 0; i < j; ++i) {
        if (targets[i] == v) return false;
      }
      targets[j] = v;
    }
  }
  return true;
}

SampledGraph sample_regular_counted(std::size_t n, std::size_t degree, std::uint64_t seed,
                                    std::size_t max_rejects) {
  require_pairing_shape(n, degree);
  if (degree >= n) throw Error("degree must be below the vertex count");
  Rng rng(seed);
  for (std::size_t rejections = 0;; ++rejections) {
    const Pairing p = random_pairing(n, degree, rng);
    if (projects_to_simple(p)) return {project(p).to_graph(), rejections};
    if (rejections == max_rejects) throw Error("rejection budget exhausted");
  }
}

Graph sample_regular(std::size_t n, std::size_t degree, std::uint64_t seed,
                     std::size_t max_rejects) {
  return sample_regular_counted(n, degree, seed, max_rejects).graph;
}

double simplicity_rate(std::size_t n, std::size_t degree, std::size_t trials,
                       std::uint64_t seed) {
  if (trials == 0) throw Error("trials must be positive");
  require_pairing_shape(n, degree);
  Rng rng(seed);
  std::size_t simple = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    if (projects_to_simple(random_pairing(n, degree, rng))) ++simple;
  }
  return static_cast<double>(simple) / static_cast<double>(trials);
}

double simplicity_limit(std::size_t degree) {
  const auto D = static_cast<double>(degree);
  return std::exp(-(D * D - 1.0) / 4.0);
}

double simplicity_limit_alternate(std::size_t degree) {
  const auto d = static_cast<double>(degree) - 1.0;
  return std::exp(d / 2.0 - d * d / 4.0);
}

ExposureTrace exposure_process(const Pairing& p, const VertexSet& start, std::size_t max_rounds) {
  if (start.universe() != p.n) throw Error("start set universe does not match pairing");
  if (start.empty()) throw Error("empty source set");

  ExposureTrace trace;
  trace.start = start;
  VertexSet exposed_vertex = start;
  std::vector<bool> exposed_point(p.point_count(), false);
  VertexSet frontier = start;

  for (std::size_t r = 1; r <= max_rounds && !frontier.empty(); ++r) {
    ExposureRound round{r, frontier, VertexSet(p.n), 0, 0};
    frontier.for_each([&](Vertex u) {
      const std::size_t base = static_cast<std::size_t>(u) * p.degree;
      for (std::size_t j = 0; j < p.degree; ++j) {
        const auto a = static_cast<std::uint32_t>(base + j);
        if (exposed_point[a]) continue;
        const std::uint32_t b = p.mate[a];
        exposed_point[a] = true;
        exposed_point[b] = true;
        ++round.pairs;
        const Vertex w = p.bucket(b);
        if (exposed_vertex.contains(w)) {
          ++round.bad_pairs;
        } else {
          exposed_vertex.insert(w);
          round.reached.insert(w);
        }
      }
    });
    trace.total_pairs += round.pairs;
    trace.total_bad_pairs += round.bad_pairs;
    frontier = round.reached;
    trace.rounds.push_back(std::move(round));
  }
  return trace;
}

nlohmann::json to_json(const ExposureTrace& trace) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& r : trace.rounds) {
    rounds.push_back({{"round", r.round},
                      {"sphere_size", r.reached.size()},
                      {"pairs", r.pairs},
                      {"bad_pairs", r.bad_pairs}});
  }
  return rounds;
}

}  // namespace copnum
