#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "copnum/graph.hpp"
#include "copnum/random.hpp"
#include "copnum/vertex_set.hpp"
#include "json.hpp"

namespace copnum {

// Configuration-model state: n buckets of `degree` points each, point p lives
// in bucket p / degree, and `mate` is a fixed-point-free involution.
struct Pairing {
  std::size_t n = 0;
  std::size_t degree = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> mate;

  Vertex bucket(std::uint32_t point) const { return static_cast<Vertex>(point / degree); }
  std::size_t point_count() const { return mate.size(); }
};

// Throws unless n*d is even, d >= 1 and n >= 2.
Pairing random_pairing(std::size_t n, std::size_t degree, std::uint64_t seed);
Pairing random_pairing(std::size_t n, std::size_t degree, Rng& rng);

// Builds a pairing from explicit point pairs; validates the involution.
Pairing pairing_from_pairs(std::size_t n, std::size_t degree,
                           const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs);

struct MultigraphSummary {
  std::size_t n = 0;
  // One entry per pair, (u, v) with u <= v, sorted; multiplicities kept.
  std::vector<Edge> edges;
  std::size_t loops = 0;
  // Parallel copies beyond the first, summed over bucket pairs.
  std::size_t multi_edges = 0;

  bool simple() const { return loops == 0 && multi_edges == 0; }
  // Throws unless simple().
  Graph to_graph() const;
};

MultigraphSummary project(const Pairing& p);
// Same verdict as project(p).simple() without building the edge list.
bool projects_to_simple(const Pairing& p);

struct SampledGraph {
  Graph graph;
  std::size_t rejections = 0;
};

// Uniform simple d-regular graph by rejection on the pairing model.
Graph sample_regular(std::size_t n, std::size_t degree, std::uint64_t seed,
                     std::size_t max_rejects);
SampledGraph sample_regular_counted(std::size_t n, std::size_t degree, std::uint64_t seed,
                                    std::size_t max_rejects);

// Fraction of `trials` random pairings whose projection is simple.
double simplicity_rate(std::size_t n, std::size_t degree, std::size_t trials, std::uint64_t seed);

// Standard large-n limit exp(-(D^2-1)/4) for bucket size D.
double simplicity_limit(std::size_t degree);
// The same quantity written as exp(d/2 - d^2/4) with d = D - 1; kept for
// side-by-side reporting since its d/2 sign differs from the standard form.
double simplicity_limit_alternate(std::size_t degree);

struct ExposureRound {
  // 1-based: round r exposes the points of S(V', r-1) and reaches S(V', r).
  std::size_t round = 0;
  VertexSet frontier;
  VertexSet reached;
  std::size_t pairs = 0;
  std::size_t bad_pairs = 0;
};

struct ExposureTrace {
  VertexSet start;
  std::vector<ExposureRound> rounds;
  std::size_t total_pairs = 0;
  std::size_t total_bad_pairs = 0;
};

// Breadth-first point exposure from `start`. Within a round, buckets are
// visited in ascending id and points in ascending id. A pair is bad when its
// second point lies in a vertex that is already exposed (a start vertex or a
// vertex reached earlier). Stops after max_rounds or once a frontier is empty.
ExposureTrace exposure_process(const Pairing& p, const VertexSet& start, std::size_t max_rounds);

// [{round, sphere_size, pairs, bad_pairs}, ...] with sphere_size = |S(V', round)|.
nlohmann::json to_json(const ExposureTrace& trace);

}  // namespace copnum
