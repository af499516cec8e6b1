#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "copnum/graph.hpp"
#include "copnum/vertex_set.hpp"

namespace copnum {

inline constexpr std::size_t kEnumerationCap = 10;

// Row v of the adjacency matrix as a bitmask over 0..n-1.
using AdjacencyRows = std::span<const std::uint16_t>;

// Visits every labeled simple d-regular graph on n <= 10 vertices exactly
// once. Graphs arrive in lexicographic order of their canonical edge lists.
void for_each_regular(std::size_t n, std::size_t degree,
                      const std::function<void(AdjacencyRows)>& visit);

std::vector<Graph> enumerate_regular(std::size_t n, std::size_t degree);
std::uint64_t count_regular(std::size_t n, std::size_t degree);

Graph graph_from_rows(AdjacencyRows rows);

// counts[i] = number of labeled d-regular graphs with exactly i edges from
// s to t. Throws if the sets overlap or n exceeds the cap.
std::vector<std::uint64_t> switching_class_counts(std::size_t n, std::size_t degree,
                                                  const VertexSet& s, const VertexSet& t);
std::uint64_t count_switching_class(std::size_t n, std::size_t degree, const VertexSet& s,
                                    const VertexSet& t, std::size_t i);

}  // namespace copnum
