// Certificate re-validation. Written against the Graph interface only so it
// shares no traversal or claiming code with the builders in expansion.cpp.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "copnum/expansion.hpp"

namespace copnum {

namespace {

std::vector<bool> within(const Graph& g, Vertex root, std::size_t t) {
  std::vector<bool> seen(g.order(), false);
  std::vector<Vertex> level = {root};
  seen[root] = true;
  for (std::size_t step = 0; step < t && !level.empty(); ++step) {
    std::vector<Vertex> next;
    for (Vertex x : level) {
      for (Vertex y : g.neighbors(x)) {
        if (!seen[y]) {
          seen[y] = true;
          next.push_back(y);
        }
      }
    }
    level.swap(next);
  }
  return seen;
}

}  // namespace

CertificateCheck validate_certificate(const Graph& g, const AccessibilityCert& cert, double c1,
                                      double c2) {
  CertificateCheck out;
  auto problem = [&](std::string what) { out.problems.push_back(std::move(what)); };
  const std::size_t n = g.order();
  if (cert.u.universe() != n || cert.q.universe() != n) {
    problem("set universe does not match the graph");
    return out;
  }
  if (cert.members.size() != cert.family.size()) problem("members and family differ in length");

  std::vector<int> role(n, 0);
  for (Vertex m : cert.members) {
    if (m >= n || !cert.u.contains(m)) {
      problem("member " + std::to_string(m) + " not in U");
    } else if (role[m]++ != 0) {
      problem("member " + std::to_string(m) + " listed twice");
    }
  }
  for (Vertex q = 0; q < n; ++q) {
    if (!cert.q.contains(q)) continue;
    if (!cert.u.contains(q)) problem("Q member " + std::to_string(q) + " not in U");
    if (role[q]++ != 0) problem("vertex " + std::to_string(q) + " both in Q and a member");
  }
  for (Vertex w = 0; w < n; ++w) {
    if (cert.u.contains(w) && role[w] == 0) problem("vertex " + std::to_string(w) + " unaccounted");
  }

  std::size_t top = 0;
  for (Vertex v = 0; v < n; ++v) top = std::max(top, g.degree(v));
  const double d = top == 0 ? 0.0 : static_cast<double>(top - 1);
  const double floor_size =
      c1 * std::min(std::pow(d, static_cast<double>(cert.t)),
                    c2 * static_cast<double>(n) / static_cast<double>(std::max<std::size_t>(cert.u.size(), 1)));

  std::vector<int> owner(n, -1);
  const std::size_t pairs = std::min(cert.members.size(), cert.family.size());
  for (std::size_t i = 0; i < pairs; ++i) {
    const Vertex w = cert.members[i];
    const VertexSet& set = cert.family[i];
    if (set.universe() != n) {
      problem("W set universe mismatch");
      continue;
    }
    if (static_cast<double>(set.size()) < floor_size) {
      problem("W(" + std::to_string(w) + ") has " + std::to_string(set.size()) +
              " vertices, below the floor");
    }
    const std::vector<bool> reach = w < n ? within(g, w, cert.t) : std::vector<bool>(n, false);
    for (Vertex x = 0; x < n; ++x) {
      if (!set.contains(x)) continue;
      if (!reach[x]) problem("W(" + std::to_string(w) + ") leaves N(w,t) at " + std::to_string(x));
      if (owner[x] >= 0) {
        problem("vertex " + std::to_string(x) + " in two W sets");
      } else {
        owner[x] = static_cast<int>(i);
      }
    }
  }
  out.valid = out.problems.empty();
  return out;
}

}  // namespace copnum
