#include "copnum/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "copnum/enumerate.hpp"
#include "copnum/error.hpp"
#include "copnum/neighborhood.hpp"
#include "copnum/parallel.hpp"
#include "copnum/random.hpp"

namespace copnum {

namespace {

struct SampleOutcome {
  double ratio = 0.0;
  double high = 0.0;
  bool failed = false;
  Witness witness;
};

// Merges per-sample outcomes in index order. `lower` picks whether the
// worst ratio is the minimum (lower-bound checks) or the maximum.
void merge(ExpansionReport& report, const std::vector<SampleOutcome>& outcomes, bool lower) {
  report.samples = outcomes.size();
  report.worst_ratio = lower ? std::numeric_limits<double>::infinity() : 0.0;
  report.max_ratio = 0.0;
  for (const SampleOutcome& o : outcomes) {
    report.worst_ratio = lower ? std::min(report.worst_ratio, o.ratio)
                               : std::max(report.worst_ratio, o.ratio);
    report.max_ratio = std::max(report.max_ratio, o.high);
    if (o.failed) {
      ++report.failures;
      if (report.witnesses.size() < kMaxWitnesses) report.witnesses.push_back(o.witness);
    }
  }
  if (outcomes.empty()) report.worst_ratio = 0.0;
}

VertexSet random_set(std::size_t n, std::size_t size, std::uint64_t seed) {
  Rng rng(seed);
  const auto picks = sample_without_replacement(static_cast<std::uint32_t>(n),
                                                static_cast<std::uint32_t>(size), rng);
  return VertexSet(n, std::span<const Vertex>(picks));
}

std::vector<VertexSet> sample_sets(std::size_t n, std::size_t sample_count,
                                   std::span<const std::size_t> sizes, std::uint64_t seed) {
  if (sizes.empty()) throw Error("invalid schedule: no set sizes");
  std::vector<VertexSet> sets;
  sets.reserve(sample_count * sizes.size());
  for (std::size_t s : sizes) {
    if (s == 0 || s > n) throw Error("invalid schedule: set size " + std::to_string(s));
    for (std::size_t i = 0; i < sample_count; ++i) {
      sets.push_back(random_set(n, s, derive_seed(seed, sets.size())));
    }
  }
  return sets;
}

double log_n(const Graph& g) { return std::log(static_cast<double>(g.order())); }

double power(double base, std::size_t e) { return std::pow(base, static_cast<double>(e)); }

}  // namespace

nlohmann::json ExpansionReport::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["constants"] = constants;
  j["samples"] = samples;
  j["failures"] = failures;
  j["worst_ratio"] = worst_ratio;
  j["max_ratio"] = max_ratio;
  j["seed"] = seed;
  j["witnesses"] = nlohmann::json::array();
  for (const Witness& w : witnesses) {
    j["witnesses"].push_back({{"reason", w.reason}, {"set", w.set}, {"ratio", w.ratio}});
  }
  j["notes"] = notes;
  return j;
}

std::size_t growth_base(const Graph& g) {
  const std::size_t top = g.max_degree();
  return top == 0 ? 0 : top - 1;
}

double tree_ball_size(std::size_t d, std::size_t r) {
  double total = 1.0;
  for (std::size_t j = 0; j < r; ++j) total += static_cast<double>(d + 1) * power(static_cast<double>(d), j);
  return total;
}

ExpansionReport check_union_ball_growth(const Graph& g, std::span<const VertexSet> sets,
                                        std::span<const std::size_t> radii, double c, double tol) {
  if (sets.empty() || radii.empty()) throw Error("invalid schedule: empty");
  for (std::size_t r : radii) {
    if (r == 0) throw Error("invalid schedule: radius must be at least 1");
  }
  const std::size_t d = growth_base(g);
  const double n = static_cast<double>(g.order());
  ExpansionReport report;
  report.check = "union_ball_growth";
  report.constants = {{"c", c}, {"tol", tol}, {"d", static_cast<double>(d)}};
  std::vector<SampleOutcome> outcomes(sets.size() * radii.size());
  parallel_for(outcomes.size(), [&](std::size_t idx) {
    const VertexSet& s = sets[idx / radii.size()];
    const std::size_t r = radii[idx % radii.size()];
    const double size = static_cast<double>(s.size());
    const double reference = std::min(size * tree_ball_size(d, r), n);
    const double reached = static_cast<double>(ball(g, s, r).size());
    SampleOutcome& o = outcomes[idx];
    o.ratio = reached / reference;
    o.high = o.ratio;
    std::string reason;
    if (o.ratio < c) reason = "below c min(s d^r, n) at r=" + std::to_string(r);
    if (reason.empty() && size * power(static_cast<double>(d), r) < n / std::log(n) &&
        std::abs(o.ratio - 1.0) > tol) {
      reason = "outside 1 +- tol at r=" + std::to_string(r);
    }
    if (!reason.empty()) {
      o.failed = true;
      o.witness = {reason, s.to_vector(), o.ratio};
    }
  });
  merge(report, outcomes, true);
  return report;
}

ExpansionReport check_union_ball_growth(const Graph& g, std::size_t sample_count,
                                        std::span<const std::size_t> sizes,
                                        std::span<const std::size_t> radii, double c, double tol,
                                        std::uint64_t seed) {
  if (sample_count == 0) throw Error("invalid schedule: no samples");
  const auto sets = sample_sets(g.order(), sample_count, sizes, seed);
  ExpansionReport report = check_union_ball_growth(g, sets, radii, c, tol);
  report.seed = seed;
  return report;
}

DisjointFamilyResult check_disjoint_sphere_family(const Graph& g, Vertex v, std::size_t r,
                                                  double tol) {
  const std::size_t d = growth_base(g);
  const double n = static_cast<double>(g.order());
  const double target = power(static_cast<double>(d), r + 1);
  if (!(std::sqrt(n) < target && target <= std::sqrt(n) * std::log(n))) {
    throw Error("radius window violated: need sqrt(n) < d^(r+1) <= sqrt(n) ln n, got d^(r+1)=" +
                std::to_string(target));
  }
  const VertexSet source(g.order(), {v});
  const VertexSet outer = sphere(g, source, 2 * r + 1);
  DisjointFamilyResult result;
  AccessibilityCert& cert = result.cert;
  cert.u = sphere(g, source, r);
  cert.t = r + 1;
  cert.q = VertexSet(g.order());
  cert.threshold = (1.0 - tol) * target;
  VertexSet claimed(g.order());
  cert.u.for_each([&](Vertex u) {
    VertexSet w = (sphere(g, VertexSet(g.order(), {u}), r + 1) & outer) - claimed;
    claimed = claimed | w;
    cert.members.push_back(u);
    cert.family.push_back(std::move(w));
  });
  cert.min_size = std::numeric_limits<std::size_t>::max();
  for (const VertexSet& w : cert.family) cert.min_size = std::min(cert.min_size, w.size());
  if (cert.family.empty()) cert.min_size = 0;
  result.min_ratio = static_cast<double>(cert.min_size) / target;
  result.success = !cert.family.empty() && static_cast<double>(cert.min_size) >= cert.threshold;
  return result;
}

ExpansionReport check_closed_nbhd_bounds(const Graph& g, std::span<const VertexSet> sets, double c,
                                         double eps) {
  if (!g.is_regular() || g.max_degree() == 0) throw Error("graph must be regular");
  const double d = static_cast<double>(g.max_degree());
  const double n = static_cast<double>(g.order());
  ExpansionReport report;
  report.check = "closed_nbhd_bounds";
  report.constants = {{"c", c}, {"eps", eps}, {"d", d}};
  std::vector<SampleOutcome> outcomes(sets.size());
  parallel_for(sets.size(), [&](std::size_t idx) {
    const VertexSet& s = sets[idx];
    const double size = static_cast<double>(s.size());
    SampleOutcome& o = outcomes[idx];
    o.ratio = static_cast<double>(closed_neighborhood(g, s).size()) / (size * d);
    o.high = o.ratio;
    std::string reason;
    if (size <= c * n / d && o.ratio < c) reason = "|N[S]| < c s d";
    if (reason.empty() && size * d < n / std::log(n) && o.ratio < 1.0 - eps) {
      reason = "|N[S]| < (1-eps) s d";
    }
    if (!reason.empty()) {
      o.failed = true;
      o.witness = {reason, s.to_vector(), o.ratio};
    }
  });
  merge(report, outcomes, true);
  return report;
}

ExpansionReport check_closed_nbhd_bounds(const Graph& g, std::size_t sample_count,
                                         std::span<const std::size_t> sizes, double c, double eps,
                                         std::uint64_t seed) {
  const auto sets = sample_sets(g.order(), sample_count, sizes, seed);
  ExpansionReport report = check_closed_nbhd_bounds(g, sets, c, eps);
  report.seed = seed;
  return report;
}

ExpansionReport check_induced_edges(const Graph& g, std::span<const VertexSet> sets, double c) {
  const double d = static_cast<double>(std::max<std::size_t>(g.max_degree(), 1));
  const double n = static_cast<double>(g.order());
  for (const VertexSet& s : sets) {
    if (static_cast<double>(s.size()) > c * n / d) {
      throw Error("set size " + std::to_string(s.size()) + " exceeds c n / d");
    }
  }
  ExpansionReport report;
  report.check = "induced_edges";
  report.constants = {{"c", c}};
  std::vector<SampleOutcome> outcomes(sets.size());
  parallel_for(sets.size(), [&](std::size_t idx) {
    const VertexSet& s = sets[idx];
    SampleOutcome& o = outcomes[idx];
    const double limit = static_cast<double>(s.size()) * log_n(g);
    o.ratio = static_cast<double>(edges_within(g, s)) / limit;
    o.high = o.ratio;
    if (o.ratio > 1.0) {
      o.failed = true;
      o.witness = {"more than s ln n induced edges", s.to_vector(), o.ratio};
    }
  });
  merge(report, outcomes, false);
  return report;
}

ExpansionReport check_induced_edges(const Graph& g, std::size_t sample_count,
                                    std::span<const std::size_t> sizes, double c,
                                    std::uint64_t seed) {
  const auto sets = sample_sets(g.order(), sample_count, sizes, seed);
  ExpansionReport report = check_induced_edges(g, sets, c);
  report.seed = seed;
  return report;
}

ExpansionReport check_sphere_regularity(const Graph& g, Vertex v, std::size_t r,
                                        std::size_t r_prime, std::span<const std::size_t> ks,
                                        const SphereRegularityOptions& options,
                                        std::uint64_t seed) {
  if (ks.empty()) throw Error("invalid schedule: no k values");
  if (r == 0 || r_prime == 0) throw Error("radii must be at least 1");
  const std::size_t d = growth_base(g);
  const double n = static_cast<double>(g.order());
  const double cap = std::pow(n, 0.5 + options.delta);
  if (power(static_cast<double>(d), r) >= cap) {
    throw Error("precondition failed: d^r >= n^(1/2+delta)");
  }
  if (power(static_cast<double>(d), r_prime) >= cap) {
    throw Error("precondition failed: d^r' >= n^(1/2+delta)");
  }
  const VertexSet region = ball(g, VertexSet(g.order(), {v}), r);
  const std::vector<Vertex> pool = region.to_vector();
  const double unit = power(static_cast<double>(d), r_prime);
  for (std::size_t k : ks) {
    if (k == 0 || static_cast<double>(k) * unit > n / std::pow(std::log(n), options.j)) {
      throw Error("precondition failed: k d^r' > n / ln^J n for k=" + std::to_string(k));
    }
    if (k > pool.size()) throw Error("precondition failed: k exceeds |N(v,r)|");
  }
  const double a2 = options.a2.value_or(1.0 + 1.0 / static_cast<double>(d));
  ExpansionReport report;
  report.check = "sphere_regularity";
  report.seed = seed;
  report.constants = {{"a1", options.a1}, {"a2", a2},      {"delta", options.delta},
                      {"J", options.j},   {"r", static_cast<double>(r)},
                      {"r_prime", static_cast<double>(r_prime)}, {"v", static_cast<double>(v)}};
  const std::size_t per = options.samples_per_k;
  std::vector<SampleOutcome> outcomes(ks.size() * per);
  parallel_for(outcomes.size(), [&](std::size_t idx) {
    const std::size_t k = ks[idx / per];
    Rng rng(derive_seed(seed, idx));
    const auto picks = sample_without_replacement(static_cast<std::uint32_t>(pool.size()),
                                                  static_cast<std::uint32_t>(k), rng);
    VertexSet chosen(g.order());
    for (auto p : picks) chosen.insert(pool[p]);
    SampleOutcome& o = outcomes[idx];
    o.ratio = static_cast<double>(sphere(g, chosen, r_prime).size()) /
              (static_cast<double>(k) * unit);
    o.high = o.ratio;
    std::string reason;
    if (o.ratio < options.a1) reason = "|S(V',r')| < a1 k d^r'";
    if (o.ratio > a2) reason = "|S(V',r')| > a2 k d^r'";
    if (!reason.empty()) {
      o.failed = true;
      o.witness = {reason, chosen.to_vector(), o.ratio};
    }
  });
  merge(report, outcomes, true);
  return report;
}

std::size_t excess_radius_limit(const Graph& g, double k_exponent) {
  const std::size_t d = growth_base(g);
  const double limit = std::pow(log_n(g), k_exponent);
  std::size_t r = 0;
  while (static_cast<double>(d + 1) * power(static_cast<double>(d), r) < limit) {
    ++r;
    if (d <= 1 && r > g.order()) break;
  }
  return r;
}

ExpansionReport check_excess(const Graph& g, std::span<const Vertex> vertices, std::size_t r_max,
                             double eps, double k_exponent) {
  if (r_max == 0) throw Error("r_max must be at least 1");
  if (r_max > excess_radius_limit(g, k_exponent)) {
    throw Error("radius window violated: (d+1) d^(r_max-1) >= ln^K n");
  }
  ExpansionReport report;
  report.check = "excess";
  report.constants = {{"eps", eps}, {"K", k_exponent}, {"r_max", static_cast<double>(r_max)}};
  std::vector<SampleOutcome> outcomes(vertices.size());
  const std::size_t chunk = 64;
  const std::size_t chunks = (vertices.size() + chunk - 1) / chunk;
  parallel_for(chunks, [&](std::size_t c) {
    // Local BFS with a reusable distance array; only touched entries reset.
    std::vector<int> dist(g.order(), -1);
    std::vector<Vertex> order;
    for (std::size_t idx = c * chunk; idx < std::min(vertices.size(), (c + 1) * chunk); ++idx) {
      const Vertex v = vertices[idx];
      order.assign(1, v);
      dist[v] = 0;
      for (std::size_t head = 0; head < order.size(); ++head) {
        const Vertex u = order[head];
        if (static_cast<std::size_t>(dist[u]) == r_max) continue;
        for (Vertex w : g.neighbors(u)) {
          if (dist[w] < 0) {
            dist[w] = dist[u] + 1;
            order.push_back(w);
          }
        }
      }
      // Ball of radius r: vertices at distance <= r, edges touching
      // distance <= r-1. Connected, so excess = E - V + 1.
      std::vector<std::size_t> vertices_at(r_max + 1, 0);
      std::vector<std::size_t> edges_from(r_max + 1, 0);
      for (Vertex u : order) {
        const auto du = static_cast<std::size_t>(dist[u]);
        ++vertices_at[du];
        for (Vertex w : g.neighbors(u)) {
          // Charge each edge to its endpoint of smaller distance, ties to
          // the smaller id, so the edge first appears at radius min + 1.
          if (dist[w] < 0) {
            ++edges_from[du];
          } else {
            const auto dw = static_cast<std::size_t>(dist[w]);
            if (du < dw || (du == dw && u < w)) ++edges_from[du];
          }
        }
      }
      std::size_t worst = 0;
      std::size_t worst_r = 1;
      std::size_t v_count = vertices_at[0];
      std::size_t e_count = 0;
      for (std::size_t r = 1; r <= r_max; ++r) {
        v_count += vertices_at[r];
        e_count += edges_from[r - 1];
        const std::size_t excess = e_count + 1 - v_count;
        if (excess > worst) {
          worst = excess;
          worst_r = r;
        }
      }
      SampleOutcome& o = outcomes[idx];
      o.ratio = static_cast<double>(worst);
      o.high = o.ratio;
      if (static_cast<double>(worst) > 1.0 + eps) {
        o.failed = true;
        o.witness = {"excess " + std::to_string(worst) + " at r=" + std::to_string(worst_r), {v},
                     o.ratio};
      }
      for (Vertex u : order) dist[u] = -1;
    }
  });
  merge(report, outcomes, false);
  return report;
}

AccessibilityCert check_accessibility(const Graph& g, const VertexSet& u, std::size_t t, double c1,
                                      double c2) {
  if (t < 1) throw Error("t must be at least 1");
  if (u.empty()) throw Error("U must be nonempty");
  if (u.universe() != g.order()) throw Error("vertex set universe does not match graph");
  const std::size_t n = g.order();
  const std::size_t d = growth_base(g);
  AccessibilityCert cert;
  cert.u = u;
  cert.t = t;
  cert.q = VertexSet(n);
  cert.threshold = c1 * std::min(power(static_cast<double>(d), t),
                                 c2 * static_cast<double>(n) / static_cast<double>(u.size()));

  const std::vector<Vertex> roots = u.to_vector();
  const std::size_t trees = roots.size();
  constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> owner(n, kFree);
  for (std::size_t i = 0; i < trees; ++i) owner[roots[i]] = static_cast<std::uint32_t>(i);
  // layers[i][L-1] = S(root_i, L). A tree reaches a vertex at its distance
  // from the root, whoever owns the vertices on the way.
  std::vector<std::vector<std::vector<Vertex>>> layers(trees);
  {
    std::vector<int> dist(n, -1);
    for (std::size_t i = 0; i < trees; ++i) {
      std::vector<Vertex> seen = {roots[i]};
      dist[roots[i]] = 0;
      std::vector<Vertex> level = {roots[i]};
      for (std::size_t l = 1; l <= t && !level.empty(); ++l) {
        std::vector<Vertex> next;
        for (Vertex x : level) {
          for (Vertex y : g.neighbors(x)) {
            if (dist[y] < 0) {
              dist[y] = static_cast<int>(l);
              next.push_back(y);
              seen.push_back(y);
            }
          }
        }
        layers[i].push_back(next);
        level = std::move(next);
      }
      for (Vertex x : seen) dist[x] = -1;
    }
  }
  std::vector<std::vector<Vertex>> claimed(trees);
  for (std::size_t level = 0; level < t; ++level) {
    std::vector<std::size_t> cursor(trees, 0);
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < trees; ++i) {
        if (level >= layers[i].size()) continue;
        const auto& list = layers[i][level];
        while (cursor[i] < list.size() && owner[list[cursor[i]]] != kFree) ++cursor[i];
        if (cursor[i] == list.size()) continue;
        const Vertex w = list[cursor[i]++];
        owner[w] = static_cast<std::uint32_t>(i);
        claimed[i].push_back(w);
        progress = true;
      }
    }
  }

  // Repair pass: a member still short of the threshold takes vertices of its
  // own N(w,t), nearest first, that are free or held by a member with
  // vertices to spare.
  const auto need = static_cast<std::size_t>(std::ceil(cert.threshold));
  for (std::size_t i = 0; i < trees; ++i) {
    for (std::size_t level = 0; level < layers[i].size() && claimed[i].size() < need; ++level) {
      for (Vertex x : layers[i][level]) {
        if (claimed[i].size() >= need) break;
        const std::uint32_t j = owner[x];
        if (j == i) continue;
        if (j != kFree) {
          if (u.contains(x) || claimed[j].size() <= need) continue;
          auto& theirs = claimed[j];
          theirs.erase(std::find(theirs.begin(), theirs.end(), x));
        }
        owner[x] = static_cast<std::uint32_t>(i);
        claimed[i].push_back(x);
      }
    }
  }

  cert.min_size = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < trees; ++i) {
    if (static_cast<double>(claimed[i].size()) < cert.threshold) {
      cert.q.insert(roots[i]);
      continue;
    }
    cert.members.push_back(roots[i]);
    cert.family.emplace_back(n, std::span<const Vertex>(claimed[i]));
    cert.min_size = std::min(cert.min_size, claimed[i].size());
  }
  if (cert.members.empty()) cert.min_size = 0;
  return cert;
}

VertexSet sample_sphere_union(const Graph& g, Vertex v, std::size_t r, std::size_t r_prime,
                              double gamma, std::uint64_t seed) {
  const std::size_t d = growth_base(g);
  const double n = static_cast<double>(g.order());
  const double reach = power(static_cast<double>(d), r + r_prime);
  std::vector<Vertex> a = sphere(g, VertexSet(g.order(), {v}), r).to_vector();
  Rng rng(seed);
  std::shuffle(a.begin(), a.end(), rng);
  VertexSet u(g.order());
  for (Vertex x : a) {
    const VertexSet grown = u | sphere(g, VertexSet(g.order(), {x}), r_prime);
    if (!(reach < n / (gamma * static_cast<double>(grown.size())))) break;
    u = grown;
  }
  return u;
}

nlohmann::json SwitchingReport::to_json() const {
  nlohmann::json j;
  j["check"] = "switching_ratio";
  j["n"] = n;
  j["d"] = d;
  j["s"] = s;
  j["t"] = t;
  j["slack"] = slack;
  j["class_sizes"] = class_sizes;
  j["ratios"] = nlohmann::json::array();
  for (const auto& r : ratios) {
    j["ratios"].push_back({{"i", r.i},
                           {"count", r.count},
                           {"previous", r.previous},
                           {"ratio", r.ratio},
                           {"bound", r.bound},
                           {"quotient", r.quotient}});
  }
  j["skipped"] = skipped;
  j["max_quotient"] = max_quotient;
  j["passed"] = passed;
  return j;
}

SwitchingReport check_switching_ratio(std::size_t n, std::size_t d, std::size_t s,
                                      std::size_t t_size, double slack) {
  if (n > kEnumerationCap) {
    throw Error("enumeration is capped at n <= " + std::to_string(kEnumerationCap));
  }
  if (s == 0 || t_size == 0 || s + t_size > n) throw Error("invalid set sizes");
  const std::size_t u = n - s - t_size;
  if (u <= s) throw Error("bound undefined: need u - s > 0");
  std::vector<Vertex> s_members(s);
  std::vector<Vertex> t_members(t_size);
  std::iota(s_members.begin(), s_members.end(), Vertex{0});
  std::iota(t_members.begin(), t_members.end(), static_cast<Vertex>(s));
  SwitchingReport report;
  report.n = n;
  report.d = d;
  report.s = s;
  report.t = t_size;
  report.slack = slack;
  report.class_sizes = switching_class_counts(n, d, VertexSet(n, std::span<const Vertex>(s_members)),
                                              VertexSet(n, std::span<const Vertex>(t_members)));
  report.passed = true;
  const double sd = static_cast<double>(s * d);
  for (std::size_t i = 1; i < report.class_sizes.size(); ++i) {
    const std::uint64_t previous = report.class_sizes[i - 1];
    if (previous == 0) {
      report.skipped.push_back(i);
      continue;
    }
    SwitchingRatio r;
    r.i = i;
    r.count = report.class_sizes[i];
    r.previous = previous;
    r.ratio = static_cast<double>(r.count) / static_cast<double>(previous);
    const double di = static_cast<double>(i);
    r.bound = (sd - di + 1) * static_cast<double>(t_size) / (di * static_cast<double>(u - s));
    r.quotient = r.ratio / r.bound;
    report.max_quotient = std::max(report.max_quotient, r.quotient);
    if (r.quotient > 1.0 + slack) report.passed = false;
    report.ratios.push_back(r);
  }
  return report;
}

}  // namespace copnum
