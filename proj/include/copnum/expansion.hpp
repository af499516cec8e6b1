#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "copnum/graph.hpp"
#include "copnum/vertex_set.hpp"
#include "json.hpp"

namespace copnum {

struct Witness {
  std::string reason;
  std::vector<Vertex> set;
  double ratio = 0.0;
};

struct ExpansionReport {
  std::string check;
  std::map<std::string, double> constants;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t failures = 0;
  // The observed ratio closest to failing: the minimum for lower-bound
  // checks, the maximum for upper-bound checks. Each function documents its
  // ratio.
  double worst_ratio = 0.0;
  // Largest observed ratio, for two-sided and upper-bound checks.
  double max_ratio = 0.0;
  // The first few failures, in sample order.
  std::vector<Witness> witnesses;
  // Precondition notes, skipped cases and other remarks.
  std::vector<std::string> notes;

  double failure_rate() const {
    return samples == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(samples);
  }
  nlohmann::json to_json() const;
};

inline constexpr std::size_t kMaxWitnesses = 10;

// Defaults, fixed by calibration runs on random cubic graphs with
// n in {1000, 4000}.
inline constexpr double kUnionBallC = 0.05;
inline constexpr double kUnionBallTol = 0.35;
inline constexpr double kNbhdC = 0.25;
inline constexpr double kNbhdEps = 0.25;
inline constexpr double kInducedC = 0.25;
// ln^K n is the ball-size window for the excess check. K = 2 keeps the
// radius at 4 or 5 for these n; larger K lets the ball swallow the graph.
inline constexpr double kExcessK = 2.0;
// Flags excess > 2. At eps = 0.5 about 4% of vertices have excess 2 at
// these sizes; excess 3 or more occurs at about 0.4%.
inline constexpr double kExcessEps = 1.0;
inline constexpr double kAccessC1 = 2.0 / 5.0;
inline constexpr double kAccessC2 = 1.0 / 9.0;
inline constexpr double kSphereUnionGamma = 9.0;
// Headroom on the switching-ratio bound. The exact quotients at n=8, d=3,
// |S|=|T|=2 peak at about 0.839, so none is needed there.
inline constexpr double kSwitchingSlack = 0.0;

// Growth base used throughout: one less than the maximum degree, so that a
// (d+1)-regular tree grows by a factor d per level.
std::size_t growth_base(const Graph& g);

// Vertices within distance r of one vertex of a (d+1)-regular tree:
// 1 + sum_{j<r} (d+1) d^j.
double tree_ball_size(std::size_t d, std::size_t r);

// For each set S and radius r: ratio |union of N(v,r)| / min(s * tree_ball,
// n). Fails when the ratio drops below c, and, when s d^r < n / ln n, when
// it drops below 1 - tol. The tree ball is used as the reference so that a
// regular tree scores exactly 1.0.
ExpansionReport check_union_ball_growth(const Graph& g, std::span<const VertexSet> sets,
                                        std::span<const std::size_t> radii, double c, double tol);
// Samples `sample_count` sets of each scheduled size.
ExpansionReport check_union_ball_growth(const Graph& g, std::size_t sample_count,
                                        std::span<const std::size_t> sizes,
                                        std::span<const std::size_t> radii, double c, double tol,
                                        std::uint64_t seed);

struct AccessibilityCert {
  VertexSet u;
  std::size_t t = 0;
  // members[i] owns family[i]; members and q partition u.
  std::vector<Vertex> members;
  std::vector<VertexSet> family;
  VertexSet q;
  std::size_t min_size = 0;
  double threshold = 0.0;
};

struct DisjointFamilyResult {
  AccessibilityCert cert;
  bool success = false;
  double min_ratio = 0.0;
};

// For u in S(v,r), ascending, W(u) takes the still unclaimed vertices of
// S(u,r+1) that lie at distance 2r+1 from v. Success iff every |W(u)| is at
// least (1-tol) d^{r+1}. Throws unless sqrt(n) < d^{r+1} <= sqrt(n) ln n.
DisjointFamilyResult check_disjoint_sphere_family(const Graph& g, Vertex v, std::size_t r,
                                                  double tol);

// Ratio |N[S]| / (s d) with d the degree. Fails below c when s <= c n / d,
// and below 1 - eps when s d < n / ln n. Only the lower side is checked,
// since |N[S]| can reach s(d+1) > (1+eps) s d for small d; the largest
// ratio is reported.
ExpansionReport check_closed_nbhd_bounds(const Graph& g, std::span<const VertexSet> sets, double c,
                                         double eps);
ExpansionReport check_closed_nbhd_bounds(const Graph& g, std::size_t sample_count,
                                         std::span<const std::size_t> sizes, double c, double eps,
                                         std::uint64_t seed);

// Fails when S induces more than s ln n edges; ratio is edges / (s ln n).
// Throws when a size exceeds c n / d.
ExpansionReport check_induced_edges(const Graph& g, std::span<const VertexSet> sets, double c);
ExpansionReport check_induced_edges(const Graph& g, std::size_t sample_count,
                                    std::span<const std::size_t> sizes, double c,
                                    std::uint64_t seed);

struct SphereRegularityOptions {
  double a1 = 1.0 / 9.0 - 0.01;
  // Defaults to 1 + 1/d when unset.
  std::optional<double> a2;
  double delta = 1.0 / 64.0;
  double j = 1.0;
  std::size_t samples_per_k = 50;
};

// Draws V' uniformly from N(v,r) without replacement for each scheduled k
// and checks a1 k d^{r'} <= |S(V',r')| <= a2 k d^{r'}. Throws when d^r or
// d^{r'} reach n^{1/2+delta} or some k d^{r'} exceeds n / ln^J n.
ExpansionReport check_sphere_regularity(const Graph& g, Vertex v, std::size_t r,
                                        std::size_t r_prime, std::span<const std::size_t> ks,
                                        const SphereRegularityOptions& options,
                                        std::uint64_t seed);

// Excess of the ball graph around each vertex for radii 1..r_max; a sample
// (one vertex) fails when some excess exceeds 1 + eps. Throws unless
// (d+1) d^{r_max-1} < ln^K n.
ExpansionReport check_excess(const Graph& g, std::span<const Vertex> vertices, std::size_t r_max,
                             double eps, double k_exponent);
// Largest r with (d+1) d^{r-1} < ln^K n, or 0.
std::size_t excess_radius_limit(const Graph& g, double k_exponent);

// Claims disjoint sets for every member of U one distance level at a time:
// at level L the members take turns, in ascending order, claiming one
// unclaimed vertex of S(w,L). Members of U are never claimed. A repair pass
// then lets each member still short of c1 min(d^t, c2 n / |U|) take vertices
// of N(w,t) from Q-bound members or from members above the floor. Members
// still short go to Q.
AccessibilityCert check_accessibility(const Graph& g, const VertexSet& u, std::size_t t, double c1,
                                      double c2);

struct CertificateCheck {
  bool valid = false;
  std::vector<std::string> problems;
};

// Re-checks a certificate from scratch: members and Q partition U, the
// W-sets are pairwise disjoint, lie within distance t of their owner, and
// meet c1 min(d^t, c2 n / |U|).
CertificateCheck validate_certificate(const Graph& g, const AccessibilityCert& cert, double c1,
                                      double c2);

// Random union of spheres: starting from S(v,r), adds S(a,r') for a drawn
// from S(v,r) in random order while d^{r+r'} < n / (gamma |U|) still holds.
VertexSet sample_sphere_union(const Graph& g, Vertex v, std::size_t r, std::size_t r_prime,
                              double gamma, std::uint64_t seed);

struct SwitchingRatio {
  std::size_t i = 0;
  std::uint64_t count = 0;
  std::uint64_t previous = 0;
  double ratio = 0.0;
  double bound = 0.0;
  double quotient = 0.0;
};

struct SwitchingReport {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t s = 0;
  std::size_t t = 0;
  double slack = 0.0;
  std::vector<std::uint64_t> class_sizes;
  std::vector<SwitchingRatio> ratios;
  // Values of i with an empty previous class.
  std::vector<std::size_t> skipped;
  double max_quotient = 0.0;
  bool passed = false;

  nlohmann::json to_json() const;
};

// Exact class sizes |C_i| of labeled d-regular graphs on n <= 10 vertices
// with i edges between fixed disjoint S and T, and every ratio
// |C_i|/|C_{i-1}| against (sd-i+1) t / (i (u-s)) with u = n-s-t. Passes when
// each quotient is at most 1 + slack.
SwitchingReport check_switching_ratio(std::size_t n, std::size_t d, std::size_t s,
                                      std::size_t t_size, double slack);

}  // namespace copnum
