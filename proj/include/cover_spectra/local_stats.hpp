#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cover_spectra/bigint.hpp"
#include "cover_spectra/multigraph.hpp"

namespace cover_spectra {

/// Fraction of vertices whose radius-r ball is a tree. Requires r >= 1.
double tree_fraction(const MultiGraph& g, std::uint32_t radius);
bool ball_is_tree(const MultiGraph& g, Vertex v, std::uint32_t radius);

/// An l-cycle: l distinct vertices joined cyclically by l distinct edges.
/// A loop is a 1-cycle and two parallel edges form a 2-cycle. `vertices` is
/// in cyclic order starting at the smallest vertex; `edges` is sorted.
struct Cycle {
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Every l-cycle exactly once, ordered by edge set.
std::vector<Cycle> enumerate_cycles(const MultiGraph& g, std::size_t length);

struct CycleStats {
  std::size_t length = 0;
  std::size_t num_cycles = 0;
  double fraction_on_cycle = 0.0;
  std::vector<std::uint64_t> per_vertex;  // cycles through each vertex
  std::uint64_t max_per_vertex = 0;
};

CycleStats cycle_stats(const MultiGraph& g, std::size_t length);

struct Bouquet {
  Cycle first;
  Cycle second;
  std::uint32_t r1 = 0;  // distance from v to the first cycle
  std::uint32_t r2 = 0;
};

/// Two vertex-disjoint l-cycles within distance k - l of v, or nothing.
/// Among candidates, prefers the smallest max(r1, r2). Requires k >= l.
std::optional<Bouquet> find_bouquet(const MultiGraph& g, Vertex v, std::uint32_t k, std::size_t length);

/// Finite mass transport for F(u, w) = 1{dist(u, w) <= R, u on an l-cycle}.
struct MassTransport {
  Rational lhs;  // (1/n) sum_o sum_w F(o, w)
  Rational rhs;  // (1/n) sum_o sum_w F(w, o)
  bool hypothesis = false;  // |B_R(v)| >= R for every v
  Rational avg_cycles_near;  // avg_v N_R(v)
  Rational bound;            // (R / l) * fraction on l-cycles
  std::optional<bool> inequality;  // empty when the hypothesis fails

  bool balanced() const { return lhs == rhs; }
};

MassTransport mass_transport_check(const MultiGraph& g, std::uint32_t radius, std::size_t length);

// ---- neighbourhood histograms -------------------------------------------

inline constexpr std::size_t kDefaultCanonCap = 64;

using Histogram = std::map<std::string, std::uint64_t>;
using Distribution = std::map<std::string, double>;

/// Canonical code of the rooted ball B_r(G, v): equal codes iff the rooted
/// balls are isomorphic. Tree balls get a nested-parenthesis code ("T...");
/// others a minimal adjacency string over canonical orderings ("G...").
/// Throws kCapExceeded if the ball has more than `cap` vertices.
std::string canonical_ball_code(const MultiGraph& g, Vertex v, std::uint32_t radius,
                                std::size_t cap = kDefaultCanonCap);
/// Code for a rooted tree given as a graph rooted at `root`.
std::string tree_code(const MultiGraph& tree, Vertex root);

Histogram bs_histogram(const MultiGraph& g, std::uint32_t radius, std::size_t cap = kDefaultCanonCap);
Distribution normalize(const Histogram& h);
double tv_distance(const Distribution& a, const Distribution& b);
double tv_distance(const Histogram& a, const Histogram& b);

/// Distribution of B_r(T, v^) types when v is uniform in G.
Distribution cover_ball_distribution(const MultiGraph& g, std::uint32_t radius);

/// "code,count" rows with a header line, sorted by code.
std::string histogram_csv(const Histogram& h);

struct LocalStatsReport {
  std::uint32_t radius = 0;
  Histogram histogram;
  double tree_fraction = 0.0;
  std::vector<CycleStats> cycles;  // one per requested length
};

LocalStatsReport local_stats(const MultiGraph& g, std::uint32_t radius, const std::vector<std::size_t>& lengths);

}  // namespace cover_spectra
