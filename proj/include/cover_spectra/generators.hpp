#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cover_spectra/multigraph.hpp"

namespace cover_spectra {

/// All randomized constructions draw from std::mt19937_64 seeded with the
/// given seed; bounded draws use rejection sampling so output depends only on
/// the seed, not on the standard library.
using Rng = std::mt19937_64;
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);
/// Fisher-Yates from the last position down.
std::vector<std::uint32_t> random_permutation(std::size_t n, Rng& rng);

MultiGraph cycle_graph(std::size_t n);  // n = 1: a loop; n = 2: a double edge
MultiGraph path_graph(std::size_t n);   // n vertices
MultiGraph complete_graph(std::size_t n);
MultiGraph star_graph(std::size_t leaves);  // center 0
MultiGraph bowtie_graph();                  // center 0, triangles {0,1,2} and {0,3,4}
/// Two vertices (0 and 1) joined by internally disjoint paths of a, b, c edges.
MultiGraph theta_graph(std::size_t a, std::size_t b, std::size_t c);
/// Connected simple (a, b)-biregular bipartite graph on k (a + b) vertices:
/// the cyclic k-lift of K_{b,a} with voltage x * y mod k on edge (x, y).
/// Left vertices (degree a) come first.
MultiGraph biregular_graph(std::size_t a, std::size_t b, std::size_t k);
/// Cycles of lengths p and q sharing vertex 0; p + q - 1 vertices.
MultiGraph two_cycles_glued(std::size_t p, std::size_t q);

struct RandomRegular {
  MultiGraph graph;
  bool simple = false;
  bool connected = false;
  std::size_t attempts = 0;
};

inline constexpr std::size_t kRandomRegularAttempts = 1000;

/// Configuration model: a uniform perfect matching of the n d half-edge
/// stubs, redrawn until the result is simple and connected. After
/// kRandomRegularAttempts failures the last draw is returned with its flags.
RandomRegular random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

struct Generated {
  MultiGraph graph;
  bool simple = true;
  bool connected = true;
};

/// Families by name: cycle(n), path(n), complete(n), star(k), bowtie,
/// theta(a,b,c), biregular(a,b,k), random_regular(n,d,seed),
/// two_cycles_glued(p,q). Missing or invalid parameters throw kPrecondition.
Generated make(std::string_view family, const std::map<std::string, std::uint64_t>& params);
std::vector<std::string> family_names();

// ---- lifts -------------------------------------------------------------

/// An n-lift: vertex (u, i) has index u * degree + i, and edge e = {u, v}
/// lifts to {(u, i), (v, sigma_e(i))}. A loop at u lifts to the edges of the
/// functional graph of sigma_e inside the fiber of u.
struct LiftSpec {
  MultiGraph base;
  std::size_t degree = 1;
  std::vector<std::vector<std::uint32_t>> permutations;  // one per base edge
  std::uint64_t seed = 0;
};

LiftSpec random_lift_spec(const MultiGraph& base, std::size_t n, std::uint64_t seed);
MultiGraph build_lift(const LiftSpec& spec);

struct Lift {
  MultiGraph graph;
  std::vector<Vertex> projection;  // lift vertex -> base vertex
  std::size_t components = 0;
};

Lift random_lift(const MultiGraph& base, std::size_t n, std::uint64_t seed);

/// The connected component of `lift` containing lift vertex `root`. It is a
/// connected cover of the base, with the projection restricted to it.
Lift lift_component(const Lift& lift, Vertex root = 0);

// ---- exhaustive corpus ---------------------------------------------------

/// Canonical form under vertex relabeling: the lexicographically smallest
/// sorted edge list over all n! relabelings. Practical for n <= 7.
std::vector<EdgeEnds> canonical_edges(const MultiGraph& g);

/// Every connected multigraph (loops allowed) with 1..max_vertices vertices
/// and 1..max_edges edges, one per isomorphism class, in canonical form,
/// ordered by (n, m, edge list).
std::vector<MultiGraph> small_multigraph_corpus(std::size_t max_vertices = 5, std::size_t max_edges = 7);

}  // namespace cover_spectra
