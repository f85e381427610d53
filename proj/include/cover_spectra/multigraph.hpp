#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cover_spectra {

using Vertex = std::uint32_t;
using HalfEdge = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct EdgeEnds {
  Vertex u;
  Vertex v;
  friend bool operator==(const EdgeEnds&, const EdgeEnds&) = default;
  friend auto operator<=>(const EdgeEnds&, const EdgeEnds&) = default;
};

/// Finite undirected multigraph stored as half-edges.
///
/// Edge e (in insertion order) owns half-edges 2e (u -> v) and 2e+1 (v -> u),
/// so inv(h) == h ^ 1. A loop at v is a pair of half-edges both sourced at v
/// and contributes 2 to deg(v). The adjacency entry A[u][v] counts half-edges
/// from u to v, hence A[v][v] is twice the number of loops at v.
///
/// Immutable after construction.
class MultiGraph {
 public:
  MultiGraph() = default;
  MultiGraph(std::size_t num_vertices, std::span<const EdgeEnds> edges);
  MultiGraph(std::size_t num_vertices, std::initializer_list<EdgeEnds> edges)
      : MultiGraph(num_vertices, std::span<const EdgeEnds>(edges.begin(), edges.size())) {}

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_half_edges() const { return 2 * edges_.size(); }

  Vertex source(HalfEdge h) const { return h & 1U ? edges_[h >> 1].v : edges_[h >> 1].u; }
  Vertex target(HalfEdge h) const { return source(inv(h)); }
  static HalfEdge inv(HalfEdge h) { return h ^ 1U; }
  static EdgeId edge_of(HalfEdge h) { return h >> 1; }

  /// Half-edges sourced at v, ascending by id.
  std::span<const HalfEdge> out(Vertex v) const {
    return {half_edges_.data() + offsets_[v], half_edges_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const { return max_degree_; }

  const std::vector<EdgeEnds>& edges() const { return edges_; }
  bool is_loop(EdgeId e) const { return edges_[e].u == edges_[e].v; }

  /// Number of half-edges from u to v.
  std::size_t multiplicity(Vertex u, Vertex v) const;

  friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
    return a.offsets_.size() == b.offsets_.size() && a.edges_ == b.edges_;
  }

 private:
  std::vector<EdgeEnds> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<HalfEdge> half_edges_;
  std::size_t max_degree_ = 0;
};

// ---- file format --------------------------------------------------------

/// Parses the text format: a header "n m", then m lines "u v". Lines whose
/// first non-blank character is '#' and blank lines are skipped.
MultiGraph load_graph(std::string_view text);
MultiGraph read_graph_file(const std::filesystem::path& path);

/// Writes the header and the edge lines with each line normalized to u <= v
/// and the lines sorted. write_graph(load_graph(write_graph(g))) is
/// byte-identical to write_graph(g).
std::string write_graph(const MultiGraph& g);

// ---- traversal ----------------------------------------------------------

/// Component index per vertex, numbered in order of smallest member.
std::vector<std::uint32_t> component_labels(const MultiGraph& g);
std::size_t num_components(const MultiGraph& g);
bool is_connected(const MultiGraph& g);

/// BFS distances from v; kNone for unreachable vertices.
std::vector<std::uint32_t> distances_from(const MultiGraph& g, Vertex v);

/// The subgraph induced on the vertices of component `label`, with the
/// local-to-global vertex map.
struct Subgraph {
  MultiGraph graph;
  std::vector<Vertex> to_parent;
  std::vector<EdgeId> edge_to_parent;
};
Subgraph induced_subgraph(const MultiGraph& g, std::span<const Vertex> vertices);

enum class CyclomaticClass { kTree = 0, kUnicyclic = 1, kMulticyclic = 2 };
std::string_view to_string(CyclomaticClass c);

/// Tree if m = n-1, unicyclic if m = n, multicyclic if m > n. Requires a
/// connected graph.
CyclomaticClass cyclomatic_class(const MultiGraph& g);

/// Induced subgraph on all vertices within distance r of v. The root is local
/// vertex 0; local vertices follow BFS discovery order.
struct Ball {
  MultiGraph graph;
  std::vector<Vertex> to_parent;
  Vertex root = 0;
  std::vector<EdgeId> edge_to_parent;
};
Ball ball(const MultiGraph& g, Vertex v, std::uint32_t radius);

// ---- 2-core -------------------------------------------------------------

/// 2-core with interior/exterior classification. Interior half-edges are
/// both directions of every core edge; exterior half-edges are the single
/// direction of every non-core edge that points away from the core.
struct CoreDecomposition {
  std::vector<bool> in_core;                // per vertex
  std::vector<std::uint32_t> core_degree;   // degree inside the core, 0 outside
  std::vector<std::uint32_t> depth;         // distance to the core
  std::vector<Vertex> core_vertices;
  std::vector<Vertex> ext_vertices;
  std::vector<HalfEdge> int_half_edges;     // ascending
  std::vector<HalfEdge> ext_half_edges;     // ascending

  bool is_int(HalfEdge h) const;
  bool is_ext(HalfEdge h) const;

  std::vector<std::uint8_t> kind;           // per half-edge: 0 none, 1 int, 2 ext
};

/// Iterated leaf removal. Requires a connected graph with at least one cycle.
CoreDecomposition two_core(const MultiGraph& g);

}  // namespace cover_spectra
