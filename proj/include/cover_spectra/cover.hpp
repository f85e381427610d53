#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cover_spectra/bigint.hpp"
#include "cover_spectra/multigraph.hpp"

namespace cover_spectra {

// ---- truncated universal cover ------------------------------------------

struct TreeNode {
  Vertex pi;                  // projection to G
  HalfEdge in_half_edge;      // G half-edge from parent's image, kNone at the root
  std::uint32_t parent;       // kNone at the root
  std::uint32_t first_child;  // children are contiguous (BFS layout)
  std::uint32_t num_children;
  std::uint32_t depth;
};

/// B_R(T, v^) with the cover map. Node 0 is the root; nodes are in BFS order
/// and the children of a node are ordered by the G half-edge they follow.
class TreeBall {
 public:
  std::uint32_t radius() const { return radius_; }
  std::size_t size() const { return nodes_.size(); }
  const TreeNode& node(std::uint32_t id) const { return nodes_[id]; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::span<const TreeNode> children(std::uint32_t id) const {
    const auto& x = nodes_[id];
    return {nodes_.data() + x.first_child, x.num_children};
  }

  /// The ball as a simple graph (a tree) with node ids as vertices.
  MultiGraph as_graph() const;

 private:
  friend TreeBall tree_ball(const MultiGraph&, Vertex, std::uint32_t, std::size_t);
  std::vector<TreeNode> nodes_;
  std::uint32_t radius_ = 0;
};

inline constexpr std::size_t kDefaultBallCap = 20'000'000;

/// Exact number of nodes of B_R(T, v^), computed without building it.
/// Saturates at SIZE_MAX.
std::size_t tree_ball_size(const MultiGraph& g, Vertex v, std::uint32_t radius);

/// Materializes B_R(T, v^). Throws kCapExceeded if the ball has more than
/// `cap` nodes.
TreeBall tree_ball(const MultiGraph& g, Vertex v, std::uint32_t radius, std::size_t cap = kDefaultBallCap);

// ---- purely backtracking walks ------------------------------------------

/// N_k(G, v): closed walks of length k at v that reduce to the empty word,
/// equivalently closed walks of length k at the root of the universal cover.
/// Zero for odd k.
BigInt backtracking_walk_count(const MultiGraph& g, Vertex v, std::size_t k);

/// N_{2j}(G, v) for j = 0..max_half_length.
std::vector<BigInt> backtracking_walk_counts(const MultiGraph& g, Vertex v, std::size_t max_half_length);

/// Closed walks of length k at the root that stay inside the ball.
BigInt closed_walks_at_root(const TreeBall& ball, std::size_t k);

// ---- orbit distribution -------------------------------------------------

struct OrbitClass {
  Vertex representative;         // smallest member
  std::vector<Vertex> members;   // ascending
  Rational probability;          // |members| / n
};

/// Coarsest equitable partition of V(G). Vertices share a class exactly when
/// their rooted universal covers are isomorphic.
struct OrbitDistribution {
  std::vector<OrbitClass> classes;
  std::vector<std::uint32_t> color;  // class index per vertex
  std::size_t rounds = 0;            // refinement rounds that split a class
};

OrbitDistribution orbit_distribution(const MultiGraph& g);

/// Branch types of the universal cover. The subtree hanging below a tree edge
/// depends only on the (class of source, class of target) pair of the G
/// half-edge it projects to, so the cover is described by finitely many
/// branch types with child multiplicities.
struct BranchTypes {
  struct Type {
    std::uint32_t source_class;
    std::uint32_t target_class;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> children;  // (type, multiplicity)
  };
  std::vector<Type> types;
  std::vector<std::uint32_t> type_of;  // per G half-edge
  /// Per vertex class: the branch types at a root of that class.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> root_children;
  OrbitDistribution orbits;
};

BranchTypes branch_types(const MultiGraph& g);

}  // namespace cover_spectra
