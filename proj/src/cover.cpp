#include "cover_spectra/cover.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "cover_spectra/error.hpp"

namespace cover_spectra {

// ---- truncated universal cover ------------------------------------------

MultiGraph TreeBall::as_graph() const {
  std::vector<EdgeEnds> edges;
  edges.reserve(nodes_.size());
  for (std::uint32_t id = 1; id < nodes_.size(); ++id) edges.push_back({nodes_[id].parent, id});
  return MultiGraph(nodes_.size(), edges);
}

std::size_t tree_ball_size(const MultiGraph& g, Vertex v, std::uint32_t radius) {
  require(v < g.num_vertices(), "tree_ball: vertex out of range");
  constexpr double kSaturate = 1.8e19;
  // Nodes at depth d entered through half-edge h.
  std::vector<double> layer(g.num_half_edges(), 0.0);
  for (HalfEdge h : g.out(v)) layer[h] += 1.0;
  double total = 1.0;
  for (std::uint32_t d = 1; d <= radius; ++d) {
    double layer_total = 0.0;
    for (double x : layer) layer_total += x;
    total += layer_total;
    if (total >= kSaturate) return std::numeric_limits<std::size_t>::max();
    if (d == radius || layer_total == 0.0) break;
    std::vector<double> next(g.num_half_edges(), 0.0);
    for (HalfEdge h = 0; h < g.num_half_edges(); ++h) {
      if (layer[h] == 0.0) continue;
      for (HalfEdge c : g.out(g.target(h))) {
        if (c != MultiGraph::inv(h)) next[c] += layer[h];
      }
    }
    layer = std::move(next);
  }
  return static_cast<std::size_t>(total);
}

TreeBall tree_ball(const MultiGraph& g, Vertex v, std::uint32_t radius, std::size_t cap) {
  const std::size_t expected = tree_ball_size(g, v, radius);
  if (expected > cap) {
    fail(ErrorKind::kCapExceeded, "tree ball of radius " + std::to_string(radius) + " would have " +
                                      (expected == std::numeric_limits<std::size_t>::max()
                                           ? std::string("more than 1.8e19")
                                           : std::to_string(expected)) +
                                      " nodes (cap " + std::to_string(cap) + "); use a smaller radius");
  }
  TreeBall ball;
  ball.radius_ = radius;
  ball.nodes_.reserve(expected);
  ball.nodes_.push_back({v, kNone, kNone, 0, 0, 0});
  for (std::uint32_t id = 0; id < ball.nodes_.size(); ++id) {
    const TreeNode x = ball.nodes_[id];
    const auto first = static_cast<std::uint32_t>(ball.nodes_.size());
    std::uint32_t count = 0;
    if (x.depth < radius) {
      for (HalfEdge h : g.out(x.pi)) {
        if (x.in_half_edge != kNone && h == MultiGraph::inv(x.in_half_edge)) continue;
        ball.nodes_.push_back({g.target(h), h, id, 0, 0, x.depth + 1});
        ++count;
      }
    }
    ball.nodes_[id].first_child = first;
    ball.nodes_[id].num_children = count;
  }
  return ball;
}

// ---- purely backtracking walks ------------------------------------------

std::vector<BigInt> backtracking_walk_counts(const MultiGraph& g, Vertex v, std::size_t max_half_length) {
  require(v < g.num_vertices(), "backtracking_walk_count: vertex out of range");
  const std::size_t num_h = g.num_half_edges();
  const std::size_t len = max_half_length + 1;
  // excursion[h][j]: closed walks of length 2j at the far end of h that never
  // cross back over h. A closed walk is a sequence of excursions
  // (down h', excursion below h', back up), which gives
  //   E_h[j] = sum_{i=1..j} X_h[i] * E_h[j-i],  X_h[i] = sum_{h' child of h} E_{h'}[i-1].
  std::vector<std::vector<BigInt>> excursion(num_h, std::vector<BigInt>(len));
  std::vector<std::vector<BigInt>> step(num_h, std::vector<BigInt>(len));
  for (HalfEdge h = 0; h < num_h; ++h) excursion[h][0] = 1;
  for (std::size_t j = 1; j < len; ++j) {
    for (HalfEdge h = 0; h < num_h; ++h) {
      BigInt x = 0;
      for (HalfEdge c : g.out(g.target(h))) {
        if (c != MultiGraph::inv(h)) x += excursion[c][j - 1];
      }
      step[h][j] = std::move(x);
    }
    for (HalfEdge h = 0; h < num_h; ++h) {
      BigInt e = 0;
      for (std::size_t i = 1; i <= j; ++i) e += step[h][i] * excursion[h][j - i];
      excursion[h][j] = std::move(e);
    }
  }
  std::vector<BigInt> root_step(len);
  for (std::size_t i = 1; i < len; ++i) {
    for (HalfEdge h : g.out(v)) root_step[i] += excursion[h][i - 1];
  }
  std::vector<BigInt> counts(len);
  counts[0] = 1;
  for (std::size_t j = 1; j < len; ++j) {
    for (std::size_t i = 1; i <= j; ++i) counts[j] += root_step[i] * counts[j - i];
  }
  return counts;
}

BigInt backtracking_walk_count(const MultiGraph& g, Vertex v, std::size_t k) {
  if (k % 2 == 1) {
    require(v < g.num_vertices(), "backtracking_walk_count: vertex out of range");
    return 0;
  }
  return backtracking_walk_counts(g, v, k / 2).back();
}

BigInt closed_walks_at_root(const TreeBall& ball, std::size_t k) {
  std::vector<BigInt> current(ball.size());
  std::vector<BigInt> next(ball.size());
  current[0] = 1;
  for (std::size_t step = 0; step < k; ++step) {
    for (auto& x : next) x = 0;
    for (std::uint32_t id = 0; id < ball.size(); ++id) {
      if (current[id] == 0) continue;
      const auto& node = ball.node(id);
      if (node.parent != kNone) next[node.parent] += current[id];
      for (std::uint32_t c = node.first_child; c < node.first_child + node.num_children; ++c) next[c] += current[id];
    }
    std::swap(current, next);
  }
  return current[0];
}

// ---- orbit distribution -------------------------------------------------

OrbitDistribution orbit_distribution(const MultiGraph& g) {
  const std::size_t n = g.num_vertices();
  require(n > 0, "orbit_distribution: empty graph");
  OrbitDistribution result;
  result.color.assign(n, 0);
  std::size_t num_colors = 1;
  using Signature = std::pair<std::uint32_t, std::vector<std::uint32_t>>;
  while (true) {
    std::vector<Signature> signature(n);
    for (Vertex v = 0; v < n; ++v) {
      signature[v].first = result.color[v];
      for (HalfEdge h : g.out(v)) signature[v].second.push_back(result.color[g.target(h)]);
      std::sort(signature[v].second.begin(), signature[v].second.end());
    }
    // New colors are ranks of signatures, which keeps the coloring canonical.
    std::map<Signature, std::uint32_t> rank;
    for (const auto& s : signature) rank.emplace(s, 0);
    std::uint32_t next = 0;
    for (auto& [s, r] : rank) r = next++;
    for (Vertex v = 0; v < n; ++v) result.color[v] = rank[signature[v]];
    if (rank.size() == num_colors) break;
    num_colors = rank.size();
    ++result.rounds;
  }
  result.classes.resize(num_colors);
  for (auto& c : result.classes) c.representative = kNone;
  for (Vertex v = 0; v < n; ++v) {
    auto& c = result.classes[result.color[v]];
    if (c.representative == kNone) c.representative = v;
    c.members.push_back(v);
  }
  for (auto& c : result.classes) c.probability = Rational(c.members.size(), n);
  return result;
}

BranchTypes branch_types(const MultiGraph& g) {
  BranchTypes bt;
  bt.orbits = orbit_distribution(g);
  const auto& color = bt.orbits.color;
  const std::size_t num_classes = bt.orbits.classes.size();
  // Half-edges from any vertex of class a to class b (same for every member).
  std::vector<std::vector<std::uint32_t>> mult(num_classes, std::vector<std::uint32_t>(num_classes, 0));
  for (std::uint32_t a = 0; a < num_classes; ++a) {
    for (HalfEdge h : g.out(bt.orbits.classes[a].representative)) ++mult[a][color[g.target(h)]];
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
  for (std::uint32_t a = 0; a < num_classes; ++a) {
    for (std::uint32_t b = 0; b < num_classes; ++b) {
      if (mult[a][b] == 0) continue;
      index[{a, b}] = static_cast<std::uint32_t>(bt.types.size());
      bt.types.push_back({a, b, {}});
    }
  }
  for (auto& t : bt.types) {
    const std::uint32_t b = t.target_class;
    for (std::uint32_t c = 0; c < num_classes; ++c) {
      const std::uint32_t m = mult[b][c] - (c == t.source_class ? 1U : 0U);
      if (m > 0) t.children.emplace_back(index.at({b, c}), m);
    }
  }
  bt.root_children.resize(num_classes);
  for (std::uint32_t a = 0; a < num_classes; ++a) {
    for (std::uint32_t b = 0; b < num_classes; ++b) {
      if (mult[a][b] > 0) bt.root_children[a].emplace_back(index.at({a, b}), mult[a][b]);
    }
  }
  bt.type_of.resize(g.num_half_edges());
  for (HalfEdge h = 0; h < g.num_half_edges(); ++h) {
    bt.type_of[h] = index.at({color[g.source(h)], color[g.target(h)]});
  }
  return bt;
}

}  // namespace cover_spectra
