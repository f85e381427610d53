#include "cover_spectra/local_stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cover_spectra/cover.hpp"
#include "cover_spectra/error.hpp"

namespace cover_spectra {

bool ball_is_tree(const MultiGraph& g, Vertex v, std::uint32_t radius) {
  const Ball b = ball(g, v, radius);
  return b.graph.num_edges() + 1 == b.graph.num_vertices();
}

double tree_fraction(const MultiGraph& g, std::uint32_t radius) {
  require(radius >= 1, "tree_fraction: radius must be at least 1");
  require(g.num_vertices() > 0, "tree_fraction: empty graph");
  std::size_t trees = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) trees += ball_is_tree(g, v, radius);
  return static_cast<double>(trees) / static_cast<double>(g.num_vertices());
}

// ---- cycles --------------------------------------------------------------

std::vector<Cycle> enumerate_cycles(const MultiGraph& g, std::size_t length) {
  require(length >= 1, "cycle length must be at least 1");
  std::map<std::vector<EdgeId>, Cycle> found;
  const std::size_t n = g.num_vertices();
  std::vector<char> on_path(n, 0);
  std::vector<Vertex> path;
  std::vector<EdgeId> path_edges;

  auto record = [&](EdgeId closing) {
    Cycle c;
    c.vertices = path;
    c.edges = path_edges;
    c.edges.push_back(closing);
    std::sort(c.edges.begin(), c.edges.end());
    if (std::adjacent_find(c.edges.begin(), c.edges.end()) != c.edges.end()) return;
    found.try_emplace(c.edges, std::move(c));
  };

  // Cycles are rooted at their smallest vertex s; the path only visits
  // vertices above s.
  auto dfs = [&](auto&& self, Vertex s) -> void {
    const Vertex x = path.back();
    for (HalfEdge h : g.out(x)) {
      const Vertex y = g.target(h);
      const EdgeId e = MultiGraph::edge_of(h);
      if (path.size() == length) {
        if (y == s) record(e);
        continue;
      }
      if (y <= s || on_path[y]) continue;
      on_path[y] = 1;
      path.push_back(y);
      path_edges.push_back(e);
      self(self, s);
      path.pop_back();
      path_edges.pop_back();
      on_path[y] = 0;
    }
  };

  for (Vertex s = 0; s < n; ++s) {
    path = {s};
    path_edges.clear();
    on_path[s] = 1;
    dfs(dfs, s);
    on_path[s] = 0;
  }
  std::vector<Cycle> out;
  out.reserve(found.size());
  for (auto& [key, c] : found) out.push_back(std::move(c));
  return out;
}

CycleStats cycle_stats(const MultiGraph& g, std::size_t length) {
  CycleStats s;
  s.length = length;
  s.per_vertex.assign(g.num_vertices(), 0);
  const auto cycles = enumerate_cycles(g, length);
  s.num_cycles = cycles.size();
  for (const auto& c : cycles) {
    for (Vertex v : c.vertices) ++s.per_vertex[v];
  }
  std::size_t on = 0;
  for (auto x : s.per_vertex) {
    on += x > 0;
    s.max_per_vertex = std::max(s.max_per_vertex, x);
  }
  s.fraction_on_cycle = g.num_vertices() ? static_cast<double>(on) / static_cast<double>(g.num_vertices()) : 0.0;
  return s;
}

std::optional<Bouquet> find_bouquet(const MultiGraph& g, Vertex v, std::uint32_t k, std::size_t length) {
  require(v < g.num_vertices(), "find_bouquet: vertex out of range");
  require(k >= length, "find_bouquet: k must be at least the cycle length");
  const std::uint32_t reach = k - static_cast<std::uint32_t>(length);
  // A cycle within distance k - l has all its vertices within k - l + l/2.
  const Ball b = ball(g, v, k);
  const auto dist = distances_from(b.graph, b.root);
  struct Candidate {
    Cycle cycle;
    std::uint32_t r;
  };
  std::vector<Candidate> near;
  for (auto& c : enumerate_cycles(b.graph, length)) {
    std::uint32_t r = kNone;
    for (Vertex x : c.vertices) r = std::min(r, dist[x]);
    if (r > reach) continue;
    Cycle mapped;
    for (Vertex x : c.vertices) mapped.vertices.push_back(b.to_parent[x]);
    for (EdgeId e : c.edges) mapped.edges.push_back(b.edge_to_parent[e]);
    std::sort(mapped.edges.begin(), mapped.edges.end());
    std::rotate(mapped.vertices.begin(), std::min_element(mapped.vertices.begin(), mapped.vertices.end()),
                mapped.vertices.end());
    near.push_back({std::move(mapped), r});
  }
  std::optional<Bouquet> best;
  for (std::size_t i = 0; i < near.size(); ++i) {
    std::set<Vertex> used(near[i].cycle.vertices.begin(), near[i].cycle.vertices.end());
    for (std::size_t j = i + 1; j < near.size(); ++j) {
      const auto& other = near[j].cycle.vertices;
      if (std::any_of(other.begin(), other.end(), [&](Vertex x) { return used.contains(x); })) continue;
      const auto worst = std::max(near[i].r, near[j].r);
      if (!best || worst < std::max(best->r1, best->r2)) {
        best = Bouquet{near[i].cycle, near[j].cycle, near[i].r, near[j].r};
      }
    }
  }
  return best;
}

MassTransport mass_transport_check(const MultiGraph& g, std::uint32_t radius, std::size_t length) {
  require(g.num_vertices() > 0 && is_connected(g), "mass_transport_check requires a connected graph");
  require(length >= 1, "cycle length must be at least 1");
  const std::size_t n = g.num_vertices();
  const auto cycles = enumerate_cycles(g, length);
  std::vector<char> on_cycle(n, 0);
  for (const auto& c : cycles) {
    for (Vertex x : c.vertices) on_cycle[x] = 1;
  }
  BigInt sent = 0;      // sum over o on a cycle of |B_R(o)|
  BigInt received = 0;  // sum over o of #{w on a cycle, dist(w, o) <= R}
  BigInt near_total = 0;
  bool hypothesis = true;
  for (Vertex o = 0; o < n; ++o) {
    const auto d = distances_from(g, o);
    std::size_t ball_size = 0;
    std::size_t cycle_vertices_near = 0;
    for (Vertex w = 0; w < n; ++w) {
      if (d[w] > radius) continue;
      ++ball_size;
      cycle_vertices_near += on_cycle[w];
    }
    if (on_cycle[o]) sent += ball_size;
    received += cycle_vertices_near;
    hypothesis = hypothesis && ball_size >= radius;
    for (const auto& c : cycles) {
      if (std::any_of(c.vertices.begin(), c.vertices.end(), [&](Vertex x) { return d[x] <= radius; })) ++near_total;
    }
  }
  const auto on = static_cast<std::size_t>(std::count(on_cycle.begin(), on_cycle.end(), 1));
  MassTransport out;
  const Rational nn(static_cast<long long>(n));
  out.lhs = Rational(sent) / nn;
  out.rhs = Rational(received) / nn;
  out.hypothesis = hypothesis;
  out.avg_cycles_near = Rational(near_total) / nn;
  out.bound = Rational(static_cast<long long>(radius), static_cast<long long>(length)) *
              Rational(static_cast<long long>(on), static_cast<long long>(n));
  if (hypothesis) out.inequality = out.avg_cycles_near >= out.bound;
  return out;
}

// ---- canonical ball codes -----------------------------------------------

std::string tree_code(const MultiGraph& tree, Vertex root) {
  const std::size_t n = tree.num_vertices();
  std::vector<Vertex> order{root};
  std::vector<Vertex> parent(n, kNone);
  parent[root] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (HalfEdge h : tree.out(order[i])) {
      const Vertex w = tree.target(h);
      if (parent[w] == kNone) {
        parent[w] = order[i];
        order.push_back(w);
      }
    }
  }
  std::vector<std::vector<std::string>> child_codes(n);
  std::vector<std::string> code(n);
  for (std::size_t i = order.size(); i-- > 0;) {
    const Vertex x = order[i];
    auto& kids = child_codes[x];
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (auto& k : kids) s += k;
    s += ")";
    code[x] = std::move(s);
    if (x != root) child_codes[parent[x]].push_back(std::move(code[x]));
  }
  return "T" + code[root];
}

namespace {

using Matrix = std::vector<std::vector<std::uint32_t>>;

// Refines `color` to the coarsest equitable coloring finer than it, keeping
// the relative order of existing colors.
void refine(const Matrix& adj, std::vector<std::uint32_t>& color) {
  const std::size_t n = adj.size();
  std::size_t classes = std::set<std::uint32_t>(color.begin(), color.end()).size();
  while (true) {
    using Signature = std::pair<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>>;
    std::vector<Signature> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].first = color[v];
      for (std::size_t w = 0; w < n; ++w) {
        if (adj[v][w]) sig[v].second.emplace_back(color[w], adj[v][w]);
      }
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    std::map<Signature, std::uint32_t> rank;
    for (const auto& s : sig) rank.emplace(s, 0);
    std::uint32_t next = 0;
    for (auto& [s, r] : rank) r = next++;
    for (std::size_t v = 0; v < n; ++v) color[v] = rank[sig[v]];
    if (rank.size() == classes) return;
    classes = rank.size();
  }
}

std::string leaf_code(const Matrix& adj, const std::vector<std::uint32_t>& color) {
  const std::size_t n = adj.size();
  std::vector<std::size_t> at(n);
  for (std::size_t v = 0; v < n; ++v) at[color[v]] = v;
  std::string s = "G" + std::to_string(n) + ":";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      s += std::to_string(adj[at[i]][at[j]]);
      s += ',';
    }
  }
  return s;
}

bool twins(const Matrix& adj, std::size_t a, std::size_t b) {
  if (adj[a][a] != adj[b][b] || adj[a][b] != adj[b][a]) return false;
  for (std::size_t x = 0; x < adj.size(); ++x) {
    if (x != a && x != b && adj[a][x] != adj[b][x]) return false;
  }
  return true;
}

void search(const Matrix& adj, std::vector<std::uint32_t> color, std::string& best) {
  refine(adj, color);
  const std::size_t n = adj.size();
  std::vector<std::size_t> size(n, 0);
  for (auto c : color) ++size[c];
  // Target cell: smallest non-singleton, lowest color on ties.
  std::uint32_t target = kNone;
  for (std::uint32_t c = 0; c < n; ++c) {
    if (size[c] > 1 && (target == kNone || size[c] < size[target])) target = c;
  }
  if (target == kNone) {
    auto code = leaf_code(adj, color);
    if (best.empty() || code < best) best = std::move(code);
    return;
  }
  std::vector<std::size_t> tried;
  for (std::size_t v = 0; v < n; ++v) {
    if (color[v] != target) continue;
    if (std::any_of(tried.begin(), tried.end(), [&](std::size_t t) { return twins(adj, t, v); })) continue;
    tried.push_back(v);
    std::vector<std::uint32_t> next(n);
    for (std::size_t w = 0; w < n; ++w) next[w] = 2 * color[w] + 1;
    next[v] = 2 * color[v];
    search(adj, std::move(next), best);
  }
}

}  // namespace

std::string canonical_ball_code(const MultiGraph& g, Vertex v, std::uint32_t radius, std::size_t cap) {
  require(v < g.num_vertices(), "canonical_ball_code: vertex out of range");
  const Ball b = ball(g, v, radius);
  const std::size_t n = b.graph.num_vertices();
  if (n > cap) {
    fail(ErrorKind::kCapExceeded, "ball of radius " + std::to_string(radius) + " at vertex " + std::to_string(v) +
                                      " has " + std::to_string(n) + " vertices (cap " + std::to_string(cap) + ")");
  }
  if (b.graph.num_edges() + 1 == n) return tree_code(b.graph, b.root);
  Matrix adj(n, std::vector<std::uint32_t>(n, 0));
  for (HalfEdge h = 0; h < b.graph.num_half_edges(); ++h) ++adj[b.graph.source(h)][b.graph.target(h)];
  std::vector<std::uint32_t> color(n, 1);
  color[b.root] = 0;
  std::string best;
  search(adj, std::move(color), best);
  return best;
}

Histogram bs_histogram(const MultiGraph& g, std::uint32_t radius, std::size_t cap) {
  Histogram h;
  for (Vertex v = 0; v < g.num_vertices(); ++v) ++h[canonical_ball_code(g, v, radius, cap)];
  return h;
}

Distribution normalize(const Histogram& h) {
  std::uint64_t total = 0;
  for (const auto& [code, count] : h) total += count;
  Distribution d;
  if (total == 0) return d;
  for (const auto& [code, count] : h) d[code] = static_cast<double>(count) / static_cast<double>(total);
  return d;
}

double tv_distance(const Distribution& a, const Distribution& b) {
  double sum = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      sum += std::abs(ia->second);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      sum += std::abs(ib->second);
      ++ib;
    } else {
      sum += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * sum;
}

double tv_distance(const Histogram& a, const Histogram& b) { return tv_distance(normalize(a), normalize(b)); }

Distribution cover_ball_distribution(const MultiGraph& g, std::uint32_t radius) {
  const auto orbits = orbit_distribution(g);
  Distribution d;
  for (const auto& c : orbits.classes) {
    const auto tb = tree_ball(g, c.representative, radius);
    d[tree_code(tb.as_graph(), 0)] += to_double(c.probability);
  }
  return d;
}

std::string histogram_csv(const Histogram& h) {
  std::ostringstream out;
  out << "code,count\n";
  for (const auto& [code, count] : h) out << '"' << code << "\"," << count << '\n';
  return out.str();
}

LocalStatsReport local_stats(const MultiGraph& g, std::uint32_t radius, const std::vector<std::size_t>& lengths) {
  LocalStatsReport r;
  r.radius = radius;
  r.histogram = bs_histogram(g, radius);
  r.tree_fraction = tree_fraction(g, radius);
  for (auto l : lengths) r.cycles.push_back(cycle_stats(g, l));
  return r;
}

}  // namespace cover_spectra
