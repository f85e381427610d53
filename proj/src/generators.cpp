#include "cover_spectra/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cover_spectra/error.hpp"

namespace cover_spectra {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  require(bound > 0, "uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

std::vector<std::uint32_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0U);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[uniform_below(rng, i)]);
  return p;
}

MultiGraph cycle_graph(std::size_t n) {
  require(n >= 1, "cycle: n must be at least 1");
  std::vector<EdgeEnds> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
  return MultiGraph(n, edges);
}

MultiGraph path_graph(std::size_t n) {
  require(n >= 1, "path: n must be at least 1");
  std::vector<EdgeEnds> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  return MultiGraph(n, edges);
}

MultiGraph complete_graph(std::size_t n) {
  require(n >= 1, "complete: n must be at least 1");
  std::vector<EdgeEnds> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return MultiGraph(n, edges);
}

MultiGraph star_graph(std::size_t leaves) {
  std::vector<EdgeEnds> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return MultiGraph(leaves + 1, edges);
}

MultiGraph bowtie_graph() { return MultiGraph(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}}); }

MultiGraph theta_graph(std::size_t a, std::size_t b, std::size_t c) {
  require(a >= 1 && b >= 1 && c >= 1, "theta: path lengths must be at least 1");
  std::vector<EdgeEnds> edges;
  Vertex next = 2;
  for (std::size_t len : {a, b, c}) {
    Vertex prev = 0;
    for (std::size_t i = 1; i < len; ++i) {
      edges.push_back({prev, next});
      prev = next++;
    }
    edges.push_back({prev, 1});
  }
  return MultiGraph(next, edges);
}

MultiGraph biregular_graph(std::size_t a, std::size_t b, std::size_t k) {
  require(a >= 1 && b >= 1 && k >= 1, "biregular: a, b and k must be at least 1");
  require(k == 1 || (a >= 2 && b >= 2), "biregular: k > 1 needs a, b >= 2 for a connected lift");
  // Base K_{b,a}: b left vertices x (degree a), a right vertices y (degree b).
  const std::size_t left = b * k;
  std::vector<EdgeEnds> edges;
  for (std::size_t x = 0; x < b; ++x) {
    for (std::size_t y = 0; y < a; ++y) {
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = (i + x * y) % k;
        edges.push_back({static_cast<Vertex>(x * k + i), static_cast<Vertex>(left + y * k + j)});
      }
    }
  }
  return MultiGraph(k * (a + b), edges);
}

MultiGraph two_cycles_glued(std::size_t p, std::size_t q) {
  require(p >= 1 && q >= 1, "two_cycles_glued: cycle lengths must be at least 1");
  std::vector<EdgeEnds> edges;
  Vertex next = 1;
  for (std::size_t len : {p, q}) {
    Vertex prev = 0;
    for (std::size_t i = 1; i < len; ++i) {
      edges.push_back({prev, next});
      prev = next++;
    }
    edges.push_back({prev, 0});
  }
  return MultiGraph(next, edges);
}

RandomRegular random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  require(n >= 1, "random_regular: n must be at least 1");
  require((n * d) % 2 == 0, "random_regular: n * d must be even");
  Rng rng(seed);
  RandomRegular out;
  std::vector<Vertex> stubs;
  for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
  while (out.attempts < kRandomRegularAttempts) {
    ++out.attempts;
    const auto perm = random_permutation(stubs.size(), rng);
    std::vector<EdgeEnds> edges;
    edges.reserve(stubs.size() / 2);
    std::set<std::pair<Vertex, Vertex>> seen;
    bool simple = true;
    for (std::size_t i = 0; i < perm.size(); i += 2) {
      Vertex u = stubs[perm[i]];
      Vertex v = stubs[perm[i + 1]];
      if (u > v) std::swap(u, v);
      simple = simple && u != v && seen.emplace(u, v).second;
      edges.push_back({u, v});
    }
    out.graph = MultiGraph(n, edges);
    out.simple = simple;
    out.connected = is_connected(out.graph);
    if (out.simple && out.connected) break;
  }
  return out;
}

namespace {

std::uint64_t param(const std::map<std::string, std::uint64_t>& params, const std::string& family,
                    const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) fail(ErrorKind::kPrecondition, family + ": missing parameter '" + key + "'");
  return it->second;
}

}  // namespace

std::vector<std::string> family_names() {
  return {"cycle", "path", "complete", "star", "bowtie", "theta", "biregular", "random_regular", "two_cycles_glued"};
}

Generated make(std::string_view family, const std::map<std::string, std::uint64_t>& params) {
  const std::string f(family);
  auto p = [&](const char* key) { return param(params, f, key); };
  if (f == "cycle") return {cycle_graph(p("n"))};
  if (f == "path") return {path_graph(p("n"))};
  if (f == "complete") return {complete_graph(p("n"))};
  if (f == "star") return {star_graph(p("k"))};
  if (f == "bowtie") return {bowtie_graph()};
  if (f == "theta") return {theta_graph(p("a"), p("b"), p("c"))};
  if (f == "biregular") return {biregular_graph(p("a"), p("b"), p("k"))};
  if (f == "two_cycles_glued") return {two_cycles_glued(p("p"), p("q"))};
  if (f == "random_regular") {
    auto r = random_regular(p("n"), p("d"), params.contains("seed") ? params.at("seed") : 0);
    return {std::move(r.graph), r.simple, r.connected};
  }
  fail(ErrorKind::kPrecondition, "unknown graph family '" + f + "'");
}

// ---- lifts -------------------------------------------------------------

LiftSpec random_lift_spec(const MultiGraph& base, std::size_t n, std::uint64_t seed) {
  require(n >= 1, "random_lift: n must be at least 1");
  Rng rng(seed);
  LiftSpec spec{base, n, {}, seed};
  spec.permutations.reserve(base.num_edges());
  for (EdgeId e = 0; e < base.num_edges(); ++e) spec.permutations.push_back(random_permutation(n, rng));
  return spec;
}

MultiGraph build_lift(const LiftSpec& spec) {
  const std::size_t n = spec.degree;
  require(spec.permutations.size() == spec.base.num_edges(), "lift: one permutation per base edge required");
  std::vector<EdgeEnds> edges;
  edges.reserve(n * spec.base.num_edges());
  for (EdgeId e = 0; e < spec.base.num_edges(); ++e) {
    const auto [u, v] = spec.base.edges()[e];
    const auto& sigma = spec.permutations[e];
    require(sigma.size() == n, "lift: permutation has the wrong size");
    for (std::size_t i = 0; i < n; ++i) {
      edges.push_back({static_cast<Vertex>(u * n + i), static_cast<Vertex>(v * n + sigma[i])});
    }
  }
  return MultiGraph(spec.base.num_vertices() * n, edges);
}

Lift random_lift(const MultiGraph& base, std::size_t n, std::uint64_t seed) {
  Lift out;
  out.graph = build_lift(random_lift_spec(base, n, seed));
  out.projection.resize(out.graph.num_vertices());
  for (Vertex x = 0; x < out.graph.num_vertices(); ++x) out.projection[x] = static_cast<Vertex>(x / n);
  out.components = num_components(out.graph);
  return out;
}

Lift lift_component(const Lift& lift, Vertex root) {
  require(root < lift.graph.num_vertices(), "lift_component: root out of range");
  if (lift.components == 1) return lift;
  const auto labels = component_labels(lift.graph);
  std::vector<Vertex> keep;
  for (Vertex x = 0; x < lift.graph.num_vertices(); ++x) {
    if (labels[x] == labels[root]) keep.push_back(x);
  }
  auto sub = induced_subgraph(lift.graph, keep);
  Lift out{std::move(sub.graph), {}, 1};
  for (Vertex x : sub.to_parent) out.projection.push_back(lift.projection[x]);
  return out;
}

// ---- exhaustive corpus ---------------------------------------------------

namespace {

std::vector<EdgeEnds> relabeled(std::span<const EdgeEnds> edges, const std::vector<Vertex>& perm) {
  std::vector<EdgeEnds> out;
  out.reserve(edges.size());
  for (const auto& e : edges) {
    const Vertex a = perm[e.u];
    const Vertex b = perm[e.v];
    out.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeEnds> canonical_of(std::size_t n, std::span<const EdgeEnds> edges) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0U);
  std::vector<EdgeEnds> best = relabeled(edges, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    auto candidate = relabeled(edges, perm);
    if (candidate < best) best = std::move(candidate);
  }
  return best;
}

bool connected_edges(std::size_t n, std::span<const EdgeEnds> edges) {
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t groups = n;
  for (const auto& e : edges) {
    const Vertex a = find(e.u);
    const Vertex b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --groups;
    }
  }
  return groups == 1;
}

}  // namespace

std::vector<EdgeEnds> canonical_edges(const MultiGraph& g) { return canonical_of(g.num_vertices(), g.edges()); }

std::vector<MultiGraph> small_multigraph_corpus(std::size_t max_vertices, std::size_t max_edges) {
  std::vector<MultiGraph> corpus;
  for (std::size_t n = 1; n <= max_vertices; ++n) {
    std::vector<EdgeEnds> slots;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u; v < n; ++v) slots.push_back({u, v});
    }
    for (std::size_t m = std::max<std::size_t>(1, n - 1); m <= max_edges; ++m) {
      std::set<std::vector<EdgeEnds>> classes;
      // Multisets of m slots as nondecreasing index sequences.
      std::vector<std::size_t> idx(m, 0);
      while (true) {
        std::vector<EdgeEnds> edges;
        edges.reserve(m);
        for (auto i : idx) edges.push_back(slots[i]);
        if (connected_edges(n, edges)) classes.insert(canonical_of(n, edges));
        std::size_t pos = m;
        while (pos > 0 && idx[pos - 1] == slots.size() - 1) --pos;
        if (pos == 0) break;
        const std::size_t value = idx[pos - 1] + 1;
        for (std::size_t j = pos - 1; j < m; ++j) idx[j] = value;
      }
      for (const auto& edges : classes) corpus.emplace_back(n, edges);
    }
  }
  return corpus;
}

}  // namespace cover_spectra
