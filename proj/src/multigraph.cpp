#include "cover_spectra/multigraph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

#include "cover_spectra/error.hpp"

namespace cover_spectra {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kCapExceeded: return "cap_exceeded";
    case ErrorKind::kNumerical: return "numerical";
    case ErrorKind::kUsage: return "usage";
  }
  return "unknown";
}

MultiGraph::MultiGraph(std::size_t num_vertices, std::span<const EdgeEnds> edges)
    : edges_(edges.begin(), edges.end()), offsets_(num_vertices + 1, 0) {
  for (const auto& e : edges_) {
    require(e.u < num_vertices && e.v < num_vertices, "edge endpoint out of range");
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  half_edges_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Ascending half-edge ids per vertex fall out of the id order.
  for (HalfEdge h = 0; h < half_edges_.size(); ++h) {
    half_edges_[fill[source(h)]++] = h;
  }
  for (Vertex v = 0; v < num_vertices; ++v) max_degree_ = std::max(max_degree_, degree(v));
}

std::size_t MultiGraph::multiplicity(Vertex u, Vertex v) const {
  std::size_t count = 0;
  for (HalfEdge h : out(u)) count += target(h) == v;
  return count;
}

// ---- file format --------------------------------------------------------

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  fail(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what);
}

bool parse_two(std::string_view line, std::uint64_t& a, std::uint64_t& b) {
  auto skip = [&](std::size_t i) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    return i;
  };
  std::size_t i = skip(0);
  auto [p1, ec1] = std::from_chars(line.data() + i, line.data() + line.size(), a);
  if (ec1 != std::errc() || p1 == line.data() + i) return false;
  i = static_cast<std::size_t>(p1 - line.data());
  std::size_t j = skip(i);
  if (j == i) return false;
  auto [p2, ec2] = std::from_chars(line.data() + j, line.data() + line.size(), b);
  if (ec2 != std::errc() || p2 == line.data() + j) return false;
  return skip(static_cast<std::size_t>(p2 - line.data())) == line.size();
}

}  // namespace

MultiGraph load_graph(std::string_view text) {
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::vector<EdgeEnds> edges;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (!parse_two(line, a, b)) parse_error(line_no, "expected two non-negative integers");
    if (!have_header) {
      if (a == 0) parse_error(line_no, "empty graph (n = 0)");
      if (a > std::numeric_limits<Vertex>::max() / 2) parse_error(line_no, "vertex count too large");
      n = a;
      m = b;
      have_header = true;
      edges.reserve(m);
    } else {
      if (a >= n || b >= n) parse_error(line_no, "vertex index out of range (n = " + std::to_string(n) + ")");
      if (edges.size() == m) parse_error(line_no, "more edge lines than declared m = " + std::to_string(m));
      edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
    }
    if (end == text.size()) break;
  }
  if (!have_header) parse_error(line_no, "empty graph (missing header)");
  if (edges.size() != m) {
    parse_error(line_no, "declared m = " + std::to_string(m) + " but found " + std::to_string(edges.size()) +
                             " edge lines");
  }
  return MultiGraph(n, edges);
}

MultiGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kParse, "cannot open graph file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_graph(buffer.str());
}

std::string write_graph(const MultiGraph& g) {
  std::vector<EdgeEnds> lines;
  lines.reserve(g.num_edges());
  for (const auto& e : g.edges()) lines.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  std::sort(lines.begin(), lines.end());
  std::string out = std::to_string(g.num_vertices()) + " " + std::to_string(g.num_edges()) + "\n";
  for (const auto& e : lines) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

// ---- traversal ----------------------------------------------------------

std::vector<std::uint32_t> component_labels(const MultiGraph& g) {
  std::vector<std::uint32_t> label(g.num_vertices(), kNone);
  std::uint32_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (label[s] != kNone) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (HalfEdge h : g.out(x)) {
        Vertex y = g.target(h);
        if (label[y] == kNone) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t num_components(const MultiGraph& g) {
  auto labels = component_labels(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

bool is_connected(const MultiGraph& g) { return num_components(g) == 1; }

std::vector<std::uint32_t> distances_from(const MultiGraph& g, Vertex v) {
  std::vector<std::uint32_t> dist(g.num_vertices(), kNone);
  std::vector<Vertex> queue{v};
  dist[v] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Vertex x = queue[i];
    for (HalfEdge h : g.out(x)) {
      Vertex y = g.target(h);
      if (dist[y] == kNone) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

Subgraph induced_subgraph(const MultiGraph& g, std::span<const Vertex> vertices) {
  std::vector<Vertex> local(g.num_vertices(), kNone);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<Vertex>(i);
  std::vector<EdgeEnds> edges;
  std::vector<EdgeId> edge_map;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto& ends = g.edges()[e];
    if (local[ends.u] != kNone && local[ends.v] != kNone) {
      edges.push_back({local[ends.u], local[ends.v]});
      edge_map.push_back(e);
    }
  }
  return {MultiGraph(vertices.size(), edges), {vertices.begin(), vertices.end()}, std::move(edge_map)};
}

std::string_view to_string(CyclomaticClass c) {
  switch (c) {
    case CyclomaticClass::kTree: return "tree";
    case CyclomaticClass::kUnicyclic: return "unicyclic";
    case CyclomaticClass::kMulticyclic: return "multicyclic";
  }
  return "unknown";
}

CyclomaticClass cyclomatic_class(const MultiGraph& g) {
  require(g.num_vertices() > 0 && is_connected(g), "cyclomatic_class requires a connected graph");
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  if (m + 1 == n) return CyclomaticClass::kTree;
  if (m == n) return CyclomaticClass::kUnicyclic;
  return CyclomaticClass::kMulticyclic;
}

Ball ball(const MultiGraph& g, Vertex v, std::uint32_t radius) {
  require(v < g.num_vertices(), "ball: vertex out of range");
  std::vector<std::uint32_t> dist(g.num_vertices(), kNone);
  std::vector<Vertex> order{v};
  dist[v] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    Vertex x = order[i];
    if (dist[x] == radius) continue;
    for (HalfEdge h : g.out(x)) {
      Vertex y = g.target(h);
      if (dist[y] == kNone) {
        dist[y] = dist[x] + 1;
        order.push_back(y);
      }
    }
  }
  auto sub = induced_subgraph(g, order);
  return {std::move(sub.graph), std::move(sub.to_parent), 0, std::move(sub.edge_to_parent)};
}

// ---- 2-core -------------------------------------------------------------

bool CoreDecomposition::is_int(HalfEdge h) const { return kind[h] == 1; }
bool CoreDecomposition::is_ext(HalfEdge h) const { return kind[h] == 2; }

CoreDecomposition two_core(const MultiGraph& g) {
  require(g.num_vertices() > 0 && is_connected(g), "two_core requires a connected graph");
  require(cyclomatic_class(g) != CyclomaticClass::kTree, "two_core: graph is a tree, its 2-core is empty");
  const std::size_t n = g.num_vertices();
  std::vector<std::uint32_t> deg(n);
  for (Vertex v = 0; v < n; ++v) deg[v] = static_cast<std::uint32_t>(g.degree(v));
  std::vector<bool> alive(n, true);
  std::deque<Vertex> leaves;
  for (Vertex v = 0; v < n; ++v) {
    if (deg[v] == 1) leaves.push_back(v);
  }
  while (!leaves.empty()) {
    Vertex x = leaves.front();
    leaves.pop_front();
    if (!alive[x] || deg[x] != 1) continue;
    alive[x] = false;
    for (HalfEdge h : g.out(x)) {
      Vertex y = g.target(h);
      if (alive[y]) {
        if (--deg[y] == 1) leaves.push_back(y);
      }
    }
  }

  CoreDecomposition core;
  core.in_core = alive;
  core.core_degree.assign(n, 0);
  core.depth.assign(n, kNone);
  core.kind.assign(g.num_half_edges(), 0);
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    if (alive[v]) {
      core.core_vertices.push_back(v);
      core.core_degree[v] = deg[v];
      core.depth[v] = 0;
      queue.push_back(v);
    } else {
      core.ext_vertices.push_back(v);
    }
  }
  for (HalfEdge h = 0; h < g.num_half_edges(); ++h) {
    if (alive[g.source(h)] && alive[g.target(h)]) core.kind[h] = 1;
  }
  // Multi-source BFS orients every non-core edge away from the core.
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Vertex x = queue[i];
    for (HalfEdge h : g.out(x)) {
      Vertex y = g.target(h);
      if (core.depth[y] == kNone) {
        core.depth[y] = core.depth[x] + 1;
        core.kind[h] = 2;
        queue.push_back(y);
      }
    }
  }
  for (HalfEdge h = 0; h < g.num_half_edges(); ++h) {
    if (core.kind[h] == 1) core.int_half_edges.push_back(h);
    if (core.kind[h] == 2) core.ext_half_edges.push_back(h);
  }
  return core;
}

}  // namespace cover_spectra
