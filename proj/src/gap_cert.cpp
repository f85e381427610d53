#include "cover_spectra/gap_cert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cover_spectra/error.hpp"
#include "cover_spectra/rho.hpp"
#include "cover_spectra/spectra.hpp"

namespace cover_spectra {

GammaWeights gamma_assignment(const MultiGraph& g, const CoreDecomposition& core) {
  require(cyclomatic_class(g) == CyclomaticClass::kMulticyclic,
          "gamma_assignment needs a multicyclic graph (every core cycle must meet a vertex of core degree > 2)");
  GammaWeights w;
  w.epsilon = Rational(1, 2 * core.int_half_edges.size());
  for (HalfEdge start : core.int_half_edges) {
    if (core.core_degree[g.source(start)] <= 2) continue;
    w.steps[start] = 0;
    // Walk the chain of core-degree-2 vertices, adding one step per vertex.
    HalfEdge cur = start;
    while (core.core_degree[g.target(cur)] == 2) {
      const Vertex v = g.target(cur);
      HalfEdge next = kNone;
      for (HalfEdge c : g.out(v)) {
        if (core.is_int(c) && c != MultiGraph::inv(cur)) next = c;
      }
      if (next == kNone || w.steps.contains(next)) {
        fail(ErrorKind::kPrecondition, "gamma_assignment: found a core cycle without a branch vertex");
      }
      w.steps[next] = w.steps[cur] + 1;
      cur = next;
    }
  }
  if (w.steps.size() != core.int_half_edges.size()) {
    fail(ErrorKind::kPrecondition, "gamma_assignment: some interior half-edges are unreachable from branch vertices");
  }
  return w;
}

std::map<HalfEdge, Rational> delta_assignment(const MultiGraph& g, const CoreDecomposition& core) {
  std::map<HalfEdge, Rational> weights;
  std::vector<HalfEdge> queue;
  for (HalfEdge h : core.ext_half_edges) {
    if (core.in_core[g.source(h)]) {
      weights[h] = 1;
      queue.push_back(h);
    }
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const HalfEdge h = queue[i];
    const Vertex v = g.target(h);
    std::size_t d = 0;
    for (HalfEdge c : g.out(v)) d += core.is_ext(c);
    for (HalfEdge c : g.out(v)) {
      if (!core.is_ext(c)) continue;
      weights[c] = weights[h] / Rational(d + 1);
      queue.push_back(c);
    }
  }
  return weights;
}

std::string_view to_string(TypeRole role) {
  switch (role) {
    case TypeRole::kIntChild: return "int-child";
    case TypeRole::kExtChild: return "ext-child";
    case TypeRole::kRoot: return "root";
  }
  return "unknown";
}

std::vector<GValue> g_values(const MultiGraph& g, const CoreDecomposition& core, const std::vector<double>& y,
                             const GammaWeights& gamma_weights, const std::map<HalfEdge, Rational>& delta_weights,
                             double gamma, double delta) {
  std::map<HalfEdge, double> gw;
  for (const auto& [h, s] : gamma_weights.steps) gw[h] = gamma_weights.at(h);
  std::map<HalfEdge, double> dw;
  for (const auto& [h, q] : delta_weights) dw[h] = to_double(q);

  // Contribution of the edge u -> c (u parent) to g(u).
  auto child_term = [&](Vertex u, HalfEdge c) {
    const Vertex w = g.target(c);
    const double ratio = y[w] / y[u];
    const double pair = y[u] * y[w];
    if (core.is_int(c)) return ratio / (1.0 + gw.at(c) * gamma / pair);
    if (core.is_ext(c)) return ratio * (1.0 + dw.at(c) * delta / pair);
    fail(ErrorKind::kPrecondition, "g_values: child half-edge points toward the core");
  };

  std::vector<GValue> out;
  out.reserve(core.int_half_edges.size() + core.ext_half_edges.size() + core.core_vertices.size());
  for (HalfEdge h = 0; h < g.num_half_edges(); ++h) {
    if (!core.is_int(h) && !core.is_ext(h)) continue;
    const Vertex p = g.source(h);
    const Vertex u = g.target(h);
    const double ratio = y[p] / y[u];
    const double pair = y[p] * y[u];
    double value = core.is_int(h) ? ratio * (1.0 + gw.at(h) * gamma / pair)
                                  : ratio / (1.0 + dw.at(h) * delta / pair);
    for (HalfEdge c : g.out(u)) {
      if (c != MultiGraph::inv(h)) value += child_term(u, c);
    }
    out.push_back({h, core.is_int(h) ? TypeRole::kIntChild : TypeRole::kExtChild, value});
  }
  for (Vertex v : core.core_vertices) {
    double value = 0.0;
    for (HalfEdge c : g.out(v)) value += child_term(v, c);
    out.push_back({v, TypeRole::kRoot, value});
  }
  return out;
}

GapCertificate certify_gap(const MultiGraph& g, const CertifyOptions& options) {
  require(g.num_vertices() > 0 && is_connected(g), "certify_gap requires a connected graph");
  if (cyclomatic_class(g) != CyclomaticClass::kMulticyclic) {
    fail(ErrorKind::kPrecondition,
         "certify_gap needs a multicyclic graph; for trees and unicyclic graphs use unicyclic_defect");
  }
  const auto core = two_core(g);
  const auto spectrum = eigen_spectrum(g);
  GapCertificate cert;
  cert.gamma_weights = gamma_assignment(g, core);
  cert.delta_weights = delta_assignment(g, core);
  cert.rho_g = spectrum.lambda1;
  cert.perron = spectrum.perron;
  cert.margin = -std::numeric_limits<double>::infinity();
  double gamma = 1.0;
  for (int i = 1; i <= options.max_gamma_exponent; ++i) {
    gamma *= 0.5;
    double delta = 1.0;
    for (int j = 1; j <= options.max_delta_power; ++j) {
      delta *= gamma;
      auto values = g_values(g, core, cert.perron, cert.gamma_weights, cert.delta_weights, gamma, delta);
      double g_max = -std::numeric_limits<double>::infinity();
      for (const auto& v : values) g_max = std::max(g_max, v.value);
      const double margin = cert.rho_g - g_max;
      if (margin > cert.margin) {
        cert.margin = margin;
        cert.g_max = g_max;
        cert.gamma = gamma;
        cert.delta = delta;
        cert.g_values = std::move(values);
      }
    }
  }
  if (!(cert.margin > 0)) {
    std::ostringstream msg;
    msg << "certify_gap: no positive margin found (best " << cert.margin << ")";
    fail(ErrorKind::kNumerical, msg.str());
  }
  if (options.cross_check) {
    const auto rho = rho_tree(g);
    cert.rho_tree_hi = rho.hi;
    if (rho.hi > cert.rho_upper_implied() + options.cross_check_tol) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "certify_gap: rho_tree upper end " << rho.hi << " exceeds certified bound " << cert.rho_upper_implied();
      fail(ErrorKind::kNumerical, msg.str());
    }
  }
  return cert;
}

double unicyclic_defect(const MultiGraph& g, std::uint64_t copies) {
  require(copies >= 1, "unicyclic_defect: N must be at least 1");
  require(g.num_vertices() > 0 && is_connected(g), "unicyclic_defect requires a connected graph");
  require(cyclomatic_class(g) == CyclomaticClass::kUnicyclic, "unicyclic_defect requires a unicyclic graph");
  const auto core = two_core(g);
  const auto spectrum = eigen_spectrum(g);
  const auto& y = spectrum.perron;
  double smallest = std::numeric_limits<double>::infinity();
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edges()[e];
    if (core.in_core[u] && core.in_core[v]) smallest = std::min(smallest, y[u] * y[v]);
  }
  return spectrum.lambda1 - 2.0 / static_cast<double>(copies) * smallest;
}

DichotomyRow check_gap_dichotomy(const MultiGraph& g, double tol) {
  DichotomyRow row;
  row.cls = cyclomatic_class(g);
  row.lambda1 = eigen_spectrum(g, {.with_perron = false}).lambda1;
  const auto rho = rho_tree(g);
  row.rho_value = rho.value;
  row.rho_hi = rho.hi;
  const double gap = std::abs(row.lambda1 - rho.value);
  std::ostringstream detail;
  detail.precision(10);
  if (row.cls != CyclomaticClass::kMulticyclic) {
    row.pass = gap <= tol;
    detail << "gap " << gap;
  } else {
    try {
      const auto cert = certify_gap(g, {.cross_check = false});
      row.margin = cert.margin;
      const bool sound = rho.hi <= row.lambda1 - cert.margin + tol;
      row.pass = gap > tol && cert.margin > 0 && sound;
      detail << "gap " << gap << " margin " << cert.margin << (sound ? "" : " UNSOUND");
    } catch (const Error& e) {
      row.pass = false;
      detail << e.what();
    }
  }
  row.detail = detail.str();
  return row;
}

}  // namespace cover_spectra
