#include "cover_spectra/rho.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>

#include "cover_spectra/error.hpp"

namespace cover_spectra {

namespace {

constexpr std::size_t kPlainIterations = 500;
constexpr std::size_t kDenseNewtonLimit = 400;
constexpr std::size_t kNewtonLimit = 400;

struct Evaluation {
  Eigen::VectorXd phi;
  Eigen::VectorXd denominator;
  double min_denominator = std::numeric_limits<double>::infinity();
};

Evaluation evaluate(const BranchTypes& bt, const Eigen::VectorXd& f, double t) {
  const auto n = static_cast<Eigen::Index>(bt.types.size());
  Evaluation e{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (auto [c, m] : bt.types[i].children) s += m * f[c];
    e.denominator[i] = t - s;
    e.min_denominator = std::min(e.min_denominator, t - s);
    e.phi[i] = 1.0 / (t - s);
  }
  return e;
}

// Solves (I - J) x = rhs with J[i][c] = m * phi_i^2.
bool newton_solve(const BranchTypes& bt, const Eigen::VectorXd& phi, const Eigen::VectorXd& rhs, Eigen::VectorXd& x) {
  const auto n = static_cast<Eigen::Index>(bt.types.size());
  if (static_cast<std::size_t>(n) <= kDenseNewtonLimit) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (auto [c, mult] : bt.types[i].children) m(i, c) -= mult * phi[i] * phi[i];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    x = lu.solve(rhs);
  } else {
    std::vector<Eigen::Triplet<double>> entries;
    for (Eigen::Index i = 0; i < n; ++i) {
      entries.emplace_back(i, i, 1.0);
      for (auto [c, mult] : bt.types[i].children) entries.emplace_back(i, c, -mult * phi[i] * phi[i]);
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(entries.begin(), entries.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(m);
    if (lu.info() != Eigen::Success) return false;
    x = lu.solve(rhs);
  }
  return x.allFinite();
}

void finish_probe(const BranchTypes& bt, double t, const Eigen::VectorXd& f, ProbeResult& out) {
  out.fixed_point.assign(f.data(), f.data() + f.size());
  out.min_vertex_slack = std::numeric_limits<double>::infinity();
  for (const auto& children : bt.root_children) {
    double s = 0.0;
    for (auto [c, m] : children) s += m * f[c];
    out.min_vertex_slack = std::min(out.min_vertex_slack, t - s);
  }
  out.feasible = out.min_denominator > 0 &&
                 out.min_vertex_slack >= 0 && (f.array() > 0).all();
}

}  // namespace

ProbeResult rho_probe(const BranchTypes& bt, double t, const RhoOptions& options) {
  ProbeResult out;
  const auto n = static_cast<Eigen::Index>(bt.types.size());
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  // Plain fixed-point iteration from zero; monotone nondecreasing while the
  // denominators stay positive.
  const std::size_t plain = std::min(options.iteration_cap, kPlainIterations);
  while (out.iterations < plain) {
    ++out.iterations;
    auto e = evaluate(bt, f, t);
    if (!(e.min_denominator > 0)) {
      out.min_denominator = e.min_denominator;
      return out;
    }
    const double change = (e.phi - f).cwiseAbs().maxCoeff();
    f = e.phi;
    if (change < options.convergence_tol) break;
  }
  // Newton on F - Phi(F) = 0 from the current subsolution. Near rho(T) the
  // plain iteration contracts like 1 - O(sqrt(t - rho)); Newton does not.
  // From a subsolution below the minimal fixed point every Newton step is
  // nonnegative, so a clearly negative step means no fixed point exists.
  std::size_t newton_steps = 0;
  while (true) {
    auto e = evaluate(bt, f, t);
    out.min_denominator = e.min_denominator;
    if (!(e.min_denominator > 0)) return out;
    Eigen::VectorXd r = e.phi - f;
    out.residual = r.cwiseAbs().maxCoeff();
    if (out.residual < options.convergence_tol) break;
    if (out.iterations >= options.iteration_cap || newton_steps >= kNewtonLimit) {
      out.hit_cap = true;
      return out;
    }
    ++out.iterations;
    ++newton_steps;
    Eigen::VectorXd step;
    if (!newton_solve(bt, e.phi, r, step)) return out;
    const double scale = std::max(1.0, f.cwiseAbs().maxCoeff());
    if (step.minCoeff() < -1e-9 * scale) return out;
    f += step;
    if (!f.allFinite() || (f.array() <= 0).any()) return out;
  }
  finish_probe(bt, t, f, out);
  return out;
}

RhoResult rho_tree(const MultiGraph& g, const RhoOptions& options) {
  require(options.tol > 0, "rho_tree: tol must be positive");
  require(g.num_vertices() > 0 && is_connected(g), "rho_tree requires a connected graph");
  require(g.num_edges() > 0, "rho_tree requires at least one edge");
  const BranchTypes bt = branch_types(g);
  RhoResult result;
  result.tol = options.tol;

  double lower = 0.0;
  for (const auto& c : bt.orbits.classes) {
    auto seq = rho_lower_sequence(g, c.representative, options.walk_half_length);
    for (double x : seq) lower = std::max(lower, x);
  }
  const double delta = static_cast<double>(g.max_degree());
  result.walk_lower_bound = lower;
  double lo = std::min(lower, delta);
  double hi = delta;
  ProbeResult at_hi;
  bool have_hi = false;
  while (hi - lo > options.tol) {
    const double t = 0.5 * (lo + hi);
    ProbeResult p = rho_probe(bt, t, options);
    result.probes.push_back(t);
    result.iterations_per_probe.push_back(p.iterations);
    result.any_probe_hit_cap = result.any_probe_hit_cap || p.hit_cap;
    if (p.feasible) {
      hi = t;
      at_hi = std::move(p);
      have_hi = true;
    } else {
      lo = t;
    }
  }
  if (!have_hi) {
    // hi = max degree is a valid bound regardless; still report the system there.
    at_hi = rho_probe(bt, hi, options);
    result.probes.push_back(hi);
    result.iterations_per_probe.push_back(at_hi.iterations);
  }
  result.hi_certified = at_hi.feasible;
  result.lo = lo;
  result.hi = hi;
  result.value = 0.5 * (lo + hi);
  if (!at_hi.fixed_point.empty()) {
    result.fixed_point.resize(g.num_half_edges());
    for (HalfEdge h = 0; h < g.num_half_edges(); ++h) result.fixed_point[h] = at_hi.fixed_point[bt.type_of[h]];
    result.vertex_slack.resize(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      double s = 0.0;
      for (HalfEdge h : g.out(v)) s += result.fixed_point[h];
      result.vertex_slack[v] = hi - s;
    }
    result.vertex_slack_min = *std::min_element(result.vertex_slack.begin(), result.vertex_slack.end());
  }
  return result;
}

std::vector<double> rho_lower_sequence(const MultiGraph& g, Vertex v, std::size_t max_half_length) {
  auto counts = backtracking_walk_counts(g, v, max_half_length);
  std::vector<double> seq;
  seq.reserve(max_half_length);
  for (std::size_t k = 1; k <= max_half_length; ++k) {
    seq.push_back(root_of(counts[k], static_cast<unsigned>(2 * k)));
  }
  return seq;
}

double tree_ball_lambda1_layered(const MultiGraph& g, Vertex v, std::uint32_t radius, double tol) {
  require(v < g.num_vertices(), "rho_ball_power: vertex out of range");
  const std::size_t num_h = g.num_half_edges();
  // reachable[d][h]: some node at depth d + 1 is entered through h.
  std::vector<std::vector<char>> reachable(radius, std::vector<char>(num_h, 0));
  if (radius > 0) {
    for (HalfEdge h : g.out(v)) reachable[0][h] = 1;
    for (std::uint32_t d = 1; d < radius; ++d) {
      for (HalfEdge h = 0; h < num_h; ++h) {
        if (!reachable[d - 1][h]) continue;
        for (HalfEdge c : g.out(g.target(h))) {
          if (c != MultiGraph::inv(h)) reachable[d][c] = 1;
        }
      }
    }
  }
  // t I - A is positive definite iff every pivot of the leaves-first LDL^T
  // factorization is positive; pivots depend only on (half-edge, depth).
  auto positive_definite = [&](double t) {
    std::vector<double> below(num_h, 0.0);  // 1/pivot at depth d + 1
    for (std::uint32_t d = radius; d-- > 0;) {
      std::vector<double> current(num_h, 0.0);
      for (HalfEdge h = 0; h < num_h; ++h) {
        if (!reachable[d][h]) continue;
        double pivot = t;
        if (d + 1 < radius) {
          for (HalfEdge c : g.out(g.target(h))) {
            if (c != MultiGraph::inv(h)) pivot -= below[c];
          }
        }
        if (!(pivot > 0)) return false;
        current[h] = 1.0 / pivot;
      }
      below = std::move(current);
    }
    double root_pivot = t;
    if (radius > 0) {
      for (HalfEdge h : g.out(v)) root_pivot -= below[h];
    }
    return root_pivot > 0;
  };
  double lo = 0.0;
  double hi = static_cast<double>(g.max_degree()) + 1.0;
  while (hi - lo > tol) {
    const double t = 0.5 * (lo + hi);
    (positive_definite(t) ? hi : lo) = t;
  }
  return lo;
}

BallPowerResult rho_ball_power(const MultiGraph& g, Vertex v, std::uint32_t radius, const BallPowerOptions& options) {
  BallPowerResult result;
  result.nodes = tree_ball_size(g, v, radius);
  if (result.nodes > options.power_cap) {
    result.layered = true;
    result.value = tree_ball_lambda1_layered(g, v, radius);
    return result;
  }
  const TreeBall ball = tree_ball(g, v, radius, options.power_cap);
  const std::size_t n = ball.size();
  if (n == 1) return result;
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> ax(n);
  auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::uint32_t id = 1; id < n; ++id) {
      const auto p = ball.node(id).parent;
      out[p] += in[id];
      out[id] += in[p];
    }
  };
  // Power iteration on A + I; the shift breaks the +-lambda symmetry of
  // bipartite trees.
  double rq = 0.0;
  bool converged = false;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    apply(x, ax);
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += x[i] * ax[i];
    rq = dot;
    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) res2 += (ax[i] - rq * x[i]) * (ax[i] - rq * x[i]);
    result.iterations = it + 1;
    if (std::sqrt(res2) < options.tol * std::max(1.0, rq)) {
      converged = true;
      break;
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += ax[i];
      norm += x[i] * x[i];
    }
    norm = std::sqrt(norm);
    for (auto& xi : x) xi /= norm;
  }
  result.value = rq;
  if (!converged) {
    // Nearly degenerate top of the spectrum; the layered route is exact.
    result.layered = true;
    result.value = std::max(rq, tree_ball_lambda1_layered(g, v, radius));
  }
  return result;
}

}  // namespace cover_spectra
