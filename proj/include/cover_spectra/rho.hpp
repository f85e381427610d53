#pragma once

#include <cstddef>
#include <vector>

#include "cover_spectra/cover.hpp"
#include "cover_spectra/multigraph.hpp"

namespace cover_spectra {

struct RhoOptions {
  double tol = 1e-9;                 // target bracket width
  std::size_t iteration_cap = 100000;
  double convergence_tol = 1e-12;    // sup-norm of F - Phi(F)
  std::size_t walk_half_length = 6;  // K0 for the walk-count lower bound
};

/// Outcome of one feasibility probe at a value t.
struct ProbeResult {
  bool feasible = false;
  bool hit_cap = false;
  std::size_t iterations = 0;
  std::vector<double> fixed_point;  // per branch type
  double residual = 0.0;
  double min_denominator = 0.0;
  double min_vertex_slack = 0.0;
};

/// rho(T) for the universal cover T of G, bracketed by bisection.
///
/// A probe at t looks for the minimal positive solution of the branch
/// Green's function system F_h = 1 / (t - sum_{h' child of h} F_{h'}) and
/// accepts t when the solution exists with positive denominators and
/// t - sum_{h at v} F_h >= 0 at every vertex. Such an F defines a positive
/// function phi on T with A phi <= t phi, so rho(T) <= t.
struct RhoResult {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double tol = 0.0;
  double walk_lower_bound = 0.0;
  std::vector<double> fixed_point;    // per G half-edge, at t = hi
  std::vector<double> vertex_slack;   // per vertex, at t = hi
  double vertex_slack_min = 0.0;
  std::vector<std::size_t> iterations_per_probe;
  std::vector<double> probes;
  bool any_probe_hit_cap = false;
  bool hi_certified = false;          // the probe at hi succeeded
};

/// Feasibility probe on the branch-type system (exposed for tests).
ProbeResult rho_probe(const BranchTypes& types, double t, const RhoOptions& options = {});

RhoResult rho_tree(const MultiGraph& g, const RhoOptions& options = {});

/// (N_{2k}(G, v))^{1/2k} for k = 1..max_half_length; each entry is a lower
/// bound for rho(T) and the sequence is nondecreasing.
std::vector<double> rho_lower_sequence(const MultiGraph& g, Vertex v, std::size_t max_half_length);

struct BallPowerOptions {
  std::size_t power_cap = 4096;  // largest ball handled by power iteration
  std::size_t max_iterations = 5000;
  double tol = 1e-13;
};

struct BallPowerResult {
  double value = 0.0;
  std::size_t nodes = 0;
  std::size_t iterations = 0;
  bool layered = false;  // true when the layered route produced the value
};

/// lambda1 of the truncated tree ball B_R(T, v^). Runs power iteration on the
/// materialized ball; balls larger than power_cap, or where power iteration
/// does not converge within max_iterations, are handled by a bisection
/// on the LDL^T pivots of (t I - A), grouped by (half-edge, remaining depth).
/// Both routes return a lower bound for lambda1 of the ball.
BallPowerResult rho_ball_power(const MultiGraph& g, Vertex v, std::uint32_t radius,
                               const BallPowerOptions& options = {});

/// Exact route used above power_cap (exposed for tests).
double tree_ball_lambda1_layered(const MultiGraph& g, Vertex v, std::uint32_t radius, double tol = 1e-13);

}  // namespace cover_spectra
