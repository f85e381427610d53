#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cover_spectra/bigint.hpp"
#include "cover_spectra/multigraph.hpp"

namespace cover_spectra {

/// Interior weights in [1, 2): Gamma(h) = 1 + steps(h) * epsilon, with
/// sum_{h' child of h, h' interior} Gamma(h') > Gamma(h) for every interior h.
struct GammaWeights {
  Rational epsilon;
  std::map<HalfEdge, std::uint32_t> steps;

  Rational exact(HalfEdge h) const { return 1 + steps.at(h) * epsilon; }
  double at(HalfEdge h) const { return to_double(exact(h)); }
};

/// Interior weights for a multicyclic graph. The chain step epsilon is
/// 1 / (2 |E_int|) where |E_int| counts interior half-edges.
GammaWeights gamma_assignment(const MultiGraph& g, const CoreDecomposition& core);

/// Exterior weights in (0, 1]: 1 on half-edges leaving the core, and
/// Delta(in) / (d + 1) on each of the d exterior half-edges below.
std::map<HalfEdge, Rational> delta_assignment(const MultiGraph& g, const CoreDecomposition& core);

enum class TypeRole : std::uint8_t { kIntChild, kExtChild, kRoot };
std::string_view to_string(TypeRole role);

/// One T-vertex type: a non-root vertex entered through `id` (a G half-edge)
/// or a root over core vertex `id`.
struct GValue {
  std::uint32_t id;
  TypeRole role;
  double value;
};

/// Exact evaluation of the quadratic-form bound g(u) for every T-vertex type
/// when T is rooted over the core. y must be the positive Perron vector.
std::vector<GValue> g_values(const MultiGraph& g, const CoreDecomposition& core, const std::vector<double>& y,
                             const GammaWeights& gamma_weights, const std::map<HalfEdge, Rational>& delta_weights,
                             double gamma, double delta);

struct CertifyOptions {
  int max_gamma_exponent = 40;   // gamma = 2^-1 .. 2^-max
  int max_delta_power = 3;       // delta = gamma, gamma^2, ..
  bool cross_check = true;       // compare against rho_tree
  double cross_check_tol = 1e-6;
};

struct GapCertificate {
  GammaWeights gamma_weights;
  std::map<HalfEdge, Rational> delta_weights;
  double gamma = 0.0;
  double delta = 0.0;
  std::vector<GValue> g_values;
  double g_max = 0.0;
  double rho_g = 0.0;  // lambda1(G)
  double margin = 0.0; // rho_g - g_max; rho(T) <= rho_g - margin
  std::vector<double> perron;
  std::optional<double> rho_tree_hi;  // filled by the cross-check

  double rho_upper_implied() const { return rho_g - margin; }
};

/// Searches (gamma, delta) for the largest margin. Requires a connected
/// multicyclic graph; throws kNumerical if no positive margin is found or the
/// cross-check against rho_tree fails.
GapCertificate certify_gap(const MultiGraph& g, const CertifyOptions& options = {});

/// rho(G) - (2/N) y_a y_b for the N-copy test vector of a unicyclic graph,
/// where {a, b} is the deleted cycle edge (the one minimizing y_a y_b). A
/// lower bound for rho(T).
double unicyclic_defect(const MultiGraph& g, std::uint64_t copies);

/// Per-graph outcome of the spectral-gap dichotomy check used by the
/// `verify-thm2` command and the acceptance suite.
struct DichotomyRow {
  CyclomaticClass cls;
  double lambda1 = 0.0;
  double rho_value = 0.0;
  double rho_hi = 0.0;
  double margin = 0.0;  // 0 unless multicyclic
  bool pass = false;
  std::string detail;
};

DichotomyRow check_gap_dichotomy(const MultiGraph& g, double tol = 1e-6);

}  // namespace cover_spectra
