#pragma once

#include <cstddef>
#include <vector>

#include "cover_spectra/bigint.hpp"
#include "cover_spectra/multigraph.hpp"

namespace cover_spectra {

struct SpectrumOptions {
  /// Above this size only lambda1 and the Perron vector are computed.
  std::size_t dense_cap = 4096;
  /// Above this size the dense solver computes eigenvalues only and the
  /// Perron vector comes from inverse iteration.
  std::size_t eigenvector_cap = 1024;
  bool with_perron = true;
};

/// Adjacency spectrum of a connected multigraph (loop = 2 convention).
struct Spectrum {
  std::vector<double> eigenvalues;  // nonincreasing; just {lambda1} when !complete
  double lambda1 = 0.0;
  std::vector<double> perron;       // positive, unit norm; empty if not requested
  bool complete = true;
  double perron_residual = 0.0;     // ||A y - lambda1 y||_2
};

Spectrum eigen_spectrum(const MultiGraph& g, const SpectrumOptions& options = {});

inline constexpr double kDefaultEta = 1e-9;

/// Fraction of eigenvalues (with multiplicity, lambda1 included) with
/// |lambda| <= rho + eta.
double wr_fraction(const Spectrum& s, double rho, double eta = kDefaultEta);

/// Number of closed half-edge walks of length k at v, i.e. (A^k)[v][v].
BigInt closed_walk_count(const MultiGraph& g, Vertex v, std::size_t k);

/// closed_walk_count(g, v, k) for k = 0..max_k.
std::vector<BigInt> closed_walk_counts(const MultiGraph& g, Vertex v, std::size_t max_k);

/// sum_h y[target(h)] / y[u] over half-edges at u; equals lambda1 for the
/// Perron vector.
double eigenvector_ratio_sum(const MultiGraph& g, const std::vector<double>& y, Vertex u);

}  // namespace cover_spectra
