#include "cover_spectra/spectra.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

#include "cover_spectra/error.hpp"

namespace cover_spectra {

namespace {

Eigen::SparseMatrix<double> sparse_adjacency(const MultiGraph& g) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(g.num_half_edges());
  for (HalfEdge h = 0; h < g.num_half_edges(); ++h) {
    entries.emplace_back(static_cast<int>(g.source(h)), static_cast<int>(g.target(h)), 1.0);
  }
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

Eigen::MatrixXd dense_adjacency(const MultiGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (HalfEdge h = 0; h < g.num_half_edges(); ++h) a(g.source(h), g.target(h)) += 1.0;
  return a;
}

void normalize_positive(Eigen::VectorXd& y) {
  if (y.sum() < 0) y = -y;
  y = y.cwiseAbs();
  y /= y.norm();
}

// Inverse iteration with a shift just above lambda1; (shift*I - A) is SPD.
Eigen::VectorXd perron_by_inverse_iteration(const Eigen::SparseMatrix<double>& a, double& lambda1) {
  const auto n = a.rows();
  Eigen::VectorXd y = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int round = 0; round < 4; ++round) {
    const double shift = lambda1 + std::max(1e-7, 1e-9 * std::abs(lambda1));
    Eigen::SparseMatrix<double> m(n, n);
    m.setIdentity();
    m *= shift;
    m -= a;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(m);
    if (solver.info() != Eigen::Success) fail(ErrorKind::kNumerical, "Perron inverse iteration: factorization failed");
    for (int it = 0; it < 6; ++it) {
      y = solver.solve(y);
      y /= y.norm();
    }
    const double rq = y.dot(a * y);
    const double residual = (a * y - rq * y).norm();
    lambda1 = std::max(lambda1, rq);
    if (residual <= 1e-12 * std::max(1.0, std::abs(lambda1))) break;
  }
  return y;
}

double power_lambda1(const Eigen::SparseMatrix<double>& a, double max_degree) {
  const auto n = a.rows();
  Eigen::VectorXd y = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double rq = 0.0;
  for (int it = 0; it < 100000; ++it) {
    Eigen::VectorXd next = a * y + max_degree * y;
    next /= next.norm();
    double next_rq = next.dot(a * next);
    y = std::move(next);
    if (it > 10 && std::abs(next_rq - rq) < 1e-13 * std::max(1.0, max_degree)) {
      rq = next_rq;
      break;
    }
    rq = next_rq;
  }
  return rq;
}

}  // namespace

Spectrum eigen_spectrum(const MultiGraph& g, const SpectrumOptions& options) {
  require(g.num_vertices() > 0 && is_connected(g), "eigen_spectrum requires a connected graph");
  const std::size_t n = g.num_vertices();
  Spectrum s;
  Eigen::VectorXd y;
  if (n <= options.dense_cap) {
    Eigen::MatrixXd a = dense_adjacency(g);
    const bool vectors = options.with_perron && n <= options.eigenvector_cap;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        a, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) fail(ErrorKind::kNumerical, "symmetric eigensolver did not converge");
    const auto& values = solver.eigenvalues();  // ascending
    s.eigenvalues.assign(values.data(), values.data() + values.size());
    std::reverse(s.eigenvalues.begin(), s.eigenvalues.end());
    s.lambda1 = s.eigenvalues.front();
    if (vectors) y = solver.eigenvectors().col(static_cast<Eigen::Index>(n) - 1);
  } else {
    s.complete = false;
  }
  if (options.with_perron || !s.complete) {
    auto sparse = sparse_adjacency(g);
    if (!s.complete) {
      s.lambda1 = power_lambda1(sparse, static_cast<double>(g.max_degree()));
      s.eigenvalues = {s.lambda1};
    }
    if (y.size() == 0) y = perron_by_inverse_iteration(sparse, s.lambda1);
    if (!s.complete) s.eigenvalues = {s.lambda1};
    normalize_positive(y);
    s.perron.assign(y.data(), y.data() + y.size());
    s.perron_residual = (sparse * y - s.lambda1 * y).norm();
  }
  return s;
}

double wr_fraction(const Spectrum& s, double rho, double eta) {
  require(rho > 0, "wr_fraction: rho must be positive");
  require(eta >= 0, "wr_fraction: eta must be non-negative");
  require(s.complete, "wr_fraction needs the full spectrum (graph exceeds the dense solver cap)");
  const auto count = std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                                   [&](double x) { return std::abs(x) <= rho + eta; });
  return static_cast<double>(count) / static_cast<double>(s.eigenvalues.size());
}

std::vector<BigInt> closed_walk_counts(const MultiGraph& g, Vertex v, std::size_t max_k) {
  require(v < g.num_vertices(), "closed_walk_count: vertex out of range");
  const std::size_t n = g.num_vertices();
  std::vector<BigInt> current(n);
  std::vector<BigInt> next(n);
  current[v] = 1;
  std::vector<BigInt> counts;
  counts.reserve(max_k + 1);
  counts.push_back(1);
  for (std::size_t k = 1; k <= max_k; ++k) {
    for (auto& x : next) x = 0;
    for (Vertex x = 0; x < n; ++x) {
      if (current[x] == 0) continue;
      for (HalfEdge h : g.out(x)) next[g.target(h)] += current[x];
    }
    std::swap(current, next);
    counts.push_back(current[v]);
  }
  return counts;
}

BigInt closed_walk_count(const MultiGraph& g, Vertex v, std::size_t k) {
  return closed_walk_counts(g, v, k).back();
}

double eigenvector_ratio_sum(const MultiGraph& g, const std::vector<double>& y, Vertex u) {
  double sum = 0.0;
  for (HalfEdge h : g.out(u)) sum += y[g.target(h)];
  return sum / y[u];
}

}  // namespace cover_spectra
