#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cover_spectra/error.hpp"
#include "cover_spectra/generators.hpp"
#include "cover_spectra/spectra.hpp"
#include "oracles.hpp"

using namespace cover_spectra;

TEST(Spectrum, Triangle) {
  const auto s = eigen_spectrum(cycle_graph(3));
  ASSERT_EQ(s.eigenvalues.size(), 3u);
  EXPECT_NEAR(s.eigenvalues[0], 2.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[1], -1.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[2], -1.0, 1e-12);
  for (double y : s.perron) EXPECT_NEAR(y, 1.0 / std::sqrt(3.0), 1e-12);
}

TEST(Spectrum, Bowtie) {
  const auto s = eigen_spectrum(bowtie_graph());
  EXPECT_NEAR(s.lambda1, (1.0 + std::sqrt(17.0)) / 2.0, 1e-12);
  EXPECT_LT(s.perron_residual, 1e-10);
}

TEST(Spectrum, LoopVertex) {
  // A single vertex with one loop: A = [2].
  const auto s = eigen_spectrum(MultiGraph(1, {{0, 0}}));
  EXPECT_NEAR(s.lambda1, 2.0, 1e-12);
}

TEST(Spectrum, CycleEigenvalues) {
  const auto s = eigen_spectrum(cycle_graph(5));
  std::vector<double> expected;
  for (int j = 0; j < 5; ++j) expected.push_back(2.0 * std::cos(2.0 * std::numbers::pi * j / 5.0));
  std::sort(expected.begin(), expected.end(), std::greater<>());
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(s.eigenvalues[i], expected[i], 1e-12);
}

TEST(Spectrum, MatchesJacobiOracleOnCorpus) {
  for (const auto& g : small_multigraph_corpus(4, 6)) {
    const auto s = eigen_spectrum(g);
    const auto ref = oracle::spectrum(g);
    ASSERT_EQ(s.eigenvalues.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(s.eigenvalues[i], ref[i], 1e-9);
  }
}

TEST(Spectrum, PerronIsPositiveUnitEigenvector) {
  for (const auto& g : small_multigraph_corpus(4, 6)) {
    const auto s = eigen_spectrum(g);
    double norm = 0.0;
    for (double y : s.perron) {
      EXPECT_GT(y, 0.0);
      norm += y * y;
    }
    EXPECT_NEAR(norm, 1.0, 1e-12);
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
      EXPECT_NEAR(eigenvector_ratio_sum(g, s.perron, u), s.lambda1, 1e-9);
    }
  }
}

TEST(Spectrum, LargeGraphUsesInverseIteration) {
  const auto g = random_regular(1500, 3, 7).graph;
  const auto s = eigen_spectrum(g);
  EXPECT_TRUE(s.complete);
  EXPECT_NEAR(s.lambda1, 3.0, 1e-9);
  EXPECT_LT(s.perron_residual, 1e-8);
}

TEST(Spectrum, AboveDenseCapOnlyLambda1) {
  const auto g = cycle_graph(50);
  const auto s = eigen_spectrum(g, {.dense_cap = 10});
  EXPECT_FALSE(s.complete);
  EXPECT_NEAR(s.lambda1, 2.0, 1e-9);
  EXPECT_THROW(wr_fraction(s, 2.0), Error);
}

TEST(WrFraction, CycleIsRamanujan) {
  EXPECT_DOUBLE_EQ(wr_fraction(eigen_spectrum(cycle_graph(100)), 2.0), 1.0);
}

TEST(WrFraction, BowtieCountsLambda1Literally) {
  const auto s = eigen_spectrum(bowtie_graph());
  // Only lambda1 exceeds rho(T) = 2.5243...
  EXPECT_DOUBLE_EQ(wr_fraction(s, 2.5243378), 0.8);
}

TEST(WrFraction, Preconditions) {
  const auto s = eigen_spectrum(cycle_graph(4));
  EXPECT_THROW(wr_fraction(s, 0.0), Error);
  EXPECT_THROW(wr_fraction(s, 1.0, -1.0), Error);
}

TEST(ClosedWalks, MatchMatrixPowers) {
  for (const auto& g : small_multigraph_corpus(3, 5)) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      const auto counts = closed_walk_counts(g, v, 8);
      for (std::size_t k = 0; k <= 8; ++k) EXPECT_EQ(counts[k], oracle::closed_walks(g, v, k));
    }
  }
}

TEST(ClosedWalks, TraceIdentity) {
  // sum_v (A^k)[v][v] = sum_i lambda_i^k.
  for (const auto& g : small_multigraph_corpus(4, 5)) {
    const auto s = eigen_spectrum(g);
    for (std::size_t k = 1; k <= 6; ++k) {
      BigInt trace = 0;
      for (Vertex v = 0; v < g.num_vertices(); ++v) trace += closed_walk_count(g, v, k);
      double power_sum = 0.0;
      for (double l : s.eigenvalues) power_sum += std::pow(l, static_cast<double>(k));
      EXPECT_NEAR(power_sum, static_cast<double>(trace), 1e-7 * std::max(1.0, std::abs(power_sum)));
    }
  }
}
