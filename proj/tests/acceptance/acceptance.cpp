// Acceptance suite. `acceptance N` runs criterion N; with no argument every
// criterion runs. Each criterion prints exactly one PASS/FAIL line; the exit
// status is nonzero if any selected criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "cover_spectra/cover.hpp"
#include "cover_spectra/gap_cert.hpp"
#include "cover_spectra/generators.hpp"
#include "cover_spectra/local_stats.hpp"
#include "cover_spectra/rho.hpp"
#include "cover_spectra/spectra.hpp"

using namespace cover_spectra;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const std::vector<MultiGraph>& corpus() {
  static const auto c = small_multigraph_corpus(5, 7);
  return c;
}

BigInt power(std::size_t base, std::size_t exp) {
  BigInt r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

std::string fmt(double x, int precision = 10) {
  std::ostringstream s;
  s.precision(precision);
  s << x;
  return s.str();
}

// 1. Bowtie numbers.
void bowtie_numbers(Outcome& o) {
  const auto start = Clock::now();
  const auto g = bowtie_graph();
  const double lambda1 = eigen_spectrum(g).lambda1;
  const auto r = rho_tree(g);
  const double gap = lambda1 - r.value;
  const double elapsed = seconds_since(start);
  o.check(std::abs(lambda1 - (1.0 + std::sqrt(17.0)) / 2.0) <= 1e-6, "lambda1");
  o.check(std::abs(r.value - (std::sqrt(3.0) + std::sqrt(11.0)) / 2.0) <= 1e-6, "rho");
  o.check(std::abs(gap - 0.0372150) <= 1e-4, "gap");
  o.check(elapsed < 1.0, "runtime");
  o.detail << "lambda1=" << fmt(lambda1) << " rho=" << fmt(r.value) << " gap=" << fmt(gap) << " t=" << fmt(elapsed, 3)
           << "s";
}

// 2. Regular covers.
void regular_covers(Outcome& o) {
  const double target = 2.0 * std::sqrt(2.0);
  double worst_time = 0.0;
  auto timed = [&](const MultiGraph& g) {
    const auto start = Clock::now();
    const double v = rho_tree(g).value;
    worst_time = std::max(worst_time, seconds_since(start));
    return v;
  };
  const double k4 = timed(complete_graph(4));
  const auto rr = random_regular(200, 3, 1);
  o.check(rr.simple && rr.connected, "random 3-regular graph is simple and connected");
  const double random3 = timed(rr.graph);
  o.check(std::abs(k4 - target) <= 1e-8, "K4");
  o.check(std::abs(random3 - target) <= 1e-8, "random 3-regular");
  double worst_cycle = 0.0;
  for (std::size_t n : {3u, 4u, 7u, 50u}) {
    const double c = timed(cycle_graph(n));
    worst_cycle = std::max(worst_cycle, std::abs(c - 2.0));
  }
  o.check(worst_cycle <= 1e-8, "cycles");
  o.check(worst_time < 1.0, "runtime");
  o.detail << "K4 err=" << fmt(std::abs(k4 - target), 3) << " random3 err=" << fmt(std::abs(random3 - target), 3)
           << " cycle err=" << fmt(worst_cycle, 3) << " max t=" << fmt(worst_time, 3) << "s";
}

// 3. Spectral-gap dichotomy over the exhaustive corpus.
void gap_dichotomy(Outcome& o) {
  const auto start = Clock::now();
  std::size_t multicyclic = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  double max_equal_gap = 0.0;
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const auto& g = corpus()[i];
    const auto row = check_gap_dichotomy(g, 1e-6);
    o.check(row.pass, "graph " + std::to_string(i) + " (" + row.detail + ")");
    if (row.cls == CyclomaticClass::kMulticyclic) {
      ++multicyclic;
      min_margin = std::min(min_margin, row.margin);
    } else {
      max_equal_gap = std::max(max_equal_gap, std::abs(row.lambda1 - row.rho_value));
    }
  }
  const double elapsed = seconds_since(start);
  o.check(elapsed < 600.0, "runtime");
  o.detail << "graphs=" << corpus().size() << " multicyclic=" << multicyclic << " min margin=" << fmt(min_margin, 4)
           << " max |lambda1-rho| (tree/unicyclic)=" << fmt(max_equal_gap, 3) << " t=" << fmt(elapsed, 3) << "s";
}

// 4. Walk-count oracle equivalence.
void walk_oracle(Outcome& o) {
  const auto start = Clock::now();
  std::size_t comparisons = 0;
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const auto& g = corpus()[i];
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      const auto counts = backtracking_walk_counts(g, v, 4);
      for (std::size_t k = 0; k <= 8; ++k) {
        const BigInt mine = k % 2 ? BigInt(0) : counts[k / 2];
        o.check(mine == backtracking_walk_count(g, v, k), "single-count API, graph " + std::to_string(i));
        o.check(mine == oracle::stack_reduction_count(g, v, k),
                "graph " + std::to_string(i) + " v=" + std::to_string(v) + " k=" + std::to_string(k));
        ++comparisons;
      }
    }
  }
  for (std::size_t d : {3u, 4u}) {
    for (const auto& g : {complete_graph(d + 1), random_regular(30, d, 5).graph}) {
      o.check(backtracking_walk_count(g, 0, 2) == BigInt(d), "N2 = d");
      o.check(backtracking_walk_count(g, 0, 4) == BigInt(d * (2 * d - 1)), "N4 = d(2d-1)");
    }
  }
  const double elapsed = seconds_since(start);
  o.check(elapsed < 60.0, "runtime");
  o.detail << "comparisons=" << comparisons << " t=" << fmt(elapsed, 3) << "s";
}

// 5. Closed-walk growth bounds and the averaged cover-walk inequality.
void walk_inequalities(Outcome& o) {
  const auto start = Clock::now();
  std::size_t assertions = 0;
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const auto& g = corpus()[i];
    const std::size_t n = g.num_vertices();
    const std::size_t delta = g.max_degree();
    std::vector<std::vector<BigInt>> w(n);
    for (Vertex v = 0; v < n; ++v) w[v] = closed_walk_counts(g, v, 24);
    const auto id = std::to_string(i);
    for (Vertex x = 0; x < n; ++x) {
      const auto dist = distances_from(g, x);
      for (std::size_t k = 0; k <= 6; ++k) {
        for (Vertex y = 0; y < n; ++y) {
          o.check(w[y][2 * k] <= power(delta, 2 * dist[y]) * w[x][2 * k], "part 1, graph " + id);
          ++assertions;
        }
        for (std::size_t j = 0; j <= 6; ++j) {
          o.check(w[x][2 * k + 2 * j] <= power(delta, 2 * j) * w[x][2 * k], "part 2, graph " + id);
          ++assertions;
        }
      }
    }
    const auto orbits = orbit_distribution(g);
    for (std::size_t k = 0; k <= 6; ++k) {
      // n * sum_j p_j N_2k(v_j) <= sum_v W_2k(v), with p_j = |class j| / n.
      BigInt cover = 0;
      for (const auto& c : orbits.classes) {
        cover += BigInt(c.members.size()) * backtracking_walk_count(g, c.representative, 2 * k);
      }
      BigInt total = 0;
      for (Vertex v = 0; v < n; ++v) total += w[v][2 * k];
      o.check(cover <= total, "averaged cover inequality, graph " + id);
      ++assertions;
    }
  }
  const double elapsed = seconds_since(start);
  o.check(elapsed < 60.0, "runtime");
  o.detail << "assertions=" << assertions << " t=" << fmt(elapsed, 3) << "s";
}

// 6. Sandwich consistency.
void sandwich(Outcome& o) {
  const auto start = Clock::now();
  double worst_lower = -std::numeric_limits<double>::infinity();
  double worst_ball = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const auto& g = corpus()[i];
    const auto r = rho_tree(g);
    double lower = 0.0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      for (double x : rho_lower_sequence(g, v, 6)) lower = std::max(lower, x);
    }
    worst_lower = std::max(worst_lower, lower - r.value);
    o.check(lower <= r.value + 1e-9, "walk bound above rho_tree, graph " + std::to_string(i));
    for (const auto& c : orbit_distribution(g).classes) {
      const double ball = rho_ball_power(g, c.representative, 10).value;
      worst_ball = std::max(worst_ball, ball - r.hi);
      o.check(ball <= r.hi + 1e-9, "ball power above rho_tree.hi, graph " + std::to_string(i));
    }
  }
  const double target = 2.0 * std::sqrt(2.0) - 0.05;
  const double r12_k4 = rho_ball_power(complete_graph(4), 0, 12).value;
  const double r12_random = rho_ball_power(random_regular(100, 3, 1).graph, 0, 12).value;
  o.check(r12_k4 >= target, "3-regular R=12 ball lambda1 " + fmt(r12_k4, 8) + " < 2 sqrt 2 - 0.05 = " + fmt(target, 8));
  o.check(r12_random >= target, "random 3-regular R=12 ball");
  const double elapsed = seconds_since(start);
  o.check(elapsed < 120.0, "runtime");
  o.detail << "max(lower - rho)=" << fmt(worst_lower, 3) << " max(ball - hi)=" << fmt(worst_ball, 3)
           << " R=12 3-regular=" << fmt(r12_k4, 8) << " t=" << fmt(elapsed, 3) << "s";
}

// 7. Lift invariance.
void lift_invariance(Outcome& o) {
  const auto start = Clock::now();
  double worst_l1 = 0.0;
  double worst_rho = 0.0;
  for (const auto& base : {bowtie_graph(), complete_graph(4)}) {
    const double l1 = eigen_spectrum(base).lambda1;
    const auto base_orbits = orbit_distribution(base);
    const auto base_rho = rho_tree(base);
    for (std::size_t n : {2u, 3u, 5u}) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto lift = lift_component(random_lift(base, n, seed));
        const double dl = std::abs(eigen_spectrum(lift.graph).lambda1 - l1);
        worst_l1 = std::max(worst_l1, dl);
        o.check(dl <= 1e-8, "lambda1 of lift");
        // Lift classes must be exactly the preimages of base classes, with
        // equal proportions.
        const auto lo = orbit_distribution(lift.graph);
        std::map<std::uint32_t, std::uint32_t> to_base;
        bool consistent = lo.classes.size() == base_orbits.classes.size();
        for (Vertex x = 0; x < lift.graph.num_vertices(); ++x) {
          const auto [it, fresh] = to_base.emplace(lo.color[x], base_orbits.color[lift.projection[x]]);
          consistent = consistent && it->second == base_orbits.color[lift.projection[x]];
        }
        for (const auto& [lc, bc] : to_base) {
          consistent = consistent && lo.classes[lc].probability == base_orbits.classes[bc].probability;
        }
        o.check(consistent, "orbit proportions of lift");
        const auto r = rho_tree(lift.graph);
        const double dr = std::abs(r.value - base_rho.value);
        worst_rho = std::max(worst_rho, dr);
        o.check(dr <= (r.hi - r.lo) + (base_rho.hi - base_rho.lo), "rho_tree of lift");
      }
    }
  }
  const double elapsed = seconds_since(start);
  o.check(elapsed < 60.0, "runtime");
  o.detail << "max |dlambda1|=" << fmt(worst_l1, 3) << " max |drho|=" << fmt(worst_rho, 3) << " t=" << fmt(elapsed, 3)
           << "s";
}

// 8. Weakly Ramanujan and tree-fraction trend for random 3-regular graphs.
void random_regular_trend(Outcome& o) {
  const auto start = Clock::now();
  const double rho = 2.0 * std::sqrt(2.0);
  std::vector<double> medians;
  double tree_median_2000 = 0.0;
  for (std::size_t n : {100u, 500u, 2000u}) {
    std::vector<double> wr;
    std::vector<double> tf;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto g = random_regular(n, 3, seed);
      o.check(g.simple && g.connected, "simple connected sample");
      const double f = wr_fraction(eigen_spectrum(g.graph, {.with_perron = false}), rho, 0.01);
      o.check(f >= 0.7, "wr_fraction >= 0.7 at n=" + std::to_string(n));
      wr.push_back(f);
      tf.push_back(tree_fraction(g.graph, 2));
    }
    medians.push_back(median(wr));
    if (n == 2000) tree_median_2000 = median(tf);
  }
  for (std::size_t i = 1; i < medians.size(); ++i) o.check(medians[i] >= medians[i - 1], "median nondecreasing");
  o.check(tree_median_2000 >= 0.9, "tree_fraction median at n=2000");
  const double elapsed = seconds_since(start);
  o.check(elapsed < 300.0, "runtime");
  o.detail << "median wr=" << fmt(medians[0], 4) << "," << fmt(medians[1], 4) << "," << fmt(medians[2], 4)
           << " tree median(2000)=" << fmt(tree_median_2000, 4) << " t=" << fmt(elapsed, 3) << "s";
}

// 9. Mass transport and l-cycle combinatorics.
void mass_transport(Outcome& o) {
  const auto start = Clock::now();
  std::size_t checked = 0;
  std::size_t inequality_instances = 0;
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const auto& g = corpus()[i];
    const auto id = std::to_string(i);
    for (std::size_t l = 1; l <= 5; ++l) {
      const auto s = cycle_stats(g, l);
      for (auto c : s.per_vertex) o.check(BigInt(c) <= power(g.max_degree(), l), "Delta^l bound, graph " + id);
      for (std::uint32_t radius = 1; radius <= 4; ++radius) {
        const auto m = mass_transport_check(g, radius, l);
        o.check(m.balanced(), "lhs = rhs, graph " + id);
        if (m.hypothesis) {
          o.check(m.inequality.value_or(false), "N_R inequality, graph " + id);
          ++inequality_instances;
        }
        ++checked;
      }
    }
  }
  const double elapsed = seconds_since(start);
  o.check(elapsed < 60.0, "runtime");
  o.detail << "instances=" << checked << " with |B_R|>=R: " << inequality_instances << " t=" << fmt(elapsed, 3) << "s";
}

// 10. Unicyclic defect.
void unicyclic(Outcome& o) {
  const auto start = Clock::now();
  std::size_t used = 0;
  double worst_below = -std::numeric_limits<double>::infinity();
  double worst_dist = 0.0;
  for (const auto& g : corpus()) {
    if (used == 10) break;
    if (cyclomatic_class(g) != CyclomaticClass::kUnicyclic) continue;
    ++used;
    const double defect = unicyclic_defect(g, 10000);
    const auto r = rho_tree(g);
    worst_below = std::max(worst_below, r.lo - defect);
    worst_dist = std::max(worst_dist, std::abs(defect - r.value));
    o.check(defect >= r.lo - 1e-6, "defect >= rho_tree.lo - 1e-6 (short by " + fmt(r.lo - defect, 4) + ")");
    o.check(std::abs(defect - r.value) <= 1e-3, "defect within 1e-3 of rho_tree");
  }
  o.check(used == 10, "ten unicyclic graphs");
  const double elapsed = seconds_since(start);
  o.check(elapsed < 10.0, "runtime");
  o.detail << "graphs=" << used << " max(lo - defect)=" << fmt(worst_below, 4)
           << " max|defect - rho|=" << fmt(worst_dist, 4) << " t=" << fmt(elapsed, 3) << "s";
}

struct Criterion {
  const char* name;
  std::function<void(Outcome&)> run;
};

const std::vector<Criterion> kCriteria = {
    {"bowtie lambda1, rho(T) and gap", bowtie_numbers},
    {"regular covers give 2 sqrt(d-1)", regular_covers},
    {"spectral-gap dichotomy on all small multigraphs", gap_dichotomy},
    {"backtracking walk counts match brute force", walk_oracle},
    {"closed-walk inequalities", walk_inequalities},
    {"rho estimator sandwich", sandwich},
    {"lift invariance", lift_invariance},
    {"random 3-regular weakly Ramanujan trend", random_regular_trend},
    {"mass transport and l-cycle bounds", mass_transport},
    {"unicyclic defect convergence", unicyclic},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) selected.push_back(static_cast<std::size_t>(std::strtoul(argv[i], nullptr, 10)));
  } else {
    for (std::size_t i = 1; i <= kCriteria.size(); ++i) selected.push_back(i);
  }
  int failures = 0;
  for (std::size_t id : selected) {
    if (id < 1 || id > kCriteria.size()) {
      std::cerr << "unknown criterion " << id << '\n';
      return 2;
    }
    Outcome o;
    try {
      kCriteria[id - 1].run(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << kCriteria[id - 1].name << " | "
              << o.detail.str() << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
