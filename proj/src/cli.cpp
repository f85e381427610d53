#include "cover_spectra/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "cover_spectra/error.hpp"
#include "cover_spectra/gap_cert.hpp"
#include "cover_spectra/generators.hpp"
#include "cover_spectra/local_stats.hpp"
#include "cover_spectra/report.hpp"

namespace cover_spectra::cli {

std::size_t thread_count() {
  const char* env = std::getenv("COVER_SPECTRA_THREADS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || value < 1) return 1;
  return static_cast<std::size_t>(value);
}

namespace {

void emit(std::ostream& out, const Json& body) { out << with_schema(body).dump() << '\n'; }

void emit_error(std::ostream& err, std::string_view kind, std::string_view message) {
  Json j;
  j["schema"] = kSchema;
  j["error"] = {{"kind", kind}, {"message", message}};
  err << j.dump() << '\n';
}

Vertex checked_vertex(const MultiGraph& g, std::uint64_t v) {
  require(v < g.num_vertices(), "vertex " + std::to_string(v) + " out of range (n = " +
                                    std::to_string(g.num_vertices()) + ")");
  return static_cast<Vertex>(v);
}

std::vector<ExperimentRow> run_experiment(const std::function<MultiGraph(std::size_t, std::uint64_t)>& build,
                                          const std::vector<std::size_t>& sizes,
                                          const std::vector<std::uint64_t>& seeds, std::uint32_t radius,
                                          double rho, double eta) {
  std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
  for (auto n : sizes) {
    for (auto s : seeds) jobs.emplace_back(n, s);
  }
  std::vector<ExperimentRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        const auto [n, seed] = jobs[i];
        const MultiGraph g = build(n, seed);
        const Spectrum s = eigen_spectrum(g, {.with_perron = false});
        rows[i] = {n, seed, wr_fraction(s, rho, eta), tree_fraction(g, radius), rho, s.lambda1};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(thread_count(), std::max<std::size_t>(jobs.size(), 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.n, a.seed) < std::tie(b.n, b.seed);
  });
  return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << "n,seed,wr_fraction,tree_fraction,rho,lambda1\n" << std::setprecision(12);
  for (const auto& r : rows) {
    out << r.n << ',' << r.seed << ',' << r.wr_fraction << ',' << r.tree_fraction << ',' << r.rho << ','
        << r.lambda1 << '\n';
  }
  return out.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorKind::kParse, "cannot write '" + path + "'");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adjacency spectra of finite multigraphs versus the spectral radius of their universal cover",
               "cover_spectra"};
  app.require_subcommand(1);
  int status = kOk;

  // spectra
  std::string file;
  double rho_flag = -1.0;
  double eta = kDefaultEta;
  std::size_t dense_cap = SpectrumOptions{}.dense_cap;
  auto* spectra = app.add_subcommand("spectra", "Adjacency eigenvalues and the weakly Ramanujan fraction");
  spectra->add_option("graph", file, "Graph file")->required();
  spectra->add_option("--rho", rho_flag, "Threshold rho (default: rho_tree of the graph)");
  spectra->add_option("--eta", eta, "Slack added to rho")->capture_default_str();
  spectra->add_option("--dense-cap", dense_cap, "Largest n for a full spectrum")->capture_default_str();

  RhoOptions rho_options;
  auto* rho = app.add_subcommand("rho", "Spectral radius of the universal cover tree");
  rho->add_option("graph", file)->required();
  rho->add_option("--tol", rho_options.tol, "Bracket width")->capture_default_str();
  rho->add_option("--iteration-cap", rho_options.iteration_cap, "Iterations per probe")->capture_default_str();
  rho->add_option("--walk-k", rho_options.walk_half_length, "Half-length for the walk lower bound")
      ->capture_default_str();

  auto* wr = app.add_subcommand("wr", "Fraction of eigenvalues with |lambda| <= rho + eta");
  wr->add_option("graph", file)->required();
  wr->add_option("--rho", rho_flag, "Threshold rho (default: rho_tree of the graph)");
  wr->add_option("--eta", eta)->capture_default_str();

  std::uint32_t radius = 2;
  auto* treefrac = app.add_subcommand("treefrac", "Fraction of vertices whose r-ball is a tree");
  treefrac->add_option("graph", file)->required();
  treefrac->add_option("--r", radius, "Radius")->capture_default_str();

  auto* core = app.add_subcommand("core", "2-core with interior and exterior half-edges");
  core->add_option("graph", file)->required();

  CertifyOptions certify_options;
  auto* certify = app.add_subcommand("certify", "Spectral-gap certificate for a multicyclic graph");
  certify->add_option("graph", file)->required();
  certify->add_option("--max-gamma-exponent", certify_options.max_gamma_exponent)->capture_default_str();
  certify->add_option("--max-delta-power", certify_options.max_delta_power)->capture_default_str();
  certify->add_flag("!--no-cross-check", certify_options.cross_check, "Skip the comparison with rho_tree");

  std::uint64_t copies = 10000;
  auto* unicyclic = app.add_subcommand("unicyclic", "Test-vector lower bound for rho(T) of a unicyclic graph");
  unicyclic->add_option("graph", file)->required();
  unicyclic->add_option("--copies", copies, "Number of cycle copies N")->capture_default_str();

  std::uint64_t vertex = 0;
  std::size_t walk_k = 8;
  auto* walks = app.add_subcommand("walks", "Closed and purely backtracking walk counts at a vertex");
  walks->add_option("graph", file)->required();
  walks->add_option("--vertex", vertex)->capture_default_str();
  walks->add_option("--k", walk_k, "Longest walk length")->capture_default_str();

  auto* orbits = app.add_subcommand("orbits", "Rooted-cover types (coarsest equitable partition)");
  orbits->add_option("graph", file)->required();

  std::uint32_t bouquet_k = 3;
  std::size_t length = 3;
  auto* bouquet = app.add_subcommand("bouquet", "Two disjoint l-cycles near a vertex");
  bouquet->add_option("graph", file)->required();
  bouquet->add_option("--vertex", vertex)->capture_default_str();
  bouquet->add_option("--k", bouquet_k)->capture_default_str();
  bouquet->add_option("--l", length)->capture_default_str();

  std::string compare_file;
  std::string csv_path;
  std::vector<std::size_t> lengths;
  std::size_t canon_cap = kDefaultCanonCap;
  auto* bs = app.add_subcommand("bs-dist", "Histogram of rooted r-ball isomorphism types");
  bs->add_option("graph", file)->required();
  bs->add_option("--r", radius)->capture_default_str();
  bs->add_option("--compare", compare_file, "Second graph for a total-variation distance");
  bs->add_option("--csv", csv_path, "Also write the histogram as CSV");
  bs->add_option("--cycles", lengths, "Cycle lengths to summarize")->delimiter(',');
  bs->add_option("--cap", canon_cap, "Largest ball to canonicalize")->capture_default_str();

  std::string family;
  std::map<std::string, std::uint64_t> params;
  std::vector<std::string> param_names = {"n", "d", "k", "a", "b", "c", "p", "q", "seed"};
  std::map<std::string, std::uint64_t> param_values;
  auto* gen = app.add_subcommand("gen", "Generate a graph family in the graph file format");
  gen->add_option("family", family)->required()->check(CLI::IsMember(family_names()));
  for (const auto& name : param_names) gen->add_option("--" + name, param_values[name]);

  std::size_t lift_n = 2;
  std::uint64_t seed = 1;
  auto* lift = app.add_subcommand("lift", "Uniform random n-lift of a graph");
  lift->add_option("graph", file)->required();
  lift->add_option("--n", lift_n)->capture_default_str();
  lift->add_option("--seed", seed)->capture_default_str();

  std::vector<std::size_t> sizes;
  std::vector<std::uint64_t> seeds = {1};
  std::string base_file;
  std::string out_path;
  double exp_eta = 0.01;
  std::uint64_t degree = 3;
  auto* experiment = app.add_subcommand("experiment", "Sweep sizes and seeds; CSV of wr and tree fractions");
  experiment->add_option("--family", family, "random_regular, cycle, complete, path, or lift")->required();
  experiment->add_option("--d", degree, "Degree for random_regular")->capture_default_str();
  experiment->add_option("--sizes", sizes)->required()->delimiter(',');
  experiment->add_option("--seeds", seeds)->delimiter(',')->capture_default_str();
  experiment->add_option("--r", radius)->capture_default_str();
  experiment->add_option("--eta", exp_eta)->capture_default_str();
  experiment->add_option("--base", base_file, "Base graph for --family lift");
  experiment->add_option("--out", out_path, "CSV path (default: stdout)");

  std::size_t max_n = 5;
  std::size_t max_m = 7;
  double dichotomy_tol = 1e-6;
  auto* verify = app.add_subcommand("verify-thm2", "Exhaustive spectral-gap dichotomy check on small multigraphs");
  verify->add_option("--max-n", max_n)->capture_default_str();
  verify->add_option("--max-m", max_m)->capture_default_str();
  verify->add_option("--tol", dichotomy_tol)->capture_default_str();

  std::vector<std::string> argv_storage{"cover_spectra"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return kUsage;
  }

  try {
    auto graph = [&] { return read_graph_file(file); };
    auto rho_of = [&](const MultiGraph& g) { return rho_flag >= 0 ? rho_flag : rho_tree(g).value; };

    if (spectra->parsed()) {
      const auto g = graph();
      const auto s = eigen_spectrum(g, {.dense_cap = dense_cap, .with_perron = false});
      emit(out, spectrum_json(g, s, rho_of(g), eta));
    } else if (rho->parsed()) {
      const auto r = rho_tree(graph(), rho_options);
      emit(out, rho_json(r));
      if (r.any_probe_hit_cap || !r.hi_certified) status = kContract;
    } else if (wr->parsed()) {
      const auto g = graph();
      const auto s = eigen_spectrum(g, {.with_perron = false});
      const double used = rho_of(g);
      emit(out, {{"wr_fraction", wr_fraction(s, used, eta)}, {"rho_used", used}, {"eta", eta}});
    } else if (treefrac->parsed()) {
      emit(out, {{"r", radius}, {"tree_fraction", tree_fraction(graph(), radius)}});
    } else if (core->parsed()) {
      const auto g = graph();
      emit(out, core_json(g, two_core(g)));
    } else if (certify->parsed()) {
      const auto g = graph();
      emit(out, certificate_json(g, certify_gap(g, certify_options)));
    } else if (unicyclic->parsed()) {
      const auto g = graph();
      const double defect = unicyclic_defect(g, copies);
      const auto r = rho_tree(g);
      emit(out, {{"copies", copies}, {"defect", defect}, {"rho", r.value}, {"lo", r.lo}, {"hi", r.hi}});
    } else if (walks->parsed()) {
      const auto g = graph();
      const Vertex v = checked_vertex(g, vertex);
      const auto back = backtracking_walk_counts(g, v, walk_k / 2);
      const auto closed = closed_walk_counts(g, v, walk_k);
      Json jb = Json::array();
      Json jc = Json::array();
      for (std::size_t k = 0; k <= walk_k; ++k) {
        jb.push_back(k % 2 ? std::string("0") : back[k / 2].str());
        jc.push_back(closed[k].str());
      }
      emit(out, {{"vertex", v}, {"backtracking", jb}, {"closed", jc}});
    } else if (orbits->parsed()) {
      emit(out, orbits_json(orbit_distribution(graph())));
    } else if (bouquet->parsed()) {
      const auto g = graph();
      emit(out, bouquet_json(find_bouquet(g, checked_vertex(g, vertex), bouquet_k, length)));
    } else if (bs->parsed()) {
      const auto g = graph();
      require(radius >= 1, "bs-dist: radius must be at least 1");
      LocalStatsReport report;
      report.radius = radius;
      report.histogram = bs_histogram(g, radius, canon_cap);
      report.tree_fraction = tree_fraction(g, radius);
      for (auto l : lengths) report.cycles.push_back(cycle_stats(g, l));
      Json j = local_stats_json(report);
      if (!compare_file.empty()) {
        j["tv_distance"] = tv_distance(report.histogram, bs_histogram(read_graph_file(compare_file), radius, canon_cap));
      }
      if (!csv_path.empty()) write_text(csv_path, histogram_csv(report.histogram), out);
      emit(out, j);
    } else if (gen->parsed()) {
      for (const auto& name : param_names) {
        if (gen->count("--" + name) > 0) params[name] = param_values[name];
      }
      const auto generated = make(family, params);
      if (!generated.simple || !generated.connected) {
        out << "# warning: " << (generated.connected ? "" : "disconnected ") << (generated.simple ? "" : "non-simple ")
            << "output after " << kRandomRegularAttempts << " attempts\n";
      }
      out << write_graph(generated.graph);
    } else if (lift->parsed()) {
      const auto l = random_lift(graph(), lift_n, seed);
      out << "# lift n=" << lift_n << " seed=" << seed << " components=" << l.components << '\n';
      out << write_graph(l.graph);
    } else if (experiment->parsed()) {
      require(!sizes.empty(), "experiment: --sizes must not be empty");
      require(exp_eta > 0, "experiment: --eta must be positive");
      require(radius >= 1, "experiment: --r must be at least 1");
      std::function<MultiGraph(std::size_t, std::uint64_t)> build;
      MultiGraph base;
      if (family == "lift") {
        require(!base_file.empty(), "experiment: --family lift needs --base");
        base = read_graph_file(base_file);
        build = [&](std::size_t n, std::uint64_t s) { return lift_component(random_lift(base, n, s)).graph; };
      } else if (family == "random_regular") {
        base = complete_graph(degree + 1);
        build = [&](std::size_t n, std::uint64_t s) { return random_regular(n, degree, s).graph; };
      } else if (family == "cycle" || family == "complete" || family == "path") {
        base = make(family, {{"n", sizes.front()}}).graph;
        build = [&](std::size_t n, std::uint64_t) { return make(family, {{"n", n}}).graph; };
      } else {
        fail(ErrorKind::kPrecondition, "experiment: unsupported family '" + family + "'");
      }
      const double base_rho = rho_tree(base).value;
      const auto rows = run_experiment(build, sizes, seeds, radius, base_rho, exp_eta);
      write_text(out_path, experiment_csv(rows), out);
    } else if (verify->parsed()) {
      const auto corpus = small_multigraph_corpus(max_n, max_m);
      std::size_t failures = 0;
      out << "index n m class lambda1 rho margin result detail\n" << std::setprecision(10);
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto row = check_gap_dichotomy(corpus[i], dichotomy_tol);
        failures += !row.pass;
        out << i << ' ' << corpus[i].num_vertices() << ' ' << corpus[i].num_edges() << ' ' << to_string(row.cls)
            << ' ' << row.lambda1 << ' ' << row.rho_value << ' ' << row.margin << ' '
            << (row.pass ? "PASS" : "FAIL") << ' ' << row.detail << '\n';
      }
      out << "summary graphs=" << corpus.size() << " failures=" << failures << '\n';
      if (failures > 0) status = kContract;
    }
  } catch (const Error& e) {
    emit_error(err, to_string(e.kind()), e.what());
    return kFailure;
  } catch (const std::exception& e) {
    emit_error(err, "internal", e.what());
    return kFailure;
  }
  return status;
}

}  // namespace cover_spectra::cli
