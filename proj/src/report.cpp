#include "cover_spectra/report.hpp"

namespace cover_spectra {

Json with_schema(const Json& body) {
  Json out;
  out["schema"] = kSchema;
  for (const auto& [key, value] : body.items()) out[key] = value;
  return out;
}

std::string rational_string(const Rational& q) { return q.str(); }

Json spectrum_json(const MultiGraph& g, const Spectrum& s, double rho_used, double eta) {
  Json j;
  j["n"] = g.num_vertices();
  j["m"] = g.num_edges();
  j["eigenvalues"] = s.eigenvalues;
  j["lambda1"] = s.lambda1;
  j["complete"] = s.complete;
  j["wr_fraction"] = s.complete ? Json(wr_fraction(s, rho_used, eta)) : Json(nullptr);
  j["rho_used"] = rho_used;
  j["eta"] = eta;
  return j;
}

Json rho_json(const RhoResult& r) {
  Json j;
  j["rho"] = r.value;
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  j["tol"] = r.tol;
  j["iterations_per_probe"] = r.iterations_per_probe;
  j["vertex_slack_min"] = r.vertex_slack_min;
  j["walk_lower_bound"] = r.walk_lower_bound;
  j["hi_certified"] = r.hi_certified;
  j["any_probe_hit_cap"] = r.any_probe_hit_cap;
  return j;
}

Json orbits_json(const OrbitDistribution& d) {
  Json classes = Json::array();
  for (const auto& c : d.classes) {
    classes.push_back({{"representative", c.representative},
                       {"size", c.members.size()},
                       {"p", to_double(c.probability)},
                       {"p_exact", rational_string(c.probability)}});
  }
  return {{"classes", classes}, {"rounds", d.rounds}};
}

Json core_json(const MultiGraph& g, const CoreDecomposition& core) {
  auto half_edges = [&](const std::vector<HalfEdge>& hs) {
    Json arr = Json::array();
    for (HalfEdge h : hs) arr.push_back({{"id", h}, {"u", g.source(h)}, {"v", g.target(h)}});
    return arr;
  };
  return {{"class", to_string(cyclomatic_class(g))},
          {"core_vertices", core.core_vertices},
          {"ext_vertices", core.ext_vertices},
          {"depth", core.depth},
          {"int_half_edges", half_edges(core.int_half_edges)},
          {"ext_half_edges", half_edges(core.ext_half_edges)}};
}

Json certificate_json(const MultiGraph& g, const GapCertificate& c) {
  Json gamma_weights = Json::object();
  for (const auto& [h, steps] : c.gamma_weights.steps) {
    gamma_weights[std::to_string(h)] = {{"u", g.source(h)},
                                        {"v", g.target(h)},
                                        {"value", c.gamma_weights.at(h)},
                                        {"exact", rational_string(c.gamma_weights.exact(h))}};
  }
  Json delta_weights = Json::object();
  for (const auto& [h, q] : c.delta_weights) {
    delta_weights[std::to_string(h)] = {
        {"u", g.source(h)}, {"v", g.target(h)}, {"value", to_double(q)}, {"exact", rational_string(q)}};
  }
  Json values = Json::array();
  for (const auto& v : c.g_values) values.push_back({{"role", to_string(v.role)}, {"id", v.id}, {"g", v.value}});
  Json j;
  j["gamma"] = c.gamma;
  j["delta"] = c.delta;
  j["epsilon_chain_step"] = to_double(c.gamma_weights.epsilon);
  j["margin"] = c.margin;
  j["gamma_weights"] = gamma_weights;
  j["delta_weights"] = delta_weights;
  j["g_max"] = c.g_max;
  j["rho_upper_implied"] = c.rho_upper_implied();
  j["lambda1"] = c.rho_g;
  j["g_values"] = values;
  j["rho_tree_hi"] = c.rho_tree_hi ? Json(*c.rho_tree_hi) : Json(nullptr);
  return j;
}

Json cycle_json(const Cycle& c) { return {{"vertices", c.vertices}, {"edges", c.edges}}; }

Json bouquet_json(const std::optional<Bouquet>& b) {
  if (!b) return {{"found", false}};
  return {{"found", true},
          {"first", cycle_json(b->first)},
          {"second", cycle_json(b->second)},
          {"r1", b->r1},
          {"r2", b->r2}};
}

Json local_stats_json(const LocalStatsReport& r) {
  Json cycles = Json::array();
  for (const auto& c : r.cycles) {
    cycles.push_back({{"length", c.length},
                      {"num_cycles", c.num_cycles},
                      {"fraction_on_cycle", c.fraction_on_cycle},
                      {"max_per_vertex", c.max_per_vertex}});
  }
  Json histogram = Json::object();
  for (const auto& [code, count] : r.histogram) histogram[code] = count;
  return {{"radius", r.radius}, {"tree_fraction", r.tree_fraction}, {"histogram", histogram}, {"cycles", cycles}};
}

Json mass_transport_json(const MassTransport& m) {
  return {{"lhs", rational_string(m.lhs)},
          {"rhs", rational_string(m.rhs)},
          {"balanced", m.balanced()},
          {"hypothesis", m.hypothesis},
          {"avg_cycles_near", rational_string(m.avg_cycles_near)},
          {"bound", rational_string(m.bound)},
          {"inequality", m.inequality ? Json(*m.inequality) : Json(nullptr)}};
}

}  // namespace cover_spectra
