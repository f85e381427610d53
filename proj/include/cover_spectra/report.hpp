#pragma once

#include <optional>

#include "json.hpp"

#include "cover_spectra/cover.hpp"
#include "cover_spectra/gap_cert.hpp"
#include "cover_spectra/local_stats.hpp"
#include "cover_spectra/multigraph.hpp"
#include "cover_spectra/rho.hpp"
#include "cover_spectra/spectra.hpp"

namespace cover_spectra {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "cover-spectra/1";

/// {"schema": kSchema} followed by the fields of `body`.
Json with_schema(const Json& body);

Json spectrum_json(const MultiGraph& g, const Spectrum& s, double rho_used, double eta);
Json rho_json(const RhoResult& r);
Json orbits_json(const OrbitDistribution& d);
Json core_json(const MultiGraph& g, const CoreDecomposition& core);
Json certificate_json(const MultiGraph& g, const GapCertificate& c);
Json cycle_json(const Cycle& c);
Json bouquet_json(const std::optional<Bouquet>& b);
Json local_stats_json(const LocalStatsReport& r);
Json mass_transport_json(const MassTransport& m);

std::string rational_string(const Rational& q);

}  // namespace cover_spectra
