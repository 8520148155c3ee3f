#pragma once

#include "pushcert/continuum.hpp"
#include "pushcert/equalizer.hpp"
#include "pushcert/loss.hpp"
#include "pushcert/measure.hpp"
#include "pushcert/oracle.hpp"
#include "pushcert/transport.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace pushcert {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

/// Measure file format:
///   {"dimension": d, "mass": "1", "atoms": [{"id": "x1",
///    "coords": ["0","1/2"], "weight": "1/3"}, ...]}
/// Rationals are "p/q" or integer strings; mass defaults to "1". Rejects
/// nonpositive weights, duplicate coordinates or ids, and weight sums that
/// differ from the declared mass.
DiscreteMeasure measure_from_json(const Json& j);
DiscreteMeasure measure_from_string(const std::string& text);
DiscreteMeasure measure_from_file(const std::string& path);
Json measure_to_json(const DiscreteMeasure& m);

Json finite_map_to_json(const FiniteMap& f);
/// Transport maps between explicit supports serialize as id -> id.
Json assignment_map_to_json(const FiniteMap& f, const DiscreteMeasure& q);

Json witness_to_json(const WitnessPair& w);
Json evidence_to_json(const TransportEvidence& e, const DiscreteMeasure& q);
Json equalizer_report_to_json(const EqualizerReport& report);
Json transport_report_to_json(const TransportReport& report, const DiscreteMeasure& q);
Json equalizer_oracle_to_json(const EqualizerOracleVerdict& verdict);
Json transport_oracle_to_json(const TransportOracleVerdict& verdict,
                              const DiscreteMeasure& q);
Json certificate_to_json(const NonconvexityCertificate& certificate);
Json monte_carlo_report_to_json(const MonteCarloReport& report);

} // namespace pushcert
