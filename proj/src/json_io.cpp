#include "pushcert/json_io.hpp"

#include "pushcert/errors.hpp"

#include <fstream>
#include <set>

namespace pushcert {

namespace {

Rational parse_rational_field(const Json& j, const std::string& where) {
    if (!j.is_string()) {
        fail(ErrorKind::Validation, where + ": rationals must be strings like \"1/3\"");
    }
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        fail(ErrorKind::Validation, where + ": " + e.what());
    }
}

} // namespace

DiscreteMeasure measure_from_json(const Json& j) {
    if (!j.is_object()) {
        fail(ErrorKind::Validation, "measure: expected a JSON object");
    }
    if (!j.contains("dimension") || !j["dimension"].is_number_integer()) {
        fail(ErrorKind::Validation, "measure: missing integer field \"dimension\"");
    }
    const int dimension = j["dimension"].get<int>();
    if (dimension < 1) {
        fail(ErrorKind::Validation, "measure: dimension must be >= 1");
    }
    const Rational declared_mass = j.contains("mass")
                                       ? parse_rational_field(j["mass"], "measure.mass")
                                       : Rational(1);
    if (!j.contains("atoms") || !j["atoms"].is_array()) {
        fail(ErrorKind::Validation, "measure: missing array field \"atoms\"");
    }
    std::vector<Atom> atoms;
    std::set<std::string> ids;
    std::size_t index = 0;
    for (const auto& entry : j["atoms"]) {
        const std::string where = "measure.atoms[" + std::to_string(index) + "]";
        if (!entry.is_object() || !entry.contains("coords") || !entry.contains("weight")) {
            fail(ErrorKind::Validation, where + ": expected {coords, weight}");
        }
        if (!entry["coords"].is_array() ||
            static_cast<int>(entry["coords"].size()) != dimension) {
            fail(ErrorKind::Validation,
                 where + ".coords: expected " + std::to_string(dimension) + " entries");
        }
        Coords coords;
        for (const auto& c : entry["coords"]) {
            coords.push_back(parse_rational_field(c, where + ".coords"));
        }
        const Rational weight = parse_rational_field(entry["weight"], where + ".weight");
        if (weight <= 0) {
            fail(ErrorKind::Validation, where + ".weight: must be strictly positive");
        }
        Point point;
        point.coords = std::move(coords);
        if (entry.contains("id")) {
            if (!entry["id"].is_string()) {
                fail(ErrorKind::Validation, where + ".id: must be a string");
            }
            point.id = entry["id"].get<std::string>();
        } else {
            point.id = coords_to_string(point.coords);
        }
        if (!ids.insert(point.id).second) {
            fail(ErrorKind::Validation, where + ".id: duplicate id \"" + point.id + "\"");
        }
        atoms.push_back(Atom{std::move(point), weight});
        ++index;
    }
    DiscreteMeasure measure(dimension, std::move(atoms));
    if (measure.mass() != declared_mass) {
        fail(ErrorKind::Validation,
             "measure: atom weights sum to " + rational_to_string(measure.mass()) +
                 ", declared mass is " + rational_to_string(declared_mass));
    }
    return measure;
}

DiscreteMeasure measure_from_string(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        fail(ErrorKind::Validation, "measure: invalid JSON");
    }
    return measure_from_json(j);
}

DiscreteMeasure measure_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::Validation, "cannot open measure file: " + path);
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return measure_from_string(text);
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.what());
    }
}

Json measure_to_json(const DiscreteMeasure& m) {
    Json atoms = Json::array();
    for (const auto& atom : m.atoms()) {
        Json coords = Json::array();
        for (const auto& c : atom.point.coords) coords.push_back(rational_to_string(c));
        atoms.push_back(Json{{"id", atom.point.id},
                             {"coords", std::move(coords)},
                             {"weight", rational_to_string(atom.weight)}});
    }
    return Json{{"dimension", m.dimension()},
                {"mass", rational_to_string(m.mass())},
                {"atoms", std::move(atoms)}};
}

Json finite_map_to_json(const FiniteMap& f) {
    Json entries = Json::array();
    for (const auto& entry : f.entries()) {
        Json coords = Json::array();
        for (const auto& c : entry.from.coords) coords.push_back(rational_to_string(c));
        Json value = Json::array();
        for (const auto& v : entry.value) value.push_back(rational_to_string(v));
        entries.push_back(Json{{"id", entry.from.id},
                               {"coords", std::move(coords)},
                               {"value", std::move(value)}});
    }
    return Json{{"codomain_dimension", f.codomain_dimension()}, {"entries", std::move(entries)}};
}

Json assignment_map_to_json(const FiniteMap& f, const DiscreteMeasure& q) {
    Json map = Json::object();
    for (const auto& entry : f.entries()) {
        const auto target = q.find_point(entry.value);
        if (!target) {
            fail(ErrorKind::Internal, "assignment image is not a support point of Q");
        }
        map[entry.from.id] = target->id;
    }
    return Json{{"map", std::move(map)}};
}

Json witness_to_json(const WitnessPair& w) {
    return Json{{"t", rational_to_string(w.t)},
                {"f", finite_map_to_json(w.f)},
                {"g", finite_map_to_json(w.g)},
                {"push_forwards",
                 Json{{"fP", measure_to_json(w.f_push_p)},
                      {"fQ", measure_to_json(w.f_push_q)},
                      {"gP", measure_to_json(w.g_push_p)},
                      {"gQ", measure_to_json(w.g_push_q)},
                      {"midP", measure_to_json(w.mid_push_p)},
                      {"midQ", measure_to_json(w.mid_push_q)}}}};
}

Json evidence_to_json(const TransportEvidence& e, const DiscreteMeasure& q) {
    return Json{{"t", rational_to_string(e.t)},
                {"f", assignment_map_to_json(e.f, q)},
                {"g", assignment_map_to_json(e.g, q)},
                {"push_forwards",
                 Json{{"fP", measure_to_json(e.f_push_p)},
                      {"gP", measure_to_json(e.g_push_p)},
                      {"midP", measure_to_json(e.mid_push_p)}}}};
}

namespace {

Json subset_json(SubsetMask mask) {
    Json out = Json::array();
    for (std::size_t idx : subset_indices(mask)) out.push_back(idx);
    return out;
}

Json violation_json(const ConditionViolation& violation) {
    Json out{{"condition", violation_code(violation)},
             {"description", violation_to_string(violation)}};
    if (const auto* v = std::get_if<NonUniqueCouple>(&violation)) {
        out["side"] = v->side == Side::P ? "P" : "Q";
        out["common_sum"] = rational_to_string(v->common_sum);
        out["first_subset"] = subset_json(v->first);
        out["second_subset"] = subset_json(v->second);
    } else if (const auto* v = std::get_if<NotSigmaAlgebra>(&violation)) {
        out["side"] = v->side == Side::P ? "P" : "Q";
        out["sums"] = Json::array({rational_to_string(v->sum_a), rational_to_string(v->sum_b)});
        out["members"] = Json::array({subset_json(v->member_a), subset_json(v->member_b)});
        out["unindexed_intersection"] = subset_json(v->intersection);
    } else {
        const auto& lm = std::get<LabelMismatch>(violation);
        out["sums"] =
            Json::array({rational_to_string(lm.sum_a), rational_to_string(lm.sum_b)});
        out["p_label"] = rational_to_string(lm.p_label);
        out["q_label"] = rational_to_string(lm.q_label);
    }
    return out;
}

} // namespace

Json equalizer_report_to_json(const EqualizerReport& report) {
    Json out{{"schema", kSchemaVersion},
             {"analysis", "equalizer"},
             {"verdict", verdict_name(report.verdict)},
             {"decided_by", report.violation ? violation_code(*report.violation)
                                             : path_name(report.path)},
             {"reduction",
              Json{{"residual_mass", rational_to_string(report.residual_mass)},
                   {"p_residual", measure_to_json(report.p_residual)},
                   {"q_residual", measure_to_json(report.q_residual)}}}};
    if (!report.blocks.empty()) {
        Json blocks = Json::array();
        for (const auto& block : report.blocks) {
            Json p_points = Json::array(), q_points = Json::array();
            for (const auto& pt : block.p_points) p_points.push_back(pt.id);
            for (const auto& pt : block.q_points) q_points.push_back(pt.id);
            blocks.push_back(Json{{"mass", rational_to_string(block.block_mass)},
                                  {"p_points", std::move(p_points)},
                                  {"q_points", std::move(q_points)}});
        }
        out["structure"] = Json{{"blocks", std::move(blocks)}};
    }
    if (report.violation) out["violation"] = violation_json(*report.violation);
    if (report.witness) out["witness"] = witness_to_json(*report.witness);
    return out;
}

Json transport_report_to_json(const TransportReport& report, const DiscreteMeasure& q) {
    Json out{{"schema", kSchemaVersion},
             {"analysis", "transport"},
             {"verdict", verdict_name(report.verdict)},
             {"count", report.count.value.str()},
             {"count_is_lower_bound", report.count.is_lower_bound},
             {"uniform_shortcut", report.used_uniform_shortcut}};
    if (report.representative) {
        out["representative"] = assignment_map_to_json(*report.representative, q);
    }
    if (report.evidence) out["witness"] = evidence_to_json(*report.evidence, q);
    return out;
}

Json equalizer_oracle_to_json(const EqualizerOracleVerdict& verdict) {
    Json out{{"schema", kSchemaVersion},
             {"analysis", "oracle"},
             {"kind", "equalizer"},
             {"verdict",
              verdict.found() ? "counterexample_found" : "no_counterexample_in_family"},
             {"family", verdict.family},
             {"functions_enumerated", verdict.functions_enumerated},
             {"members_found", verdict.members_found},
             {"pairs_checked", verdict.pairs_checked}};
    if (verdict.counterexample) out["witness"] = witness_to_json(*verdict.counterexample);
    return out;
}

Json transport_oracle_to_json(const TransportOracleVerdict& verdict,
                              const DiscreteMeasure& q) {
    Json out{{"schema", kSchemaVersion},
             {"analysis", "oracle"},
             {"kind", "transport"},
             {"verdict",
              verdict.found() ? "counterexample_found" : "no_counterexample_in_family"},
             {"family", verdict.family},
             {"assignments_scanned", verdict.assignments_scanned},
             {"members_found", verdict.members_found},
             {"pairs_checked", verdict.pairs_checked}};
    if (verdict.counterexample) out["witness"] = evidence_to_json(*verdict.counterexample, q);
    return out;
}

Json certificate_to_json(const NonconvexityCertificate& certificate) {
    return Json{{"schema", kSchemaVersion},
                {"analysis", "certificate"},
                {"loss", certificate.loss},
                {"f", finite_map_to_json(certificate.f)},
                {"g", finite_map_to_json(certificate.g)},
                {"loss_f", rational_to_string(certificate.loss_f)},
                {"loss_g", rational_to_string(certificate.loss_g)},
                {"loss_mid", rational_to_string(certificate.loss_mid)}};
}

Json monte_carlo_report_to_json(const MonteCarloReport& report) {
    Json details = Json::object();
    for (const auto& [key, value] : report.details) details[key] = value;
    return Json{{"name", report.name},
                {"sample_size", report.sample_size},
                {"seed", report.seed},
                {"chunk_count", report.chunk_count},
                {"statistic", report.statistic_name},
                {"value", report.statistic},
                {"threshold", report.threshold},
                {"pass", report.pass},
                {"details", std::move(details)}};
}

} // namespace pushcert
