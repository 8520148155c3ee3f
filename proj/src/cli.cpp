#include "pushcert/cli.hpp"

#include "pushcert/continuum.hpp"
#include "pushcert/equalizer.hpp"
#include "pushcert/errors.hpp"
#include "pushcert/json_io.hpp"
#include "pushcert/loss.hpp"
#include "pushcert/oracle.hpp"
#include "pushcert/transport.hpp"

#include <CLI11.hpp>

#include <ostream>

namespace pushcert {

namespace {

std::string measure_summary(const DiscreteMeasure& m) {
    std::string out = "{";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i > 0) out += ", ";
        out += coords_to_string(m.atoms()[i].point.coords) + ": " +
               rational_to_string(m.atoms()[i].weight);
    }
    return out + "}";
}

std::string map_summary(const FiniteMap& f) {
    std::string out;
    for (std::size_t i = 0; i < f.entries().size(); ++i) {
        if (i > 0) out += "; ";
        out += f.entries()[i].from.id + " -> " + coords_to_string(f.entries()[i].value);
    }
    return out;
}

void print_equalizer_human(const EqualizerReport& report, std::ostream& out) {
    out << "verdict: " << verdict_name(report.verdict) << "\n";
    out << "decided by: "
        << (report.violation ? violation_code(*report.violation) : path_name(report.path))
        << "\n";
    out << "residual mass: " << rational_to_string(report.residual_mass) << "\n";
    if (!report.blocks.empty()) {
        out << "blocks every equalizing map must send to one value:\n";
        for (const auto& block : report.blocks) {
            out << "  mass " << rational_to_string(block.block_mass) << ": {";
            bool first = true;
            for (const auto& pt : block.p_points) {
                out << (first ? "" : ", ") << pt.id;
                first = false;
            }
            for (const auto& pt : block.q_points) {
                out << (first ? "" : ", ") << pt.id;
                first = false;
            }
            out << "}\n";
        }
    }
    if (report.violation) {
        out << "violation: " << violation_to_string(*report.violation) << "\n";
    }
    if (report.witness) {
        const auto& w = *report.witness;
        out << "witness (t = " << rational_to_string(w.t) << "):\n";
        out << "  f: " << map_summary(w.f) << "\n";
        out << "  g: " << map_summary(w.g) << "\n";
        out << "  f#P = f#Q: " << measure_summary(w.f_push_p) << "\n";
        out << "  g#P = g#Q: " << measure_summary(w.g_push_p) << "\n";
        out << "  mid#P: " << measure_summary(w.mid_push_p) << "\n";
        out << "  mid#Q: " << measure_summary(w.mid_push_q) << "\n";
    }
}

void print_transport_human(const TransportReport& report, std::ostream& out) {
    out << "verdict: " << verdict_name(report.verdict) << "\n";
    out << "count: " << (report.count.is_lower_bound ? ">= " : "")
        << report.count.value.str() << "\n";
    if (report.representative) {
        out << "map: " << map_summary(*report.representative) << "\n";
    }
    if (report.evidence) {
        const auto& e = *report.evidence;
        out << "witness (t = " << rational_to_string(e.t) << "):\n";
        out << "  f: " << map_summary(e.f) << "\n";
        out << "  g: " << map_summary(e.g) << "\n";
        out << "  mid#P: " << measure_summary(e.mid_push_p) << "\n";
    }
}

struct CommonOptions {
    std::string p_path, q_path;
    std::string format = "json";
};

void add_measure_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("P", opts.p_path, "measure file for P")->required();
    cmd->add_option("Q", opts.q_path, "measure file for Q")->required();
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "human"}))
        ->capture_default_str();
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact convexity analysis of push-forward constraint sets", "pushcert"};
    app.require_subcommand(1);

    CommonOptions eq_opts;
    std::size_t cap = kDefaultAtomCap;
    auto* eq_cmd = app.add_subcommand(
        "equalizer", "decide the convexity of the maps equalizing P and Q");
    add_measure_options(eq_cmd, eq_opts);
    eq_cmd->add_option("--cap", cap, "subset enumeration cap per side")
        ->capture_default_str();

    CommonOptions tr_opts;
    std::size_t limit = kDefaultMapLimit;
    auto* tr_cmd = app.add_subcommand(
        "transport", "classify the set of maps pushing P onto Q");
    add_measure_options(tr_cmd, tr_opts);
    tr_cmd->add_option("--limit", limit, "map enumeration limit")->capture_default_str();

    CommonOptions wit_opts;
    std::string wit_kind = "equalizer";
    auto* wit_cmd = app.add_subcommand(
        "witness", "emit the verified nonconvexity witness for P, Q");
    add_measure_options(wit_cmd, wit_opts);
    wit_cmd->add_option("--kind", wit_kind, "constraint kind")
        ->check(CLI::IsMember({"equalizer", "transport"}))
        ->capture_default_str();

    CommonOptions or_opts;
    std::string or_kind = "equalizer";
    int values = 3;
    std::size_t budget = 0;
    auto* or_cmd = app.add_subcommand(
        "oracle", "brute-force search for midpoint convexity violations");
    add_measure_options(or_cmd, or_opts);
    or_cmd->add_option("--kind", or_kind, "constraint kind")
        ->check(CLI::IsMember({"equalizer", "transport"}))
        ->capture_default_str();
    or_cmd->add_option("--values", values, "value count for the equalizer family")
        ->capture_default_str();
    or_cmd->add_option("--budget", budget, "enumeration budget (0 = default)");

    CommonOptions scan_opts;
    std::string scan_kind = "equalizer";
    std::string scan_loss = "tv";
    int grid = 8;
    bool rational_csv = false;
    auto* scan_cmd = app.add_subcommand(
        "scan", "CSV of loss values along the segment between the witness maps");
    add_measure_options(scan_cmd, scan_opts);
    scan_cmd->add_option("--kind", scan_kind, "constraint kind")
        ->check(CLI::IsMember({"equalizer", "transport"}))
        ->capture_default_str();
    scan_cmd->add_option("--loss", scan_loss, "loss candidate")
        ->check(CLI::IsMember({"tv", "w1"}))
        ->capture_default_str();
    scan_cmd->add_option("--grid", grid, "number of segment steps")->capture_default_str();
    scan_cmd->add_flag("--rational", rational_csv, "emit exact p/q values instead of decimals");

    std::string construction;
    std::size_t demo_n = 100000;
    std::uint64_t seed = kDefaultSeed;
    std::size_t chunks = 1;
    std::vector<double> shifts{0.0, 0.5};
    auto* demo_cmd = app.add_subcommand(
        "demo", "seeded Monte Carlo demonstrations of the continuous constructions");
    demo_cmd->add_option("--construction", construction, "which demonstration to run")
        ->check(CLI::IsMember({"xi", "inverse-cdf", "family", "monotone", "ac-witness"}))
        ->required();
    demo_cmd->add_option("--n", demo_n, "sample size")->capture_default_str();
    demo_cmd->add_option("--seed", seed, "sampler seed")->capture_default_str();
    demo_cmd->add_option("--chunks", chunks, "sampler chunk count")->capture_default_str();
    demo_cmd->add_option("--shift", shifts, "shift values for the family demonstration");

    auto* self_cmd =
        app.add_subcommand("selftest", "run the built-in fixture and agreement suite");

    try {
        // CLI11's vector overload consumes arguments from the back.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends print through CLI11's machinery.
            std::ostringstream help;
            const int code = app.exit(e, help, help);
            out << help.str();
            return code;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (eq_cmd->parsed()) {
            const DiscreteMeasure p = measure_from_file(eq_opts.p_path);
            const DiscreteMeasure q = measure_from_file(eq_opts.q_path);
            const EqualizerReport report = analyze_equalizers(p, q, cap);
            if (eq_opts.format == "json") {
                out << equalizer_report_to_json(report).dump(2) << "\n";
            } else {
                print_equalizer_human(report, out);
            }
            return 0;
        }
        if (tr_cmd->parsed()) {
            const DiscreteMeasure p = measure_from_file(tr_opts.p_path);
            const DiscreteMeasure q = measure_from_file(tr_opts.q_path);
            const TransportReport report = classify_transport(p, q, limit);
            if (tr_opts.format == "json") {
                out << transport_report_to_json(report, q).dump(2) << "\n";
            } else {
                print_transport_human(report, out);
            }
            return 0;
        }
        if (wit_cmd->parsed()) {
            const DiscreteMeasure p = measure_from_file(wit_opts.p_path);
            const DiscreteMeasure q = measure_from_file(wit_opts.q_path);
            Json result{{"schema", kSchemaVersion}, {"analysis", "witness"}, {"kind", wit_kind}};
            if (wit_kind == "equalizer") {
                const EqualizerReport report = analyze_equalizers(p, q);
                result["verdict"] = verdict_name(report.verdict);
                if (report.witness) result["witness"] = witness_to_json(*report.witness);
            } else {
                const TransportReport report = classify_transport(p, q);
                result["verdict"] = verdict_name(report.verdict);
                if (report.evidence) result["witness"] = evidence_to_json(*report.evidence, q);
            }
            out << result.dump(2) << "\n";
            return 0;
        }
        if (or_cmd->parsed()) {
            const DiscreteMeasure p = measure_from_file(or_opts.p_path);
            const DiscreteMeasure q = measure_from_file(or_opts.q_path);
            if (or_kind == "equalizer") {
                const auto verdict = oracle_equalizer(
                    p, q, values, budget == 0 ? kDefaultEqualizerOracleBudget : budget);
                out << equalizer_oracle_to_json(verdict).dump(2) << "\n";
            } else {
                const auto verdict = oracle_transport(
                    p, q, budget == 0 ? kDefaultTransportOracleBudget : budget);
                out << transport_oracle_to_json(verdict, q).dump(2) << "\n";
            }
            return 0;
        }
        if (scan_cmd->parsed()) {
            const DiscreteMeasure p = measure_from_file(scan_opts.p_path);
            const DiscreteMeasure q = measure_from_file(scan_opts.q_path);
            const LossCandidate loss{scan_loss == "tv" ? LossName::TV : LossName::W1Line,
                                     scan_kind == "equalizer" ? LossKind::Equalizer
                                                              : LossKind::Transport};
            const FiniteMap* f = nullptr;
            const FiniteMap* g = nullptr;
            std::optional<EqualizerReport> eq_report;
            std::optional<TransportReport> tr_report;
            if (scan_kind == "equalizer") {
                eq_report = analyze_equalizers(p, q);
                if (!eq_report->witness) {
                    fail(ErrorKind::NotInConstraintSet,
                         "no nonconvexity witness to scan: verdict is " +
                             verdict_name(eq_report->verdict));
                }
                f = &eq_report->witness->f;
                g = &eq_report->witness->g;
            } else {
                tr_report = classify_transport(p, q);
                if (!tr_report->evidence) {
                    fail(ErrorKind::NotInConstraintSet,
                         "no nonconvexity witness to scan: verdict is " +
                             verdict_name(tr_report->verdict));
                }
                f = &tr_report->evidence->f;
                g = &tr_report->evidence->g;
            }
            out << "t,loss\n";
            for (const auto& [t, value] : segment_scan(loss, *f, *g, p, q, grid)) {
                if (rational_csv) {
                    out << rational_to_string(t) << "," << rational_to_string(value) << "\n";
                } else {
                    out << rational_to_decimal(t) << "," << rational_to_decimal(value) << "\n";
                }
            }
            return 0;
        }
        if (demo_cmd->parsed()) {
            Json result{{"schema", kSchemaVersion},
                        {"analysis", "demo"},
                        {"construction", construction}};
            const auto u01 = UnivariateDistribution::uniform(0, 1);
            if (construction == "xi") {
                Json reports = Json::array();
                for (double a : {0.0, 0.25, 0.5}) {
                    reports.push_back(
                        monte_carlo_report_to_json(xi_uniformity_demo(a, demo_n, seed, chunks)));
                }
                result["reports"] = std::move(reports);
            } else if (construction == "inverse-cdf") {
                DiscreteMeasure fair(
                    1, {Atom{Point{"z0", Coords{Rational(0)}}, Rational(1, 2)},
                        Atom{Point{"z1", Coords{Rational(1)}}, Rational(1, 2)}});
                Json reports = Json::array();
                reports.push_back(monte_carlo_report_to_json(inverse_cdf_demo(
                    UnivariateDistribution::discrete_line(fair), demo_n, seed, chunks)));
                reports.push_back(
                    monte_carlo_report_to_json(inverse_cdf_demo(u01, demo_n, seed, chunks)));
                result["reports"] = std::move(reports);
            } else if (construction == "family") {
                DiscreteMeasure fair(
                    1, {Atom{Point{"z0", Coords{Rational(0)}}, Rational(1, 2)},
                        Atom{Point{"z1", Coords{Rational(1)}}, Rational(1, 2)}});
                const FamilyDemoReport family = uncountable_family_demo(
                    u01, UnivariateDistribution::discrete_line(fair), shifts, demo_n, seed,
                    chunks);
                Json reports = Json::array();
                for (const auto& r : family.per_shift) {
                    reports.push_back(monte_carlo_report_to_json(r));
                }
                result["reports"] = std::move(reports);
                Json fractions = Json::object();
                for (const auto& [key, value] : family.distinct_fractions) {
                    fractions[key] = value;
                }
                result["distinct_fractions"] = std::move(fractions);
            } else if (construction == "monotone") {
                const MonotoneDemoReport demo = monotone_transport_demo(
                    u01, UnivariateDistribution::exponential(1), demo_n, seed, 1000, chunks);
                result["report"] = monte_carlo_report_to_json(demo.fit);
                result["grid_nondecreasing"] = demo.grid_nondecreasing;
                result["grid_strictly_increasing"] = demo.grid_strictly_increasing;
            } else { // ac-witness
                const AcWitnessReport demo = ac_equalizer_witness_demo(
                    u01, UnivariateDistribution::uniform(2, 3), demo_n, seed, chunks);
                result["reports"] = Json::array(
                    {monte_carlo_report_to_json(demo.f_push_p),
                     monte_carlo_report_to_json(demo.f_push_q),
                     monte_carlo_report_to_json(demo.g_push_p),
                     monte_carlo_report_to_json(demo.g_push_q),
                     monte_carlo_report_to_json(demo.mid_push_p)});
                result["mid_push_q_degenerate"] = demo.mid_push_q_degenerate;
                result["mid_value"] = demo.mid_value;
            }
            out << result.dump(2) << "\n";
            return 0;
        }
        if (self_cmd->parsed()) {
            return run_selftest(out) == 0 ? 0 : 1;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::TooManyAtoms:
            case ErrorKind::LimitExceeded:
            case ErrorKind::BudgetExceeded:
                return 3;
            case ErrorKind::Internal:
                return 1;
            default:
                return 2;
        }
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 2;
}

} // namespace pushcert
