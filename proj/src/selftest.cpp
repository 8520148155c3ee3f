#include "pushcert/cli.hpp"

#include "pushcert/equalizer.hpp"
#include "pushcert/loss.hpp"
#include "pushcert/measure_ops.hpp"
#include "pushcert/oracle.hpp"
#include "pushcert/transport.hpp"

#include <functional>
#include <numeric>
#include <ostream>
#include <vector>

namespace pushcert {

namespace {

DiscreteMeasure line_measure(const std::vector<std::pair<int, Rational>>& atoms,
                             const std::string& prefix, int offset = 0) {
    std::vector<Atom> out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        out.push_back(Atom{Point{prefix + std::to_string(i + 1),
                                 Coords{Rational(atoms[i].first + offset)}},
                           atoms[i].second});
    }
    return DiscreteMeasure(1, std::move(out));
}

DiscreteMeasure uniform_line(std::size_t n, const std::string& prefix, int offset) {
    std::vector<std::pair<int, Rational>> atoms;
    for (std::size_t i = 0; i < n; ++i) {
        atoms.emplace_back(static_cast<int>(i), Rational(1, static_cast<unsigned>(n)));
    }
    return line_measure(atoms, prefix, offset);
}

DiscreteMeasure weighted_line(const std::vector<Rational>& weights, const std::string& prefix,
                              int offset) {
    std::vector<std::pair<int, Rational>> atoms;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        atoms.emplace_back(static_cast<int>(i), weights[i]);
    }
    return line_measure(atoms, prefix, offset);
}

/// Weight vectors with entries from {1/6,...,5/6} summing to one.
std::vector<std::vector<Rational>> sixth_compositions(std::size_t parts) {
    std::vector<std::vector<Rational>> out;
    std::vector<int> current(parts, 0);
    const std::function<void(std::size_t, int)> recurse = [&](std::size_t i, int left) {
        if (i + 1 == parts) {
            if (left >= 1 && left <= 5) {
                current[i] = left;
                std::vector<Rational> weights;
                for (int k : current) weights.emplace_back(k, 6);
                out.push_back(std::move(weights));
            }
            return;
        }
        for (int k = 1; k <= 5 && k < left; ++k) {
            current[i] = k;
            recurse(i + 1, left - k);
        }
    };
    if (parts >= 1) recurse(0, 6);
    return out;
}

BigInt factorial(std::size_t n) {
    BigInt out(1);
    for (std::size_t k = 2; k <= n; ++k) out *= static_cast<unsigned>(k);
    return out;
}

struct Check {
    std::string name;
    std::function<bool()> run;
};

} // namespace

int run_selftest(std::ostream& out) {
    const Rational half(1, 2), third(1, 3), two_thirds(2, 3), quarter(1, 4);

    std::vector<Check> checks;

    checks.push_back({"transport: Dirac source, two-point target is infeasible", [&] {
        const auto p = uniform_line(1, "x", 0);
        const auto q = uniform_line(2, "y", 10);
        return classify_transport(p, q).verdict == TransportVerdict::Empty;
    }});

    checks.push_back({"transport: Dirac to Dirac is a singleton", [&] {
        const auto p = uniform_line(1, "x", 0);
        const auto q = uniform_line(1, "y", 10);
        const auto report = classify_transport(p, q);
        return report.verdict == TransportVerdict::Singleton && report.count.value == 1;
    }});

    checks.push_back({"transport: fair two-point pair is nonconvex with two maps", [&] {
        const auto p = uniform_line(2, "x", 0);
        const auto q = uniform_line(2, "y", 10);
        const auto report = classify_transport(p, q);
        return report.verdict == TransportVerdict::Nonconvex && report.count.value == 2 &&
               report.evidence && reverify_evidence(*report.evidence, p, q);
    }});

    checks.push_back({"transport: uniform counts follow the factorial and divisibility laws", [&] {
        for (std::size_t n = 1; n <= 5; ++n) {
            const auto p = uniform_line(n, "x", 0);
            const auto q = uniform_line(n, "y", 10);
            const auto enumerated = enumerate_transport_maps(p, q);
            if (enumerated.truncated ||
                BigInt(enumerated.maps.size()) != factorial(n)) {
                return false;
            }
            if (classify_transport(p, q).count.value != factorial(n)) return false;
        }
        for (std::size_t n = 1; n <= 6; ++n) {
            for (std::size_t m = 1; m <= 6; ++m) {
                const auto p = uniform_line(n, "x", 0);
                const auto q = uniform_line(m, "y", 10);
                const auto report = classify_transport(p, q);
                const bool empty_expected = n < m || n % m != 0;
                if (empty_expected != (report.verdict == TransportVerdict::Empty)) {
                    return false;
                }
                if (m == 1 && report.verdict != TransportVerdict::Singleton) return false;
                if (n > m && m >= 2 && n % m == 0 &&
                    (report.count.value < 2 || !report.evidence ||
                     !reverify_evidence(*report.evidence, p, q))) {
                    return false;
                }
            }
        }
        return true;
    }});

    checks.push_back({"equalizer: fair two-point pair is nonconvex with the crossing witness", [&] {
        const auto p = uniform_line(2, "x", 0);
        const auto q = uniform_line(2, "y", 10);
        const auto report = analyze_equalizers(p, q);
        if (report.verdict != EqualizerVerdict::Nonconvex || !report.witness) return false;
        if (!reverify_witness(*report.witness, p, q)) return false;
        const DiscreteMeasure expected_mid_p(
            1, {Atom{Point{"", Coords{Rational(0)}}, half},
                Atom{Point{"", Coords{Rational(1)}}, half}});
        const DiscreteMeasure expected_mid_q = DiscreteMeasure::dirac(Point{"", Coords{half}});
        return measures_equal(report.witness->mid_push_p, expected_mid_p) &&
               measures_equal(report.witness->mid_push_q, expected_mid_q);
    }});

    checks.push_back({"equalizer: 1/2,1/2 versus 1/3,2/3 narrows to constants", [&] {
        const auto p = weighted_line({half, half}, "x", 0);
        const auto q = weighted_line({third, two_thirds}, "y", 10);
        return analyze_equalizers(p, q).verdict == EqualizerVerdict::ConvexTrivial;
    }});

    checks.push_back({"equalizer: matching 1/3,2/3 weights give the two-block structure", [&] {
        const auto p = weighted_line({third, two_thirds}, "x", 0);
        const auto q = weighted_line({third, two_thirds}, "y", 10);
        const auto report = analyze_equalizers(p, q);
        return report.verdict == EqualizerVerdict::ConvexStructured &&
               report.blocks.size() == 2 && report.blocks[0].block_mass == third &&
               report.blocks[0].p_points.size() == 1 && report.blocks[0].q_points.size() == 1;
    }});

    checks.push_back({"equalizer: uniform sizes are convex exactly when coprime", [&] {
        for (std::size_t n = 1; n <= 8; ++n) {
            for (std::size_t m = 1; m <= 8; ++m) {
                const auto p = uniform_line(n, "x", 0);
                const auto q = uniform_line(m, "y", 100);
                const auto report = analyze_equalizers(p, q);
                const bool coprime = std::gcd(n, m) == 1;
                if (coprime && report.verdict != EqualizerVerdict::ConvexTrivial) return false;
                if (!coprime && report.verdict != EqualizerVerdict::Nonconvex) return false;
                if (report.witness && !reverify_witness(*report.witness, p, q)) return false;
            }
        }
        return true;
    }});

    checks.push_back({"agreement: decision procedure matches the oracle on the sixth grid", [&] {
        for (std::size_t n = 2; n <= 4; ++n) {
            for (std::size_t m = 2; m + n <= 6; ++m) {
                for (const auto& alpha : sixth_compositions(n)) {
                    for (const auto& beta : sixth_compositions(m)) {
                        const auto p = weighted_line(alpha, "x", 0);
                        const auto q = weighted_line(beta, "y", 100);
                        const auto report = analyze_equalizers(p, q);
                        const auto oracle = oracle_equalizer(p, q);
                        const bool nonconvex = report.verdict == EqualizerVerdict::Nonconvex;
                        if (nonconvex != oracle.found()) return false;
                    }
                }
            }
        }
        return true;
    }});

    checks.push_back({"linear maps: the coin-pair fixture reproduces exactly", [&] {
        const auto demo = linear_equalizer_demo();
        const DiscreteMeasure expected_mid_p(
            1, {Atom{Point{"", Coords{-half}}, quarter},
                Atom{Point{"", Coords{Rational(0)}}, half},
                Atom{Point{"", Coords{half}}, quarter}});
        const DiscreteMeasure expected_mid_q =
            DiscreteMeasure::dirac(Point{"", Coords{Rational(0)}});
        return measures_equal(demo.witness.mid_push_p, expected_mid_p) &&
               measures_equal(demo.witness.mid_push_q, expected_mid_q) &&
               demo.tv_certificate.loss_mid == half;
    }});

    checks.push_back({"losses: certificates on the crossing witnesses are exact", [&] {
        const auto p = uniform_line(2, "x", 0);
        const auto q = uniform_line(2, "y", 10);
        const auto eq_report = analyze_equalizers(p, q);
        if (!eq_report.witness) return false;
        const auto tv = certify_nonconvexity(LossCandidate{LossName::TV, LossKind::Equalizer},
                                             *eq_report.witness, p, q);
        const auto w1 = certify_nonconvexity(
            LossCandidate{LossName::W1Line, LossKind::Equalizer}, *eq_report.witness, p, q);
        const auto tr_report = classify_transport(p, q);
        if (!tr_report.evidence) return false;
        const auto tr_tv = certify_nonconvexity(
            LossCandidate{LossName::TV, LossKind::Transport}, *tr_report.evidence, p, q);
        return tv.loss_mid == 1 && w1.loss_mid == half && tr_tv.loss_mid == 1;
    }});

    checks.push_back({"sensitivity: perturbing a weight changes the verdict visibly", [&] {
        const auto p = weighted_line({quarter, Rational(3, 4)}, "x", 0);
        const auto q = weighted_line({third, two_thirds}, "y", 10);
        // The matching-weight fixture is structured; the perturbed one is not.
        return analyze_equalizers(p, q).verdict == EqualizerVerdict::ConvexTrivial;
    }});

    int failures = 0;
    for (const auto& check : checks) {
        bool ok = false;
        std::string detail;
        try {
            ok = check.run();
        } catch (const std::exception& e) {
            detail = e.what();
        }
        out << (ok ? "[ ok ] " : "[FAIL] ") << check.name;
        if (!detail.empty()) out << " (" << detail << ")";
        out << "\n";
        if (!ok) ++failures;
    }
    out << (failures == 0 ? "selftest passed" : "selftest FAILED") << " ("
        << checks.size() - static_cast<std::size_t>(failures) << "/" << checks.size()
        << " checks)\n";
    return failures;
}

} // namespace pushcert
