#include "pushcert/loss.hpp"

#include "pushcert/errors.hpp"
#include "pushcert/measure_ops.hpp"

#include <algorithm>

namespace pushcert {

Rational tv_distance(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (a.dimension() != b.dimension()) {
        fail(ErrorKind::DimensionMismatch, "total variation requires equal dimensions");
    }
    Rational total(0);
    for (const auto& atom : a.atoms()) {
        total += boost::multiprecision::abs(atom.weight - b.weight_at(atom.point.coords));
    }
    for (const auto& atom : b.atoms()) {
        if (!a.contains(atom.point.coords)) total += atom.weight;
    }
    return total / 2;
}

Rational w1_line(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (a.dimension() != 1 || b.dimension() != 1) {
        fail(ErrorKind::DimensionMismatch,
             "the Wasserstein-1 distance is only evaluated exactly in dimension one");
    }
    // Both CDFs are piecewise constant; integrate |F_a - F_b| between
    // consecutive breakpoints of the merged supports.
    std::vector<Rational> breakpoints;
    for (const auto& atom : a.atoms()) breakpoints.push_back(atom.point.coords[0]);
    for (const auto& atom : b.atoms()) breakpoints.push_back(atom.point.coords[0]);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    Rational total(0), cdf_a(0), cdf_b(0);
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        cdf_a += a.weight_at(Coords{breakpoints[i]});
        cdf_b += b.weight_at(Coords{breakpoints[i]});
        if (i + 1 < breakpoints.size()) {
            total += boost::multiprecision::abs(cdf_a - cdf_b) *
                     (breakpoints[i + 1] - breakpoints[i]);
        }
    }
    return total;
}

std::string loss_label(LossName name, LossKind kind) {
    std::string out = name == LossName::TV ? "tv" : "w1";
    out += kind == LossKind::Equalizer ? "_equalizer" : "_transport";
    return out;
}

Rational LossCandidate::evaluate(const FiniteMap& f, const DiscreteMeasure& p,
                                 const DiscreteMeasure& q) const {
    const DiscreteMeasure fp = push_forward(f, p);
    const DiscreteMeasure target = kind == LossKind::Equalizer ? push_forward(f, q) : q;
    return name == LossName::TV ? tv_distance(fp, target) : w1_line(fp, target);
}

NonconvexityCertificate certify_nonconvexity(const LossCandidate& loss, const FiniteMap& f,
                                             const FiniteMap& g, const DiscreteMeasure& p,
                                             const DiscreteMeasure& q) {
    Rational loss_f = loss.evaluate(f, p, q);
    Rational loss_g = loss.evaluate(g, p, q);
    if (loss_f != 0 || loss_g != 0) {
        fail(ErrorKind::NotInConstraintSet,
             "certification inputs do not lie in the constraint set: L(f) = " +
                 rational_to_string(loss_f) + ", L(g) = " + rational_to_string(loss_g));
    }
    Rational loss_mid = loss.evaluate(convex_combination(f, g, Rational(1, 2)), p, q);
    return NonconvexityCertificate{loss_label(loss.name, loss.kind),
                                   f,
                                   g,
                                   std::move(loss_f),
                                   std::move(loss_g),
                                   std::move(loss_mid)};
}

NonconvexityCertificate certify_nonconvexity(const LossCandidate& loss, const WitnessPair& w,
                                             const DiscreteMeasure& p,
                                             const DiscreteMeasure& q) {
    return certify_nonconvexity(loss, w.f, w.g, p, q);
}

NonconvexityCertificate certify_nonconvexity(const LossCandidate& loss,
                                             const TransportEvidence& e,
                                             const DiscreteMeasure& p,
                                             const DiscreteMeasure& q) {
    return certify_nonconvexity(loss, e.f, e.g, p, q);
}

std::vector<std::pair<Rational, Rational>> segment_scan(const LossCandidate& loss,
                                                        const FiniteMap& f,
                                                        const FiniteMap& g,
                                                        const DiscreteMeasure& p,
                                                        const DiscreteMeasure& q,
                                                        int grid_size) {
    if (grid_size < 1) {
        fail(ErrorKind::Validation, "grid size must be >= 1");
    }
    std::vector<std::pair<Rational, Rational>> out;
    out.reserve(static_cast<std::size_t>(grid_size) + 1);
    for (int k = 0; k <= grid_size; ++k) {
        Rational t(k, grid_size);
        Rational value = loss.evaluate(convex_combination(f, g, t), p, q);
        out.emplace_back(std::move(t), std::move(value));
    }
    return out;
}

Rational covariance_penalty(const FiniteMap& f, const DiscreteMeasure& p,
                            const DiscreteMeasure& q, const Rational& pi1) {
    if (f.codomain_dimension() != 1) {
        fail(ErrorKind::DimensionMismatch, "covariance penalty needs scalar outputs");
    }
    if (pi1 <= 0 || pi1 >= 1) {
        fail(ErrorKind::Validation, "group prior must lie strictly between 0 and 1");
    }
    if (!p.is_probability() || !q.is_probability()) {
        fail(ErrorKind::Validation, "covariance penalty requires probability measures");
    }
    // Cov(f, S) = pi1 (1 - pi1) (E_Q f - E_P f) under the two-group mixture.
    Rational mean_p(0), mean_q(0);
    for (const auto& atom : p.atoms()) mean_p += atom.weight * f.value_at(atom.point)[0];
    for (const auto& atom : q.atoms()) mean_q += atom.weight * f.value_at(atom.point)[0];
    return pi1 * (Rational(1) - pi1) * (mean_q - mean_p);
}

LinearEqualizerDemo linear_equalizer_demo() {
    // A, B independent fair coins on {0,1}; P is the law of (A,B), Q the
    // law of (A,A).
    const Rational zero(0), one(1);
    const auto pt = [](const Rational& a, const Rational& b, const std::string& id) {
        return Point{id, Coords{a, b}};
    };
    const Point p00 = pt(zero, zero, "ab00"), p01 = pt(zero, one, "ab01");
    const Point p10 = pt(one, zero, "ab10"), p11 = pt(one, one, "ab11");
    const Rational quarter(1, 4), half(1, 2);
    DiscreteMeasure p(2, {Atom{p00, quarter}, Atom{p01, quarter}, Atom{p10, quarter},
                          Atom{p11, quarter}});
    DiscreteMeasure q(2, {Atom{p00, half}, Atom{p11, half}});

    // f projects onto the first coordinate, g negates the second; both are
    // linear and equalize the pair, their midpoint does not.
    std::vector<MapEntry> f_entries, g_entries;
    for (const Point& point : {p00, p01, p10, p11}) {
        f_entries.push_back(MapEntry{point, Coords{point.coords[0]}});
        g_entries.push_back(MapEntry{point, Coords{-point.coords[1]}});
    }
    FiniteMap f(2, 1, std::move(f_entries));
    FiniteMap g(2, 1, std::move(g_entries));

    WitnessPair witness = WitnessPair::create(std::move(f), std::move(g), p, q);
    NonconvexityCertificate certificate =
        certify_nonconvexity(LossCandidate{LossName::TV, LossKind::Equalizer}, witness, p, q);
    return LinearEqualizerDemo{std::move(p), std::move(q), std::move(witness),
                               std::move(certificate)};
}

} // namespace pushcert
