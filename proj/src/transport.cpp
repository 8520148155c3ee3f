#include "pushcert/transport.hpp"

#include "pushcert/errors.hpp"

#include <algorithm>

namespace pushcert {

namespace {

struct Enumerator {
    const DiscreteMeasure& p;
    const DiscreteMeasure& q;
    std::size_t limit;
    std::vector<std::size_t> assignment; // atom index of P -> atom index of Q
    std::vector<Rational> remaining;     // unfilled fiber capacity per Q atom
    TransportEnumeration out;

    void emit() {
        std::vector<MapEntry> entries;
        entries.reserve(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            entries.push_back(
                MapEntry{p.atoms()[i].point, q.atoms()[assignment[i]].point.coords});
        }
        out.maps.emplace_back(p.dimension(), q.dimension(), std::move(entries));
    }

    // Depth-first over P atoms in canonical order, Q targets in canonical
    // order, so emitted maps are in lexicographic order of their images.
    bool search(std::size_t i) {
        if (i == p.size()) {
            // Equal total masses force all fibers to be exactly filled here.
            emit();
            if (out.maps.size() >= limit) {
                out.truncated = true;
                return false;
            }
            return true;
        }
        const Rational& w = p.atoms()[i].weight;
        for (std::size_t j = 0; j < q.size(); ++j) {
            if (remaining[j] < w) continue;
            remaining[j] -= w;
            assignment[i] = j;
            const bool keep_going = search(i + 1);
            remaining[j] += w;
            if (!keep_going) return false;
        }
        return true;
    }
};

} // namespace

TransportEnumeration enumerate_transport_maps(const DiscreteMeasure& p,
                                              const DiscreteMeasure& q,
                                              std::size_t limit) {
    if (!p.is_probability() || !q.is_probability()) {
        fail(ErrorKind::Validation, "transport enumeration requires probability measures");
    }
    Enumerator enumerator{p, q, limit, std::vector<std::size_t>(p.size()), {}, {}};
    enumerator.remaining.reserve(q.size());
    for (const auto& atom : q.atoms()) enumerator.remaining.push_back(atom.weight);
    enumerator.search(0);
    return std::move(enumerator.out);
}

TransportEvidence TransportEvidence::create(FiniteMap f, FiniteMap g,
                                            const DiscreteMeasure& p,
                                            const DiscreteMeasure& q) {
    const Rational half(1, 2);
    const FiniteMap mid = convex_combination(f, g, half);
    DiscreteMeasure fp = push_forward(f, p);
    DiscreteMeasure gp = push_forward(g, p);
    DiscreteMeasure mp = push_forward(mid, p);
    if (!measures_equal(fp, q) || !measures_equal(gp, q)) {
        fail(ErrorKind::Internal, "evidence maps do not both push P onto Q");
    }
    if (measures_equal(mp, q)) {
        fail(ErrorKind::Internal, "evidence midpoint still pushes P onto Q");
    }
    return TransportEvidence{std::move(f), std::move(g), half,
                             std::move(fp), std::move(gp), std::move(mp)};
}

bool reverify_evidence(const TransportEvidence& e, const DiscreteMeasure& p,
                       const DiscreteMeasure& q) {
    const FiniteMap mid = convex_combination(e.f, e.g, e.t);
    const DiscreteMeasure fp = push_forward(e.f, p);
    const DiscreteMeasure gp = push_forward(e.g, p);
    const DiscreteMeasure mp = push_forward(mid, p);
    return measures_equal(fp, e.f_push_p) && measures_equal(gp, e.g_push_p) &&
           measures_equal(mp, e.mid_push_p) && measures_equal(fp, q) &&
           measures_equal(gp, q) && !measures_equal(mp, q);
}

std::string verdict_name(TransportVerdict verdict) {
    switch (verdict) {
        case TransportVerdict::Empty: return "empty";
        case TransportVerdict::Singleton: return "singleton";
        case TransportVerdict::Nonconvex: return "nonconvex";
    }
    return "unknown";
}

namespace {

bool is_uniform(const DiscreteMeasure& m) {
    for (const auto& atom : m.atoms()) {
        if (atom.weight != m.atoms().front().weight) return false;
    }
    return true;
}

BigInt factorial(std::size_t n) {
    BigInt out(1);
    for (std::size_t k = 2; k <= n; ++k) out *= static_cast<unsigned>(k);
    return out;
}

// The first pair of distinct enumerated maps whose midpoint demonstrably
// leaves the constraint set; any distinct pair works, the scan is a guard.
TransportEvidence evidence_from(const std::vector<FiniteMap>& maps,
                                const DiscreteMeasure& p, const DiscreteMeasure& q) {
    for (std::size_t a = 0; a < maps.size(); ++a) {
        for (std::size_t b = a + 1; b < maps.size(); ++b) {
            if (agree_on_support(maps[a], maps[b], p)) continue;
            const FiniteMap mid = convex_combination(maps[a], maps[b], Rational(1, 2));
            if (!measures_equal(push_forward(mid, p), q)) {
                return TransportEvidence::create(maps[a], maps[b], p, q);
            }
        }
    }
    fail(ErrorKind::Internal, "no midpoint violation among distinct transport maps");
}

} // namespace

TransportReport classify_transport(const DiscreteMeasure& p, const DiscreteMeasure& q,
                                   std::size_t limit) {
    if (!p.is_probability() || !q.is_probability()) {
        fail(ErrorKind::Validation, "transport classification requires probability measures");
    }
    const std::size_t n = p.size(), m = q.size();
    if (is_uniform(p) && is_uniform(q)) {
        if (n < m || n % m != 0) {
            return TransportReport{TransportVerdict::Empty, {BigInt(0), false},
                                   std::nullopt, std::nullopt, true};
        }
        if (m == 1) {
            // Q is a Dirac: the constant map is the only assignment.
            TransportEnumeration one = enumerate_transport_maps(p, q, 2);
            return TransportReport{TransportVerdict::Singleton, {BigInt(1), false},
                                   std::move(one.maps.front()), std::nullopt, true};
        }
        if (n == m) {
            TransportCount count{factorial(n), false};
            if (n == 1) {
                TransportEnumeration one = enumerate_transport_maps(p, q, 2);
                return TransportReport{TransportVerdict::Singleton, std::move(count),
                                       std::move(one.maps.front()), std::nullopt, true};
            }
            TransportEnumeration two = enumerate_transport_maps(p, q, 2);
            return TransportReport{TransportVerdict::Nonconvex, std::move(count),
                                   std::nullopt, evidence_from(two.maps, p, q), true};
        }
        // m divides n with n > m: at least two maps exist. Count exactly
        // when the enumeration fits the limit.
        TransportEnumeration all = enumerate_transport_maps(p, q, limit);
        if (all.truncated && all.maps.size() < 2) {
            fail(ErrorKind::LimitExceeded,
                 "enumeration limit too small to classify the transport set");
        }
        TransportCount count{BigInt(all.maps.size()), all.truncated};
        return TransportReport{TransportVerdict::Nonconvex, std::move(count), std::nullopt,
                               evidence_from(all.maps, p, q), true};
    }

    TransportEnumeration all = enumerate_transport_maps(p, q, limit);
    if (all.truncated && all.maps.size() < 2) {
        fail(ErrorKind::LimitExceeded,
             "enumeration limit too small to classify the transport set");
    }
    if (all.maps.empty()) {
        return TransportReport{TransportVerdict::Empty, {BigInt(0), false}, std::nullopt,
                               std::nullopt, false};
    }
    TransportCount count{BigInt(all.maps.size()), all.truncated};
    if (all.maps.size() == 1) {
        return TransportReport{TransportVerdict::Singleton, std::move(count),
                               std::move(all.maps.front()), std::nullopt, false};
    }
    return TransportReport{TransportVerdict::Nonconvex, std::move(count), std::nullopt,
                           evidence_from(all.maps, p, q), false};
}

bool m2_membership(const FiniteMap& f, const DiscreteMeasure& p, const DiscreteMeasure& q) {
    return inner_product_integral(f, f, p) == second_moment(q);
}

Coupling independent_coupling(const DiscreteMeasure& p, const DiscreteMeasure& q) {
    Coupling pi;
    for (const auto& atom : p.atoms()) pi.row_points.push_back(atom.point);
    for (const auto& atom : q.atoms()) pi.col_points.push_back(atom.point);
    for (const auto& pa : p.atoms()) {
        std::vector<Rational> row;
        row.reserve(q.size());
        for (const auto& qa : q.atoms()) row.push_back(pa.weight * qa.weight);
        pi.weights.push_back(std::move(row));
    }
    return pi;
}

bool is_coupling(const Coupling& pi, const DiscreteMeasure& p, const DiscreteMeasure& q) {
    if (pi.weights.size() != p.size()) {
        fail(ErrorKind::ShapeMismatch, "coupling row count does not match supp(P)");
    }
    for (const auto& row : pi.weights) {
        if (row.size() != q.size()) {
            fail(ErrorKind::ShapeMismatch, "coupling column count does not match supp(Q)");
        }
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rational row_sum(0);
        for (const auto& w : pi.weights[i]) {
            if (w < 0) return false;
            row_sum += w;
        }
        if (row_sum != p.atoms()[i].weight) return false;
    }
    for (std::size_t j = 0; j < q.size(); ++j) {
        Rational col_sum(0);
        for (std::size_t i = 0; i < p.size(); ++i) col_sum += pi.weights[i][j];
        if (col_sum != q.atoms()[j].weight) return false;
    }
    return true;
}

Coupling coupling_mix(const Coupling& a, const Coupling& b, const Rational& t) {
    if (t < 0 || t > 1) {
        fail(ErrorKind::Validation, "mix parameter t must lie in [0,1]");
    }
    if (a.weights.size() != b.weights.size()) {
        fail(ErrorKind::ShapeMismatch, "couplings have different shapes");
    }
    Coupling out = a;
    const Rational s = Rational(1) - t;
    for (std::size_t i = 0; i < a.weights.size(); ++i) {
        if (a.weights[i].size() != b.weights[i].size()) {
            fail(ErrorKind::ShapeMismatch, "couplings have different shapes");
        }
        for (std::size_t j = 0; j < a.weights[i].size(); ++j) {
            out.weights[i][j] = s * a.weights[i][j] + t * b.weights[i][j];
        }
    }
    return out;
}

Coupling deterministic_coupling(const FiniteMap& f, const DiscreteMeasure& p,
                                const DiscreteMeasure& q) {
    Coupling pi;
    for (const auto& atom : p.atoms()) pi.row_points.push_back(atom.point);
    for (const auto& atom : q.atoms()) pi.col_points.push_back(atom.point);
    for (const auto& pa : p.atoms()) {
        const Coords& image = f.value_at(pa.point);
        std::vector<Rational> row(q.size(), Rational(0));
        bool placed = false;
        for (std::size_t j = 0; j < q.size(); ++j) {
            if (q.atoms()[j].point.coords == image) {
                row[j] = pa.weight;
                placed = true;
                break;
            }
        }
        if (!placed) {
            fail(ErrorKind::ShapeMismatch,
                 "map image " + coords_to_string(image) + " is not a support point of Q");
        }
        pi.weights.push_back(std::move(row));
    }
    return pi;
}

} // namespace pushcert
