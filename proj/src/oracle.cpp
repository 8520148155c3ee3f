#include "pushcert/oracle.hpp"

#include "pushcert/errors.hpp"

#include <algorithm>

namespace pushcert {

namespace {

std::vector<Point> union_support(const DiscreteMeasure& p, const DiscreteMeasure& q) {
    std::vector<Point> points;
    for (const auto& atom : p.atoms()) points.push_back(atom.point);
    for (const auto& atom : q.atoms()) {
        if (!p.contains(atom.point.coords)) points.push_back(atom.point);
    }
    std::sort(points.begin(), points.end(),
              [](const Point& a, const Point& b) { return coords_less(a.coords, b.coords); });
    return points;
}

} // namespace

EqualizerOracleVerdict oracle_equalizer(const DiscreteMeasure& p, const DiscreteMeasure& q,
                                        int value_count, std::size_t budget) {
    if (p.dimension() != q.dimension()) {
        fail(ErrorKind::DimensionMismatch, "oracle requires equal dimensions");
    }
    if (value_count < 2) {
        fail(ErrorKind::Validation, "oracle needs at least two values");
    }
    const std::vector<Point> points = union_support(p, q);
    const std::size_t n = points.size();

    std::size_t family_size = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (family_size > budget / static_cast<std::size_t>(value_count)) {
            fail(ErrorKind::BudgetExceeded,
                 "oracle family " + std::to_string(value_count) + "^" + std::to_string(n) +
                     " exceeds budget " + std::to_string(budget));
        }
        family_size *= static_cast<std::size_t>(value_count);
    }

    std::vector<Coords> values;
    Rational v(1);
    for (int k = 0; k < value_count; ++k) {
        values.push_back(Coords{v});
        v *= 4;
    }

    EqualizerOracleVerdict verdict;
    verdict.family = "all maps from the " + std::to_string(n) +
                     "-point union support into {1,4,...,4^" +
                     std::to_string(value_count - 1) + "} (" + std::to_string(family_size) +
                     " functions)";
    verdict.functions_enumerated = family_size;

    // Enumerate in lexicographic order of value tuples: the first point
    // runs slowest.
    std::vector<FiniteMap> equalizers;
    std::vector<int> digits(n, 0);
    for (std::size_t index = 0; index < family_size; ++index) {
        std::vector<MapEntry> entries;
        entries.reserve(n);
        std::size_t rest = index;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t place = n - 1 - i;
            digits[place] = static_cast<int>(rest % value_count);
            rest /= value_count;
        }
        for (std::size_t i = 0; i < n; ++i) {
            entries.push_back(MapEntry{points[i], values[digits[i]]});
        }
        FiniteMap f(p.dimension(), 1, std::move(entries));
        if (measures_equal(push_forward(f, p), push_forward(f, q))) {
            equalizers.push_back(std::move(f));
        }
    }
    verdict.members_found = equalizers.size();

    for (std::size_t a = 0; a < equalizers.size(); ++a) {
        for (std::size_t b = a + 1; b < equalizers.size(); ++b) {
            ++verdict.pairs_checked;
            const FiniteMap mid =
                convex_combination(equalizers[a], equalizers[b], Rational(1, 2));
            if (!measures_equal(push_forward(mid, p), push_forward(mid, q))) {
                verdict.counterexample =
                    WitnessPair::create(equalizers[a], equalizers[b], p, q);
                return verdict;
            }
        }
    }
    return verdict;
}

TransportOracleVerdict oracle_transport(const DiscreteMeasure& p, const DiscreteMeasure& q,
                                        std::size_t budget) {
    if (!p.is_probability() || !q.is_probability()) {
        fail(ErrorKind::Validation, "transport oracle requires probability measures");
    }
    const std::size_t n = p.size(), m = q.size();
    std::size_t family_size = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (m != 0 && family_size > budget / m) {
            fail(ErrorKind::BudgetExceeded,
                 "assignment family " + std::to_string(m) + "^" + std::to_string(n) +
                     " exceeds budget " + std::to_string(budget));
        }
        family_size *= m;
    }

    TransportOracleVerdict verdict;
    verdict.family = "all " + std::to_string(family_size) + " assignments from supp(P) (" +
                     std::to_string(n) + " atoms) into supp(Q) (" + std::to_string(m) +
                     " atoms)";
    verdict.assignments_scanned = family_size;

    std::vector<FiniteMap> members;
    for (std::size_t index = 0; index < family_size; ++index) {
        std::vector<MapEntry> entries;
        entries.reserve(n);
        std::size_t rest = index;
        std::vector<std::size_t> targets(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t place = n - 1 - i;
            targets[place] = rest % m;
            rest /= m;
        }
        for (std::size_t i = 0; i < n; ++i) {
            entries.push_back(MapEntry{p.atoms()[i].point, q.atoms()[targets[i]].point.coords});
        }
        FiniteMap f(p.dimension(), q.dimension(), std::move(entries));
        if (measures_equal(push_forward(f, p), q)) {
            members.push_back(std::move(f));
        }
    }
    verdict.members_found = members.size();

    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            ++verdict.pairs_checked;
            const FiniteMap mid = convex_combination(members[a], members[b], Rational(1, 2));
            if (!measures_equal(push_forward(mid, p), q)) {
                verdict.counterexample =
                    TransportEvidence::create(members[a], members[b], p, q);
                return verdict;
            }
        }
    }
    return verdict;
}

} // namespace pushcert
