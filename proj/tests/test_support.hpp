#pragma once

#include "pushcert/finite_map.hpp"
#include "pushcert/measure.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace pushcert::testing {

inline DiscreteMeasure line_measure(const std::vector<std::pair<int, Rational>>& atoms,
                                    const std::string& prefix = "p", int offset = 0) {
    std::vector<Atom> out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        out.push_back(Atom{Point{prefix + std::to_string(i + 1),
                                 Coords{Rational(atoms[i].first + offset)}},
                           atoms[i].second});
    }
    return DiscreteMeasure(1, std::move(out));
}

inline DiscreteMeasure weighted_line(const std::vector<Rational>& weights,
                                     const std::string& prefix = "p", int offset = 0) {
    std::vector<std::pair<int, Rational>> atoms;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        atoms.emplace_back(static_cast<int>(i), weights[i]);
    }
    return line_measure(atoms, prefix, offset);
}

inline DiscreteMeasure uniform_line(std::size_t n, const std::string& prefix = "p",
                                    int offset = 0) {
    std::vector<Rational> weights(n, Rational(1, static_cast<unsigned>(n)));
    return weighted_line(weights, prefix, offset);
}

/// Scalar map given per-atom values over the union of the given supports.
inline FiniteMap scalar_map(const std::vector<Point>& points,
                            const std::vector<Rational>& values) {
    std::vector<MapEntry> entries;
    for (std::size_t i = 0; i < points.size(); ++i) {
        entries.push_back(MapEntry{points[i], Coords{values[i]}});
    }
    return FiniteMap(static_cast<int>(points.front().coords.size()), 1, std::move(entries));
}

inline std::vector<Point> support_points(const DiscreteMeasure& m) {
    std::vector<Point> out;
    for (const auto& atom : m.atoms()) out.push_back(atom.point);
    return out;
}

inline std::vector<Point> union_points(const DiscreteMeasure& p, const DiscreteMeasure& q) {
    std::vector<Point> out = support_points(p);
    for (const auto& atom : q.atoms()) {
        if (!p.contains(atom.point.coords)) out.push_back(atom.point);
    }
    return out;
}

/// Deterministic generator for property tests.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    int integer(int lo, int hi) { // inclusive
        return static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)) + lo;
    }

    Rational rational(int max_num = 6, int max_den = 6) {
        return Rational(integer(-max_num, max_num), integer(1, max_den));
    }

    Rational positive_rational(int max_num = 6, int max_den = 6) {
        return Rational(integer(1, max_num), integer(1, max_den));
    }

    /// Strictly positive weights summing to exactly one.
    std::vector<Rational> probability_weights(std::size_t n) {
        std::vector<int> cuts;
        const int total = 24;
        // n-1 distinct interior cut points of [0, 24]
        while (cuts.size() + 1 < n) {
            const int c = integer(1, total - 1);
            bool dup = false;
            for (int seen : cuts) dup = dup || seen == c;
            if (!dup) cuts.push_back(c);
        }
        cuts.push_back(0);
        cuts.push_back(total);
        std::sort(cuts.begin(), cuts.end());
        std::vector<Rational> weights;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            weights.emplace_back(cuts[i + 1] - cuts[i], total);
        }
        return weights;
    }

    /// A measure with distinct integer coordinates drawn from [lo, hi].
    DiscreteMeasure measure(int dimension, std::size_t atom_count, int lo, int hi,
                            const std::string& prefix = "r") {
        std::vector<Atom> atoms;
        std::vector<Coords> used;
        while (atoms.size() < atom_count) {
            Coords coords;
            for (int k = 0; k < dimension; ++k) coords.emplace_back(integer(lo, hi));
            bool dup = false;
            for (const auto& c : used) dup = dup || c == coords;
            if (dup) continue;
            used.push_back(coords);
            atoms.push_back(Atom{Point{prefix + std::to_string(atoms.size() + 1), coords},
                                 positive_rational()});
        }
        return DiscreteMeasure(dimension, std::move(atoms));
    }

    DiscreteMeasure probability_measure(int dimension, std::size_t atom_count, int lo, int hi,
                                        const std::string& prefix = "r") {
        DiscreteMeasure raw = measure(dimension, atom_count, lo, hi, prefix);
        const std::vector<Rational> weights = probability_weights(atom_count);
        std::vector<Atom> atoms = raw.atoms();
        for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i].weight = weights[i];
        return DiscreteMeasure(dimension, std::move(atoms));
    }

    /// A map defined on the given points with random small integer values.
    FiniteMap map_on(const std::vector<Point>& points, int codomain_dimension, int lo,
                     int hi) {
        std::vector<MapEntry> entries;
        for (const auto& point : points) {
            Coords value;
            for (int k = 0; k < codomain_dimension; ++k) value.emplace_back(integer(lo, hi));
            entries.push_back(MapEntry{point, std::move(value)});
        }
        return FiniteMap(static_cast<int>(points.front().coords.size()), codomain_dimension,
                         std::move(entries));
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace pushcert::testing
