#include "pushcert/finite_map.hpp"

#include "pushcert/errors.hpp"

#include <algorithm>

namespace pushcert {

FiniteMap::FiniteMap(int domain_dimension, int codomain_dimension, std::vector<MapEntry> entries)
    : domain_dimension_(domain_dimension),
      codomain_dimension_(codomain_dimension),
      entries_(std::move(entries)) {
    if (domain_dimension < 1 || codomain_dimension < 1) {
        fail(ErrorKind::Validation, "map dimensions must be >= 1");
    }
    for (const auto& entry : entries_) {
        if (static_cast<int>(entry.from.coords.size()) != domain_dimension_) {
            fail(ErrorKind::DimensionMismatch,
                 "domain point " + entry.from.id + " does not match dimension " +
                     std::to_string(domain_dimension_));
        }
        if (static_cast<int>(entry.value.size()) != codomain_dimension_) {
            fail(ErrorKind::DimensionMismatch,
                 "value at " + entry.from.id + " does not match codomain dimension " +
                     std::to_string(codomain_dimension_));
        }
    }
    std::sort(entries_.begin(), entries_.end(), [](const MapEntry& a, const MapEntry& b) {
        return coords_less(a.from.coords, b.from.coords);
    });
    for (std::size_t i = 0; i + 1 < entries_.size(); ++i) {
        if (entries_[i].from.coords == entries_[i + 1].from.coords) {
            fail(ErrorKind::Validation,
                 "duplicate domain point " + coords_to_string(entries_[i].from.coords));
        }
    }
}

bool FiniteMap::defined_at(const Coords& coords) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), coords,
                               [](const MapEntry& e, const Coords& c) {
                                   return coords_less(e.from.coords, c);
                               });
    return it != entries_.end() && it->from.coords == coords;
}

const Coords& FiniteMap::value_at_coords(const Coords& coords) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), coords,
                               [](const MapEntry& e, const Coords& c) {
                                   return coords_less(e.from.coords, c);
                               });
    if (it == entries_.end() || it->from.coords != coords) {
        fail(ErrorKind::MissingMapping, "no image for point " + coords_to_string(coords));
    }
    return it->value;
}

const Coords& FiniteMap::value_at(const Point& point) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), point.coords,
                               [](const MapEntry& e, const Coords& c) {
                                   return coords_less(e.from.coords, c);
                               });
    if (it == entries_.end() || it->from.coords != point.coords) {
        fail(ErrorKind::MissingMapping, "no image for point " + point.id);
    }
    return it->value;
}

FiniteMap convex_combination(const FiniteMap& f, const FiniteMap& g, const Rational& t) {
    if (t < 0 || t > 1) {
        fail(ErrorKind::Validation, "combination parameter t must lie in [0,1]");
    }
    if (f.domain_dimension() != g.domain_dimension() ||
        f.codomain_dimension() != g.codomain_dimension() || f.size() != g.size()) {
        fail(ErrorKind::DomainMismatch, "maps are not combinable");
    }
    const Rational s = Rational(1) - t;
    std::vector<MapEntry> entries;
    entries.reserve(f.size());
    for (const auto& entry : f.entries()) {
        if (!g.defined_at(entry.from.coords)) {
            fail(ErrorKind::DomainMismatch,
                 "maps have different domains at " + entry.from.id);
        }
        const Coords& gv = g.value_at_coords(entry.from.coords);
        Coords value(entry.value.size());
        for (std::size_t k = 0; k < value.size(); ++k) {
            value[k] = s * entry.value[k] + t * gv[k];
        }
        entries.push_back(MapEntry{entry.from, std::move(value)});
    }
    return FiniteMap(f.domain_dimension(), f.codomain_dimension(), std::move(entries));
}

FiniteMap compose(const FiniteMap& psi, const FiniteMap& f) {
    if (psi.domain_dimension() != f.codomain_dimension()) {
        fail(ErrorKind::DimensionMismatch, "composition dimensions do not match");
    }
    std::vector<MapEntry> entries;
    entries.reserve(f.size());
    for (const auto& entry : f.entries()) {
        entries.push_back(MapEntry{entry.from, psi.value_at_coords(entry.value)});
    }
    return FiniteMap(f.domain_dimension(), psi.codomain_dimension(), std::move(entries));
}

bool agree_on_support(const FiniteMap& f, const FiniteMap& g, const DiscreteMeasure& mu) {
    for (const auto& atom : mu.atoms()) {
        if (f.value_at(atom.point) != g.value_at(atom.point)) return false;
    }
    return true;
}

FiniteMap constant_map(int domain_dimension, const std::vector<Point>& points, Coords value) {
    std::vector<MapEntry> entries;
    entries.reserve(points.size());
    for (const auto& p : points) entries.push_back(MapEntry{p, value});
    return FiniteMap(domain_dimension, static_cast<int>(value.size()), std::move(entries));
}

} // namespace pushcert
