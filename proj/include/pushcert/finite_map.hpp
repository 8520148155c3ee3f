#pragma once

#include "pushcert/measure.hpp"
#include "pushcert/rational.hpp"

#include <vector>

namespace pushcert {

struct MapEntry {
    Point from;
    Coords value;
};

/// An explicit function from a finite set of points to rational value
/// vectors: the restriction of a map to the supports it acts on. Entries
/// are stored in canonical domain order and every entry shares the same
/// codomain dimension. Immutable after construction.
class FiniteMap {
public:
    FiniteMap(int domain_dimension, int codomain_dimension, std::vector<MapEntry> entries);

    int domain_dimension() const { return domain_dimension_; }
    int codomain_dimension() const { return codomain_dimension_; }
    const std::vector<MapEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    bool defined_at(const Coords& coords) const;
    /// Image of the given point; throws MissingMapping if undefined.
    const Coords& value_at(const Point& point) const;
    const Coords& value_at_coords(const Coords& coords) const;

private:
    int domain_dimension_;
    int codomain_dimension_;
    std::vector<MapEntry> entries_; // sorted by domain coordinates
};

/// Pointwise (1-t)f + tg for 0 <= t <= 1; domains must coincide.
FiniteMap convex_combination(const FiniteMap& f, const FiniteMap& g, const Rational& t);

/// Table composition psi o f: every value of f must be in psi's domain.
FiniteMap compose(const FiniteMap& psi, const FiniteMap& f);

/// True iff f and g agree at every atom of mu (equality almost everywhere
/// reduces to this on finite supports).
bool agree_on_support(const FiniteMap& f, const FiniteMap& g, const DiscreteMeasure& mu);

/// A constant map with the given value on the given points.
FiniteMap constant_map(int domain_dimension, const std::vector<Point>& points, Coords value);

} // namespace pushcert
