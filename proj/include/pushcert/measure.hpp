#pragma once

#include "pushcert/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pushcert {

using Coords = std::vector<Rational>;

std::string coords_to_string(const Coords& coords);

/// A support point. The id is display sugar; identity is coordinate-wise.
struct Point {
    std::string id;
    Coords coords;

    /// A point labeled by its own coordinates, e.g. "(1/2,0)".
    static Point from_coords(Coords coords);
};

bool same_point(const Point& a, const Point& b);
bool coords_less(const Coords& a, const Coords& b);

struct Atom {
    Point point;
    Rational weight;
};

/// A finitely supported nonnegative measure with exact rational weights.
/// Atoms are stored in canonical order (lexicographic by coordinates),
/// weights are strictly positive, and the mass is exactly their sum.
/// Immutable after construction.
class DiscreteMeasure {
public:
    /// Drops zero-weight atoms, rejects negative weights and duplicate
    /// coordinates, sorts canonically.
    DiscreteMeasure(int dimension, std::vector<Atom> atoms);

    static DiscreteMeasure dirac(Point point);

    int dimension() const { return dimension_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const Rational& mass() const { return mass_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }
    bool is_probability() const { return mass_ == 1; }

    /// Weight at the given coordinates; zero if not in the support.
    Rational weight_at(const Coords& coords) const;
    bool contains(const Coords& coords) const;
    std::optional<Point> find_point(const Coords& coords) const;

private:
    int dimension_;
    std::vector<Atom> atoms_;
    Rational mass_;
};

/// Accumulates (point, weight) pairs, merging weights of coinciding
/// coordinates; the point label of the first insertion wins.
class MeasureAccumulator {
public:
    explicit MeasureAccumulator(int dimension) : dimension_(dimension) {}
    void add(const Point& point, const Rational& weight);
    DiscreteMeasure build() const;

private:
    int dimension_;
    std::vector<Atom> atoms_; // kept sorted by coordinates
};

DiscreteMeasure add(const DiscreteMeasure& a, const DiscreteMeasure& b);
DiscreteMeasure scale(const DiscreteMeasure& m, const Rational& factor);

/// a - b where b <= a atom-wise; used only by the common-mass reduction.
DiscreteMeasure subtract(const DiscreteMeasure& a, const DiscreteMeasure& b);

} // namespace pushcert
