#include "pushcert/measure.hpp"

#include "pushcert/errors.hpp"

#include <algorithm>

namespace pushcert {

std::string coords_to_string(const Coords& coords) {
    std::string out = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i > 0) out += ",";
        out += rational_to_string(coords[i]);
    }
    out += ")";
    return out;
}

Point Point::from_coords(Coords coords) {
    Point p;
    p.id = coords_to_string(coords);
    p.coords = std::move(coords);
    return p;
}

bool same_point(const Point& a, const Point& b) {
    return a.coords == b.coords;
}

bool coords_less(const Coords& a, const Coords& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

void check_dimension(int dimension, const Point& point) {
    if (static_cast<int>(point.coords.size()) != dimension) {
        fail(ErrorKind::DimensionMismatch,
             "point " + point.id + " has " + std::to_string(point.coords.size()) +
                 " coordinates, expected " + std::to_string(dimension));
    }
}

} // namespace

DiscreteMeasure::DiscreteMeasure(int dimension, std::vector<Atom> atoms)
    : dimension_(dimension), mass_(0) {
    if (dimension < 1) {
        fail(ErrorKind::Validation, "measure dimension must be >= 1");
    }
    for (auto& atom : atoms) {
        check_dimension(dimension, atom.point);
        if (atom.weight < 0) {
            fail(ErrorKind::Validation,
                 "negative weight " + rational_to_string(atom.weight) + " at " + atom.point.id);
        }
        if (atom.weight == 0) continue; // dropped silently
        atoms_.push_back(std::move(atom));
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) {
        return coords_less(a.point.coords, b.point.coords);
    });
    for (std::size_t i = 0; i + 1 < atoms_.size(); ++i) {
        if (atoms_[i].point.coords == atoms_[i + 1].point.coords) {
            fail(ErrorKind::Validation,
                 "duplicate atom coordinates " + coords_to_string(atoms_[i].point.coords));
        }
    }
    for (const auto& atom : atoms_) mass_ += atom.weight;
}

DiscreteMeasure DiscreteMeasure::dirac(Point point) {
    const int dim = static_cast<int>(point.coords.size());
    return DiscreteMeasure(dim, {Atom{std::move(point), Rational(1)}});
}

Rational DiscreteMeasure::weight_at(const Coords& coords) const {
    for (const auto& atom : atoms_) {
        if (atom.point.coords == coords) return atom.weight;
    }
    return Rational(0);
}

bool DiscreteMeasure::contains(const Coords& coords) const {
    return weight_at(coords) != 0;
}

std::optional<Point> DiscreteMeasure::find_point(const Coords& coords) const {
    for (const auto& atom : atoms_) {
        if (atom.point.coords == coords) return atom.point;
    }
    return std::nullopt;
}

void MeasureAccumulator::add(const Point& point, const Rational& weight) {
    check_dimension(dimension_, point);
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), point,
                               [](const Atom& a, const Point& p) {
                                   return coords_less(a.point.coords, p.coords);
                               });
    if (it != atoms_.end() && it->point.coords == point.coords) {
        it->weight += weight;
    } else {
        atoms_.insert(it, Atom{point, weight});
    }
}

DiscreteMeasure MeasureAccumulator::build() const {
    return DiscreteMeasure(dimension_, atoms_);
}

DiscreteMeasure add(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (a.dimension() != b.dimension()) {
        fail(ErrorKind::DimensionMismatch, "cannot add measures of different dimension");
    }
    MeasureAccumulator acc(a.dimension());
    for (const auto& atom : a.atoms()) acc.add(atom.point, atom.weight);
    for (const auto& atom : b.atoms()) acc.add(atom.point, atom.weight);
    return acc.build();
}

DiscreteMeasure scale(const DiscreteMeasure& m, const Rational& factor) {
    if (factor < 0) {
        fail(ErrorKind::Validation, "negative scale factor");
    }
    std::vector<Atom> atoms = m.atoms();
    for (auto& atom : atoms) atom.weight *= factor;
    return DiscreteMeasure(m.dimension(), std::move(atoms));
}

DiscreteMeasure subtract(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (a.dimension() != b.dimension()) {
        fail(ErrorKind::DimensionMismatch, "cannot subtract measures of different dimension");
    }
    std::vector<Atom> atoms;
    for (const auto& atom : a.atoms()) {
        Rational w = atom.weight - b.weight_at(atom.point.coords);
        if (w < 0) {
            fail(ErrorKind::Internal,
                 "subtraction would produce a negative weight at " + atom.point.id);
        }
        atoms.push_back(Atom{atom.point, std::move(w)});
    }
    for (const auto& atom : b.atoms()) {
        if (!a.contains(atom.point.coords)) {
            fail(ErrorKind::Internal, "subtrahend support exceeds minuend at " + atom.point.id);
        }
    }
    return DiscreteMeasure(a.dimension(), std::move(atoms));
}

} // namespace pushcert
