#include "pushcert/measure_ops.hpp"

#include "pushcert/errors.hpp"

namespace pushcert {

DiscreteMeasure push_forward(const FiniteMap& f, const DiscreteMeasure& mu) {
    MeasureAccumulator acc(f.codomain_dimension());
    for (const auto& atom : mu.atoms()) {
        const Coords& image = f.value_at(atom.point);
        acc.add(Point::from_coords(image), atom.weight);
    }
    return acc.build();
}

DiscreteMeasure min_measure(const DiscreteMeasure& p, const DiscreteMeasure& q) {
    if (p.dimension() != q.dimension()) {
        fail(ErrorKind::DimensionMismatch, "min_measure requires equal dimensions");
    }
    std::vector<Atom> atoms;
    for (const auto& atom : p.atoms()) {
        const Rational qw = q.weight_at(atom.point.coords);
        if (qw == 0) continue;
        atoms.push_back(Atom{atom.point, atom.weight < qw ? atom.weight : qw});
    }
    return DiscreteMeasure(p.dimension(), std::move(atoms));
}

ReducedPair reduce_pair(const DiscreteMeasure& p, const DiscreteMeasure& q) {
    if (p.dimension() != q.dimension()) {
        fail(ErrorKind::DimensionMismatch, "reduce_pair requires equal dimensions");
    }
    const DiscreteMeasure shared = min_measure(p, q);
    DiscreteMeasure p_res = subtract(p, shared);
    DiscreteMeasure q_res = subtract(q, shared);
    if (p_res.mass() != q_res.mass()) {
        fail(ErrorKind::Internal, "reduction produced unequal residual masses");
    }
    Rational residual_mass = p_res.mass();
    return ReducedPair{std::move(p_res), std::move(q_res), shared.mass(),
                       std::move(residual_mass)};
}

Rational second_moment(const DiscreteMeasure& mu) {
    Rational total(0);
    for (const auto& atom : mu.atoms()) {
        Rational norm_sq(0);
        for (const auto& c : atom.point.coords) norm_sq += c * c;
        total += atom.weight * norm_sq;
    }
    return total;
}

Rational inner_product_integral(const FiniteMap& f, const FiniteMap& g,
                                const DiscreteMeasure& p) {
    if (f.codomain_dimension() != g.codomain_dimension()) {
        fail(ErrorKind::DimensionMismatch, "inner product requires equal codomain dimensions");
    }
    Rational total(0);
    for (const auto& atom : p.atoms()) {
        const Coords& fv = f.value_at(atom.point);
        const Coords& gv = g.value_at(atom.point);
        Rational dot(0);
        for (std::size_t k = 0; k < fv.size(); ++k) dot += fv[k] * gv[k];
        total += atom.weight * dot;
    }
    return total;
}

bool measures_equal(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (a.dimension() != b.dimension() || a.size() != b.size()) return false;
    // Both atom lists are canonically ordered.
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.atoms()[i].point.coords != b.atoms()[i].point.coords) return false;
        if (a.atoms()[i].weight != b.atoms()[i].weight) return false;
    }
    return true;
}

} // namespace pushcert
