#pragma once

#include "pushcert/finite_map.hpp"
#include "pushcert/measure.hpp"

#include <tuple>

namespace pushcert {

/// Image measure of mu under f: weights of atoms sharing an image are
/// summed; the mass is preserved exactly. Every atom of mu must have an
/// image.
DiscreteMeasure push_forward(const FiniteMap& f, const DiscreteMeasure& mu);

/// Pointwise minimum min(P,Q): an atom at x with weight
/// min(P({x}), Q({x})) for every x in both supports.
DiscreteMeasure min_measure(const DiscreteMeasure& p, const DiscreteMeasure& q);

struct ReducedPair {
    DiscreteMeasure p_residual;
    DiscreteMeasure q_residual;
    Rational shared_removed; // mass of min(P,Q)
    Rational residual_mass;  // common mass of the residuals; zero iff P = Q
};

/// Subtracts the common mass: the residuals have disjoint supports and
/// equal total mass.
ReducedPair reduce_pair(const DiscreteMeasure& p, const DiscreteMeasure& q);

/// Integral of the squared Euclidean norm, exactly.
Rational second_moment(const DiscreteMeasure& mu);

/// Integral of <f, g> against P, exactly.
Rational inner_product_integral(const FiniteMap& f, const FiniteMap& g,
                                const DiscreteMeasure& p);

/// Exact equality: same dimension and identical atoms with identical
/// weights, independent of atom order.
bool measures_equal(const DiscreteMeasure& a, const DiscreteMeasure& b);

} // namespace pushcert
