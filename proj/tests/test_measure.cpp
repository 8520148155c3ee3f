#include "pushcert/errors.hpp"
#include "pushcert/measure.hpp"
#include "pushcert/measure_ops.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace pushcert;
using namespace pushcert::testing;

namespace {

/// Integral of a tabulated scalar function against a measure.
Rational integrate(const FiniteMap& h, const DiscreteMeasure& mu) {
    Rational total(0);
    for (const auto& atom : mu.atoms()) total += atom.weight * h.value_at(atom.point)[0];
    return total;
}

} // namespace

TEST_CASE("construction drops zero weights and rejects bad atoms") {
    const Point a{"a", Coords{Rational(0)}};
    const Point b{"b", Coords{Rational(1)}};
    const DiscreteMeasure m(1, {Atom{a, Rational(1, 2)}, Atom{b, Rational(0)}});
    CHECK(m.size() == 1);
    CHECK(m.mass() == Rational(1, 2));
    CHECK_FALSE(m.is_probability());

    CHECK_THROWS_AS(DiscreteMeasure(1, {Atom{a, Rational(-1, 2)}}), Error);
    CHECK_THROWS_AS(
        DiscreteMeasure(1, {Atom{a, Rational(1, 2)}, Atom{{"a2", a.coords}, Rational(1, 2)}}),
        Error);
    CHECK_THROWS_AS(DiscreteMeasure(2, {Atom{a, Rational(1)}}), Error); // wrong dimension
}

TEST_CASE("atoms are stored in canonical coordinate order") {
    const DiscreteMeasure m(1, {Atom{{"hi", Coords{Rational(5)}}, Rational(1, 2)},
                                Atom{{"lo", Coords{Rational(-3)}}, Rational(1, 2)}});
    CHECK(m.atoms().front().point.id == "lo");
    CHECK(m.atoms().back().point.id == "hi");
}

TEST_CASE("push_forward collapses a constant map to a Dirac") {
    const auto p = uniform_line(2, "x");
    const FiniteMap f = constant_map(1, support_points(p), Coords{Rational(9)});
    const DiscreteMeasure pushed = push_forward(f, p);
    CHECK(measures_equal(pushed, DiscreteMeasure::dirac(Point{"", Coords{Rational(9)}})));
    CHECK(pushed.mass() == 1);
}

TEST_CASE("push_forward keeps distinct images apart") {
    const auto p = uniform_line(2, "x");
    const FiniteMap f = scalar_map(support_points(p), {Rational(10), Rational(11)});
    const DiscreteMeasure pushed = push_forward(f, p);
    REQUIRE(pushed.size() == 2);
    CHECK(pushed.weight_at(Coords{Rational(10)}) == Rational(1, 2));
    CHECK(pushed.weight_at(Coords{Rational(11)}) == Rational(1, 2));
}

TEST_CASE("push_forward reports atoms without an image") {
    const auto p = uniform_line(2, "x");
    const FiniteMap f = scalar_map({p.atoms()[0].point}, {Rational(1)});
    CHECK_THROWS_AS(push_forward(f, p), Error);
}

TEST_CASE("push_forward calculus properties on generated instances") {
    Rng rng(20240811);
    for (int round = 0; round < 60; ++round) {
        const int dim = rng.integer(1, 2);
        const auto mu = rng.measure(dim, rng.integer(1, 4), -3, 3, "m");
        const auto nu = rng.measure(dim, rng.integer(1, 4), -3, 3, "n");
        const auto both = union_points(mu, nu);
        const FiniteMap f = rng.map_on(both, rng.integer(1, 2), -2, 2);

        // mass preservation
        CHECK(push_forward(f, mu).mass() == mu.mass());

        // linearity over nonnegative rational combinations
        const Rational a = rng.positive_rational(), b = rng.positive_rational();
        const DiscreteMeasure combo = add(scale(mu, a), scale(nu, b));
        CHECK(measures_equal(push_forward(f, combo),
                             add(scale(push_forward(f, mu), a), scale(push_forward(f, nu), b))));

        // composition through a tabulated outer map
        const DiscreteMeasure pushed_combo = push_forward(f, combo);
        std::vector<Point> image_points;
        for (const auto& atom : pushed_combo.atoms()) {
            image_points.push_back(atom.point);
        }
        const FiniteMap psi = rng.map_on(image_points, 1, -2, 2);
        CHECK(measures_equal(push_forward(psi, push_forward(f, mu)),
                             push_forward(compose(psi, f), mu)));

        // change of variables for a tabulated scalar h
        const FiniteMap h = rng.map_on(image_points, 1, -3, 3);
        CHECK(integrate(h, push_forward(f, mu)) == integrate(compose(h, f), mu));

        // almost-everywhere equality: an extra off-support point may differ
        std::vector<MapEntry> g_entries(f.entries().begin(), f.entries().end());
        Coords far{Rational(50)};
        if (dim == 2) far.push_back(Rational(50));
        g_entries.push_back(MapEntry{Point{"far", far},
                                     Coords(static_cast<std::size_t>(f.codomain_dimension()),
                                            Rational(99))});
        const FiniteMap g(dim, f.codomain_dimension(), std::move(g_entries));
        CHECK(agree_on_support(f, g, mu));
        CHECK(measures_equal(push_forward(f, mu), push_forward(g, mu)));
    }
}

TEST_CASE("min_measure follows the pointwise minimum") {
    const Rational half(1, 2), third(1, 3), two_thirds(2, 3);
    const Point a{"a", Coords{Rational(0)}}, b{"b", Coords{Rational(1)}},
        c{"c", Coords{Rational(2)}};

    SUBCASE("disjoint supports give the zero measure") {
        const DiscreteMeasure p(1, {Atom{a, Rational(1)}});
        const DiscreteMeasure q(1, {Atom{b, Rational(1)}});
        CHECK(min_measure(p, q).empty());
    }
    SUBCASE("identical measures are their own minimum") {
        const DiscreteMeasure p(1, {Atom{a, half}, Atom{b, half}});
        CHECK(measures_equal(min_measure(p, p), p));
    }
    SUBCASE("shared atom takes the smaller weight") {
        const DiscreteMeasure p(1, {Atom{a, half}, Atom{b, half}});
        const DiscreteMeasure q(1, {Atom{a, third}, Atom{c, two_thirds}});
        const DiscreteMeasure expected(1, {Atom{a, third}});
        CHECK(measures_equal(min_measure(p, q), expected));
    }
    SUBCASE("dimension mismatch is rejected") {
        const DiscreteMeasure p(1, {Atom{a, Rational(1)}});
        const DiscreteMeasure q(2, {Atom{{"z", Coords{Rational(0), Rational(0)}}, Rational(1)}});
        CHECK_THROWS_AS(min_measure(p, q), Error);
    }
}

TEST_CASE("reduce_pair subtracts the common mass exactly") {
    const Rational half(1, 2);
    const Point a{"a", Coords{Rational(0)}}, b{"b", Coords{Rational(1)}},
        c{"c", Coords{Rational(2)}};

    SUBCASE("equal measures reduce to zero") {
        const DiscreteMeasure p(1, {Atom{a, half}, Atom{b, half}});
        const ReducedPair r = reduce_pair(p, p);
        CHECK(r.p_residual.empty());
        CHECK(r.q_residual.empty());
        CHECK(r.residual_mass == 0);
    }
    SUBCASE("disjoint supports are untouched") {
        const DiscreteMeasure p(1, {Atom{a, Rational(1)}});
        const DiscreteMeasure q(1, {Atom{b, Rational(1)}});
        const ReducedPair r = reduce_pair(p, q);
        CHECK(measures_equal(r.p_residual, p));
        CHECK(measures_equal(r.q_residual, q));
        CHECK(r.residual_mass == 1);
    }
    SUBCASE("one shared atom cancels") {
        const DiscreteMeasure p(1, {Atom{a, half}, Atom{b, half}});
        const DiscreteMeasure q(1, {Atom{a, half}, Atom{c, half}});
        const ReducedPair r = reduce_pair(p, q);
        CHECK(measures_equal(r.p_residual, DiscreteMeasure(1, {Atom{b, half}})));
        CHECK(measures_equal(r.q_residual, DiscreteMeasure(1, {Atom{c, half}})));
        CHECK(r.residual_mass == half);
    }
}

TEST_CASE("reduce_pair residuals are disjoint with equal masses") {
    Rng rng(77001);
    for (int round = 0; round < 60; ++round) {
        const auto p = rng.probability_measure(1, rng.integer(1, 5), -4, 4, "s");
        const auto q = rng.probability_measure(1, rng.integer(1, 5), -4, 4, "t");
        const ReducedPair r = reduce_pair(p, q);
        CHECK(r.p_residual.mass() == r.q_residual.mass());
        for (const auto& atom : r.p_residual.atoms()) {
            CHECK_FALSE(r.q_residual.contains(atom.point.coords));
        }
        CHECK(measures_equal(add(r.p_residual, min_measure(p, q)), p));
        CHECK(measures_equal(add(r.q_residual, min_measure(p, q)), q));
        CHECK((r.residual_mass == 0) == measures_equal(p, q));
    }
}

TEST_CASE("second_moment sums weighted squared norms") {
    CHECK(second_moment(DiscreteMeasure::dirac(Point{"", Coords{Rational(0)}})) == 0);
    const DiscreteMeasure symmetric(1, {Atom{{"m", Coords{Rational(-1)}}, Rational(1, 2)},
                                        Atom{{"p", Coords{Rational(1)}}, Rational(1, 2)}});
    CHECK(second_moment(symmetric) == 1);
    const DiscreteMeasure planar(
        2, {Atom{{"u", Coords{Rational(1), Rational(1)}}, Rational(1, 3)},
            Atom{{"v", Coords{Rational(2), Rational(0)}}, Rational(2, 3)}});
    CHECK(second_moment(planar) == Rational(10, 3));
}

TEST_CASE("inner_product_integral matches its algebraic identities") {
    const auto p = uniform_line(2, "x");
    const auto pts = support_points(p);
    const FiniteMap f = scalar_map(pts, {Rational(2), Rational(-3)});
    CHECK(inner_product_integral(f, f, p) == second_moment(push_forward(f, p)));

    const FiniteMap neg = scalar_map(pts, {Rational(-2), Rational(3)});
    CHECK(inner_product_integral(f, neg, p) == -inner_product_integral(f, f, p));

    const FiniteMap e1 = scalar_map(pts, {Rational(1), Rational(0)});
    const FiniteMap e2 = scalar_map(pts, {Rational(0), Rational(1)});
    CHECK(inner_product_integral(e1, e2, p) == 0);
}

TEST_CASE("convex_combination interpolates pointwise") {
    const auto p = uniform_line(1, "x");
    const auto pts = support_points(p);
    const FiniteMap f = scalar_map(pts, {Rational(0)});
    const FiniteMap g = scalar_map(pts, {Rational(1)});
    CHECK(convex_combination(f, g, Rational(0)).value_at(pts[0]) == Coords{Rational(0)});
    CHECK(convex_combination(f, g, Rational(1)).value_at(pts[0]) == Coords{Rational(1)});
    CHECK(convex_combination(f, g, Rational(1, 2)).value_at(pts[0]) ==
          Coords{Rational(1, 2)});
    CHECK_THROWS_AS(convex_combination(f, g, Rational(3, 2)), Error);

    const FiniteMap other = scalar_map({Point{"y", Coords{Rational(7)}}}, {Rational(1)});
    CHECK_THROWS_AS(convex_combination(f, other, Rational(1, 2)), Error);
}

TEST_CASE("measures_equal is exact and order-insensitive") {
    const Point a{"a", Coords{Rational(0)}}, b{"b", Coords{Rational(1)}};
    const Rational half(1, 2), third(1, 3), two_thirds(2, 3);
    const DiscreteMeasure m1(1, {Atom{a, half}, Atom{b, half}});
    const DiscreteMeasure m2(1, {Atom{b, half}, Atom{a, half}});
    const DiscreteMeasure m3(1, {Atom{a, third}, Atom{b, two_thirds}});
    CHECK(measures_equal(m1, m1));
    CHECK(measures_equal(m1, m2));
    CHECK_FALSE(measures_equal(m1, m3));
}
