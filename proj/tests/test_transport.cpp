#include "pushcert/errors.hpp"
#include "pushcert/transport.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace pushcert;
using namespace pushcert::testing;

namespace {

BigInt factorial(std::size_t n) {
    BigInt out(1);
    for (std::size_t k = 2; k <= n; ++k) out *= static_cast<unsigned>(k);
    return out;
}

} // namespace

TEST_CASE("enumeration matches the worked examples") {
    SUBCASE("a Dirac cannot cover two points") {
        const auto p = uniform_line(1, "x", 0);
        const auto q = uniform_line(2, "y", 10);
        CHECK(enumerate_transport_maps(p, q).maps.empty());
    }
    SUBCASE("two fair atoms onto two fair atoms: both bijections") {
        const auto p = uniform_line(2, "x", 0);
        const auto q = uniform_line(2, "y", 10);
        const auto result = enumerate_transport_maps(p, q);
        REQUIRE(result.maps.size() == 2);
        CHECK_FALSE(result.truncated);
        // Lexicographic: identity pairing first, the crossing second.
        CHECK(result.maps[0].value_at(p.atoms()[0].point) == Coords{Rational(10)});
        CHECK(result.maps[0].value_at(p.atoms()[1].point) == Coords{Rational(11)});
        CHECK(result.maps[1].value_at(p.atoms()[0].point) == Coords{Rational(11)});
        CHECK(result.maps[1].value_at(p.atoms()[1].point) == Coords{Rational(10)});
    }
    SUBCASE("three uniform atoms cannot split over two") {
        const auto p = uniform_line(3, "x", 0);
        const auto q = uniform_line(2, "y", 10);
        CHECK(enumerate_transport_maps(p, q).maps.empty());
    }
    SUBCASE("four uniform atoms over two: the six balanced fibers") {
        const auto p = uniform_line(4, "x", 0);
        const auto q = uniform_line(2, "y", 10);
        CHECK(enumerate_transport_maps(p, q).maps.size() == 6);
    }
    SUBCASE("the limit truncates deterministically") {
        const auto p = uniform_line(4, "x", 0);
        const auto q = uniform_line(2, "y", 10);
        const auto result = enumerate_transport_maps(p, q, 3);
        CHECK(result.maps.size() == 3);
        CHECK(result.truncated);
    }
}

TEST_CASE("classification covers the trichotomy") {
    SUBCASE("empty") {
        const auto report = classify_transport(uniform_line(1, "x", 0), uniform_line(2, "y", 10));
        CHECK(report.verdict == TransportVerdict::Empty);
        CHECK(report.count.value == 0);
    }
    SUBCASE("singleton between Diracs") {
        const auto p = uniform_line(1, "x", 0);
        const auto q = uniform_line(1, "y", 10);
        const auto report = classify_transport(p, q);
        CHECK(report.verdict == TransportVerdict::Singleton);
        REQUIRE(report.representative.has_value());
        CHECK(report.representative->value_at(p.atoms()[0].point) == Coords{Rational(10)});
    }
    SUBCASE("uniform pairs with two or more maps are nonconvex") {
        const auto p = uniform_line(2, "x", 0);
        const auto q = uniform_line(2, "y", 10);
        const auto report = classify_transport(p, q);
        CHECK(report.verdict == TransportVerdict::Nonconvex);
        CHECK(report.count.value == 2);
        REQUIRE(report.evidence.has_value());
        CHECK(reverify_evidence(*report.evidence, p, q));
        // The midpoint of the two bijections lands off the support of Q.
        CHECK(report.evidence->mid_push_p.contains(Coords{Rational(21, 2)}));
    }
    SUBCASE("uniform three versus three counts 3! maps") {
        const auto report = classify_transport(uniform_line(3, "x", 0), uniform_line(3, "y", 10));
        CHECK(report.verdict == TransportVerdict::Nonconvex);
        CHECK(report.count.value == 6);
    }
    SUBCASE("nonuniform weights go through the exact search") {
        const auto p =
            weighted_line({Rational(1, 4), Rational(1, 4), Rational(1, 2)}, "x", 0);
        const auto q = weighted_line({Rational(1, 2), Rational(1, 2)}, "y", 10);
        const auto report = classify_transport(p, q);
        CHECK_FALSE(report.used_uniform_shortcut);
        CHECK(report.verdict == TransportVerdict::Nonconvex);
        CHECK(report.count.value == 2); // {x1,x2}->one side, x3->the other
        const auto skewed = weighted_line({Rational(1, 4), Rational(3, 4)}, "x", 0);
        CHECK(classify_transport(skewed, q).verdict == TransportVerdict::Empty);
    }
    SUBCASE("a tiny limit on a rich instance is an error") {
        const auto p = weighted_line({Rational(1, 4), Rational(1, 4), Rational(1, 2)}, "x", 0);
        const auto q = weighted_line({Rational(1, 2), Rational(1, 2)}, "y", 10);
        CHECK_THROWS_AS(classify_transport(p, q, 1), Error);
    }
}

TEST_CASE("uniform shortcut agrees with plain enumeration") {
    for (std::size_t n = 1; n <= 5; ++n) {
        for (std::size_t m = 1; m <= 5; ++m) {
            const auto p = uniform_line(n, "x", 0);
            const auto q = uniform_line(m, "y", 10);
            const auto report = classify_transport(p, q);
            const auto plain = enumerate_transport_maps(p, q);
            REQUIRE_FALSE(plain.truncated);
            CHECK(report.count.value == plain.maps.size());
            if (n == m) CHECK(report.count.value == factorial(n));
        }
    }
}

TEST_CASE("squared-norm matching membership") {
    const auto p = uniform_line(2, "x", 0);
    const auto q = uniform_line(2, "y", 10);
    for (const auto& f : enumerate_transport_maps(p, q).maps) {
        CHECK(m2_membership(f, p, q));
    }
    const FiniteMap zero = constant_map(1, support_points(p), Coords{Rational(0)});
    CHECK_FALSE(m2_membership(zero, p, q));
    const FiniteMap identity =
        scalar_map(support_points(p), {Rational(0), Rational(1)});
    CHECK(m2_membership(identity, p, p));
}

TEST_CASE("distinct transport maps never keep their midpoint in the squared-norm set") {
    // Equality in Cauchy-Schwarz pins the inner product, so a midpoint of
    // distinct maps always loses the squared-norm match.
    for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{
             {2, 2}, {3, 3}, {4, 2}, {4, 4}}) {
        const auto p = uniform_line(n, "x", 0);
        const auto q = uniform_line(m, "y", 10);
        const auto maps = enumerate_transport_maps(p, q).maps;
        for (std::size_t a = 0; a < maps.size(); ++a) {
            for (std::size_t b = a; b < maps.size(); ++b) {
                const FiniteMap mid = convex_combination(maps[a], maps[b], Rational(1, 2));
                const bool all_match = m2_membership(maps[a], p, q) &&
                                       m2_membership(maps[b], p, q) &&
                                       m2_membership(mid, p, q);
                if (all_match) {
                    CHECK(inner_product_integral(maps[a], maps[b], p) == second_moment(q));
                    CHECK(a == b);
                } else {
                    CHECK(a != b);
                }
            }
        }
    }
}

TEST_CASE("couplings: construction, membership, and mixing") {
    Rng rng(2025);
    const auto p = rng.probability_measure(1, 3, 0, 9, "s");
    const auto q = rng.probability_measure(1, 2, 10, 19, "t");

    const Coupling independent = independent_coupling(p, q);
    CHECK(is_coupling(independent, p, q));

    SUBCASE("mixing preserves the marginals") {
        Coupling other = independent;
        // Shift mass along a rectangle; marginals survive when the shift
        // fits every corner.
        const Rational eps(1, 1000);
        other.weights[0][0] += eps;
        other.weights[0][1] -= eps;
        other.weights[1][0] -= eps;
        other.weights[1][1] += eps;
        REQUIRE(is_coupling(other, p, q));
        CHECK(is_coupling(coupling_mix(independent, other, Rational(1, 3)), p, q));
    }
    SUBCASE("corrupted matrices are rejected") {
        Coupling bad = independent;
        bad.weights[0][0] += Rational(1, 100);
        CHECK_FALSE(is_coupling(bad, p, q));
    }
    SUBCASE("deterministic couplings of enumerated maps are valid") {
        const auto up = uniform_line(4, "x", 0);
        const auto uq = uniform_line(2, "y", 10);
        for (const auto& f : enumerate_transport_maps(up, uq).maps) {
            CHECK(is_coupling(deterministic_coupling(f, up, uq), up, uq));
        }
    }
    SUBCASE("shape mismatches raise") {
        const auto wide = rng.probability_measure(1, 4, 30, 39, "w");
        CHECK_THROWS_AS(is_coupling(independent, wide, q), Error);
    }
}
