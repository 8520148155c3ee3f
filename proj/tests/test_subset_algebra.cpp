#include "pushcert/errors.hpp"
#include "pushcert/subset_algebra.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <numeric>

using namespace pushcert;
using namespace pushcert::testing;

namespace {

std::vector<Rational> uniform_weights(std::size_t n) {
    return std::vector<Rational>(n, Rational(1, static_cast<unsigned>(n)));
}

} // namespace

TEST_CASE("enumerate_sums groups all subsets by exact sum") {
    SUBCASE("two equal halves") {
        const SumTable t = enumerate_sums({Rational(1, 2), Rational(1, 2)});
        CHECK(t.groups.size() == 3);
        CHECK(t.achievers(Rational(0)) == std::vector<SubsetMask>{0b00});
        CHECK(t.achievers(Rational(1, 2)) == std::vector<SubsetMask>{0b01, 0b10});
        CHECK(t.achievers(Rational(1)) == std::vector<SubsetMask>{0b11});
    }
    SUBCASE("one third and two thirds") {
        const SumTable t = enumerate_sums({Rational(1, 3), Rational(2, 3)});
        CHECK(t.groups.size() == 4);
        CHECK(t.achievers(Rational(1, 3)) == std::vector<SubsetMask>{0b01});
        CHECK(t.achievers(Rational(2, 3)) == std::vector<SubsetMask>{0b10});
    }
    SUBCASE("four quarters reach one half six ways") {
        const SumTable t = enumerate_sums(uniform_weights(4));
        CHECK(t.achievers(Rational(1, 2)).size() == 6);
        std::size_t subsets = 0;
        for (const auto& [sum, masks] : t.groups) subsets += masks.size();
        CHECK(subsets == 16);
    }
    SUBCASE("cap and positivity are enforced") {
        CHECK_THROWS_AS(enumerate_sums(uniform_weights(5), 4), Error);
        CHECK_THROWS_AS(enumerate_sums({Rational(0), Rational(1)}), Error);
        CHECK_THROWS_AS(enumerate_sums({Rational(-1, 2)}), Error);
    }
}

TEST_CASE("sum tables respect the complement bijection") {
    Rng rng(90210);
    for (int round = 0; round < 25; ++round) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
        std::vector<Rational> weights;
        for (std::size_t i = 0; i < n; ++i) weights.push_back(rng.positive_rational());
        const SumTable t = enumerate_sums(weights);
        const SubsetMask full = (SubsetMask(1) << n) - 1;
        // endpoints are uniquely achieved
        CHECK(t.achievers(Rational(0)) == std::vector<SubsetMask>{0});
        CHECK(t.achievers(t.total_mass) == std::vector<SubsetMask>{full});
        for (const auto& [sum, masks] : t.groups) {
            const auto& mirrored = t.achievers(t.total_mass - sum);
            CHECK(mirrored.size() == masks.size());
            for (SubsetMask mask : masks) {
                const SubsetMask complement = full & ~mask;
                CHECK(std::find(mirrored.begin(), mirrored.end(), complement) !=
                      mirrored.end());
            }
        }
    }
}

TEST_CASE("common_sums intersects the reachable sums") {
    const SumTable halves = enumerate_sums({Rational(1, 2), Rational(1, 2)});
    const SumTable thirds = enumerate_sums({Rational(1, 3), Rational(2, 3)});
    CHECK(common_sums(halves, thirds) == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(common_sums(thirds, thirds) ==
          std::vector<Rational>{Rational(0), Rational(1, 3), Rational(2, 3), Rational(1)});
    std::vector<Rational> own_keys;
    for (const auto& [sum, masks] : halves.groups) own_keys.push_back(sum);
    CHECK(common_sums(halves, halves) == own_keys);
}

TEST_CASE("condition (i) detects non-unique couples deterministically") {
    const SumTable halves = enumerate_sums({Rational(1, 2), Rational(1, 2)});
    const auto result = check_condition_i(halves, halves);
    REQUIRE(result.index() == 1);
    const auto& violation = std::get<1>(result);
    const auto* v = std::get_if<NonUniqueCouple>(&violation);
    REQUIRE(v != nullptr);
    CHECK(v->common_sum == Rational(1, 2));
    CHECK(v->side == Side::Q); // Q side preferred for the witness orientation
    CHECK(v->first == 0b01);
    CHECK(v->second == 0b10);
    CHECK(v->other_side == 0b01);
}

TEST_CASE("condition (i) produces the full assignment when couples are unique") {
    const SumTable thirds = enumerate_sums({Rational(1, 3), Rational(2, 3)});
    const auto result = check_condition_i(thirds, thirds);
    REQUIRE(result.index() == 0);
    const auto& assignment = std::get<0>(result);
    REQUIRE(assignment.rows.size() == 4);
    CHECK(assignment.rows[0].common_sum == 0);
    CHECK(assignment.rows[1].common_sum == Rational(1, 3));
    CHECK(assignment.rows[1].p_subset == 0b01);
    CHECK(assignment.rows[1].q_subset == 0b01);
    CHECK(assignment.rows[2].common_sum == Rational(2, 3));
    CHECK(assignment.rows[3].p_subset == 0b11);
}

TEST_CASE("condition (i) keeps only the forced endpoints for incompatible weights") {
    const SumTable halves = enumerate_sums({Rational(1, 2), Rational(1, 2)});
    const SumTable thirds = enumerate_sums({Rational(1, 3), Rational(2, 3)});
    const auto result = check_condition_i(halves, thirds);
    REQUIRE(result.index() == 0);
    CHECK(std::get<0>(result).rows.size() == 2);
}

namespace {

CommonSumAssignment hand_assignment(std::size_t n, std::size_t m, const Rational& mass,
                                    std::vector<AssignmentRow> rows) {
    CommonSumAssignment a;
    a.p_count = n;
    a.q_count = m;
    a.total_mass = mass;
    a.rows = std::move(rows);
    return a;
}

} // namespace

TEST_CASE("condition (ii) flags intersection-closure failures") {
    // Family {{}, {1,2}, {2,3}, {1,2,3}} on [3]: the complements pair up
    // (sums s and 1-s), but {1,2} n {2,3} = {2} is unindexed.
    const Rational s(2, 5);
    const auto a = hand_assignment(
        3, 3, Rational(1),
        {AssignmentRow{Rational(0), 0b000, 0b000}, AssignmentRow{s, 0b011, 0b011},
         AssignmentRow{Rational(1) - s, 0b110, 0b110}, AssignmentRow{Rational(1), 0b111, 0b111}});
    const auto violation = check_condition_ii(a);
    REQUIRE(violation.has_value());
    const auto* v = std::get_if<NotSigmaAlgebra>(&*violation);
    REQUIRE(v != nullptr);
    CHECK(v->side == Side::P);
    CHECK(v->member_a == 0b011);
    CHECK(v->member_b == 0b110);
    CHECK(v->intersection == 0b010);
}

TEST_CASE("condition (ii) accepts endpoint-only and power-set families") {
    const auto endpoints = hand_assignment(
        2, 3, Rational(1),
        {AssignmentRow{Rational(0), 0b00, 0b000}, AssignmentRow{Rational(1), 0b11, 0b111}});
    CHECK_FALSE(check_condition_ii(endpoints).has_value());

    const SumTable thirds = enumerate_sums({Rational(1, 3), Rational(2, 3)});
    const auto assignment = std::get<0>(check_condition_i(thirds, thirds));
    CHECK_FALSE(check_condition_ii(assignment).has_value());
    CHECK_FALSE(check_condition_iii(assignment).has_value());
}

TEST_CASE("condition (iii) flags crossed intersection labels") {
    // Hand-built crossing: both sides are power sets of [2] with matching
    // sums {0, 1/4, 3/4, 1}, but the subsets pairing 1/4 with 3/4 are
    // swapped on the Q side, so intersection labels disagree.
    const Rational quarter(1, 4), three_quarters(3, 4);
    const auto crossed = hand_assignment(
        2, 2, Rational(1),
        {AssignmentRow{Rational(0), 0b00, 0b00}, AssignmentRow{quarter, 0b01, 0b01},
         AssignmentRow{three_quarters, 0b10, 0b01}, AssignmentRow{Rational(1), 0b11, 0b11}});
    // (Q side reuses 0b01 for both interior sums: a family the real
    // decision path can never emit, which is the point of the fixture.)
    const auto violation = check_condition_iii(crossed);
    REQUIRE(violation.has_value());
    const auto* v = std::get_if<LabelMismatch>(&*violation);
    REQUIRE(v != nullptr);
    CHECK(v->sum_a == quarter);
    CHECK(v->sum_b == three_quarters);
    CHECK(v->p_label != v->q_label);
}

TEST_CASE("decide_disjoint runs the three conditions in order") {
    SUBCASE("uniform two versus two is nonconvex") {
        const auto d = decide_disjoint(uniform_weights(2), uniform_weights(2));
        REQUIRE_FALSE(d.convex());
        CHECK(std::holds_alternative<NonUniqueCouple>(d.violation()));
    }
    SUBCASE("uniform two versus three is convex with endpoints only") {
        const auto d = decide_disjoint(uniform_weights(2), uniform_weights(3));
        REQUIRE(d.convex());
        CHECK(d.assignment().rows.size() == 2);
    }
    SUBCASE("matching thirds are convex and structured") {
        const std::vector<Rational> w{Rational(1, 3), Rational(2, 3)};
        const auto d = decide_disjoint(w, w);
        REQUIRE(d.convex());
        CHECK(d.assignment().rows.size() == 4);
    }
    SUBCASE("a genuine sigma-algebra failure reaches condition (ii)") {
        // Unique couples at every common sum {0, 1/8, 3/8, 5/8, 7/8, 1},
        // yet on the P side {1,2} n {2,3} = {2} carries sum 2/8, which is
        // not a common sum.
        const std::vector<Rational> alpha{Rational(1, 8), Rational(2, 8), Rational(5, 8)};
        const std::vector<Rational> beta{Rational(3, 8), Rational(4, 8), Rational(1, 8)};
        const auto d = decide_disjoint(alpha, beta);
        REQUIRE_FALSE(d.convex());
        const auto* v = std::get_if<NotSigmaAlgebra>(&d.violation());
        REQUIRE(v != nullptr);
        CHECK(v->side == Side::P);
        CHECK(v->sum_a == Rational(3, 8));
        CHECK(v->sum_b == Rational(7, 8));
        CHECK(v->member_a == 0b011);
        CHECK(v->member_b == 0b110);
        CHECK(v->intersection == 0b010);
    }
    SUBCASE("unequal masses are rejected") {
        CHECK_THROWS_AS(decide_disjoint(uniform_weights(2), {Rational(1, 2)}), Error);
    }
}

TEST_CASE("decide_disjoint is symmetric in the two sides") {
    Rng rng(5150);
    for (int round = 0; round < 40; ++round) {
        const auto alpha = rng.probability_weights(static_cast<std::size_t>(rng.integer(1, 4)));
        const auto beta = rng.probability_weights(static_cast<std::size_t>(rng.integer(1, 4)));
        CHECK(decide_disjoint(alpha, beta).convex() == decide_disjoint(beta, alpha).convex());
    }
}

TEST_CASE("uniform weights decide by coprimality of the sizes") {
    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::size_t m = 1; m <= 8; ++m) {
            const auto d = decide_disjoint(uniform_weights(n), uniform_weights(m));
            const bool coprime = std::gcd(n, m) == 1;
            CHECK(d.convex() == coprime);
            if (coprime) CHECK(d.assignment().rows.size() == 2);
        }
    }
}
