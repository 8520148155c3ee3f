#pragma once

#include "pushcert/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace pushcert {

/// Index subsets of [n] as bitmasks; bit i stands for index i+1.
/// Canonical subset order is ascending mask value.
using SubsetMask = std::uint64_t;

inline constexpr std::size_t kDefaultAtomCap = 20;

std::vector<std::size_t> subset_indices(SubsetMask mask); // 1-based, sorted
std::string subset_to_string(SubsetMask mask);

/// All 2^n index subsets of a positive weight vector, grouped by their
/// exact weight sum. Zero maps to exactly {empty} and the total mass to
/// exactly {full}; every subset appears exactly once across the table.
struct SumTable {
    std::vector<Rational> weights;
    Rational total_mass;
    std::map<Rational, std::vector<SubsetMask>> groups; // masks ascending

    const std::vector<SubsetMask>& achievers(const Rational& sum) const;
};

SumTable enumerate_sums(const std::vector<Rational>& weights,
                        std::size_t cap = kDefaultAtomCap);

/// Sorted intersection of the two tables' reachable sums. Contains 0
/// always, and the total mass whenever the two masses coincide.
std::vector<Rational> common_sums(const SumTable& ta, const SumTable& tb);

enum class Side { P, Q };

/// For every common sum, the unique pair of index subsets achieving it on
/// each side.
struct AssignmentRow {
    Rational common_sum;
    SubsetMask p_subset;
    SubsetMask q_subset;
};

struct CommonSumAssignment {
    std::size_t p_count = 0; // number of P-side weights
    std::size_t q_count = 0;
    Rational total_mass;
    std::vector<AssignmentRow> rows; // sorted by common_sum

    const AssignmentRow& row_for(const Rational& sum) const;
    std::optional<Rational> label_of(Side side, SubsetMask subset) const;
};

/// One common sum is achieved by two different subsets on one side.
struct NonUniqueCouple {
    Side side;
    Rational common_sum;
    SubsetMask first;
    SubsetMask second;
    SubsetMask other_side; // canonical achiever on the opposite side
};

/// The indexed family on one side is not intersection-closed: the two
/// subsets below are members but their intersection is unindexed.
struct NotSigmaAlgebra {
    Side side;
    Rational sum_a;
    Rational sum_b;
    SubsetMask member_a;
    SubsetMask member_b;
    SubsetMask intersection;
    SubsetMask other_a; // paired subsets on the opposite side, for witnesses
    SubsetMask other_b;
};

/// Intersections exist on both sides but carry different labels.
struct LabelMismatch {
    Rational sum_a;
    Rational sum_b;
    Rational p_label;
    Rational q_label;
    SubsetMask p_a, p_b, q_a, q_b;
};

using ConditionViolation = std::variant<NonUniqueCouple, NotSigmaAlgebra, LabelMismatch>;

std::string violation_code(const ConditionViolation& violation);       // e.g. "thm_A_condition_i"
std::string violation_to_string(const ConditionViolation& violation);  // human-readable

/// Uniqueness of achieving couples for every common sum. On failure the
/// first violation in scan order is returned: smallest sum first, the
/// Q side preferred, subsets in canonical order.
std::variant<CommonSumAssignment, ConditionViolation>
check_condition_i(const SumTable& ta, const SumTable& tb);

/// Both indexed families must be sigma-algebras: contain empty and full,
/// closed under complement and pairwise intersection. Exhaustive (finite).
std::optional<ConditionViolation> check_condition_ii(const CommonSumAssignment& assignment);

/// Intersection labels must agree across sides for every pair of sums.
std::optional<ConditionViolation> check_condition_iii(const CommonSumAssignment& assignment);

struct DisjointDecision {
    /// Convex verdicts carry the full assignment (the sigma-algebra
    /// structure of the constraint set); nonconvex ones the violation.
    std::variant<CommonSumAssignment, ConditionViolation> outcome;

    bool convex() const { return outcome.index() == 0; }
    const CommonSumAssignment& assignment() const { return std::get<0>(outcome); }
    const ConditionViolation& violation() const { return std::get<1>(outcome); }
};

/// Full decision for two disjoint-support weight vectors of equal total
/// mass: conditions are checked in order (i), (ii), (iii).
DisjointDecision decide_disjoint(const std::vector<Rational>& p_weights,
                                 const std::vector<Rational>& q_weights,
                                 std::size_t cap = kDefaultAtomCap);

} // namespace pushcert
