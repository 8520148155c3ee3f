#pragma once

#include "pushcert/finite_map.hpp"
#include "pushcert/measure.hpp"
#include "pushcert/measure_ops.hpp"
#include "pushcert/subset_algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pushcert {

/// Two maps that each equalize P and Q while their midpoint does not.
/// All six push-forwards are recomputed and checked at construction, so a
/// WitnessPair in hand is a machine-verified nonconvexity certificate.
struct WitnessPair {
    FiniteMap f;
    FiniteMap g;
    Rational t; // always 1/2
    DiscreteMeasure f_push_p, f_push_q;
    DiscreteMeasure g_push_p, g_push_q;
    DiscreteMeasure mid_push_p, mid_push_q;

    static WitnessPair create(FiniteMap f, FiniteMap g, const DiscreteMeasure& p,
                              const DiscreteMeasure& q);
};

/// Re-derives the six push-forwards from scratch and checks the defining
/// inequalities; used by tests and the self check.
bool reverify_witness(const WitnessPair& w, const DiscreteMeasure& p,
                      const DiscreteMeasure& q);

/// One block of support points every equalizing map must send to a single
/// common value: a minimal member of the sigma-algebra on the P side paired
/// with the equally-labeled minimal member on the Q side.
struct AtomBlock {
    Rational block_mass;
    SubsetMask p_subset;
    SubsetMask q_subset;
    std::vector<Point> p_points;
    std::vector<Point> q_points;
};

/// Minimal nonempty members of the assignment's sigma-algebras, paired by
/// label and sorted by block mass. Requires a convex assignment.
std::vector<AtomBlock> describe_structure(const CommonSumAssignment& assignment,
                                          const DiscreteMeasure& p_residual,
                                          const DiscreteMeasure& q_residual);

enum class EqualizerVerdict {
    AllFunctions,     // P = Q: every map equalizes
    ConvexTrivial,    // only maps constant on the residual union support
    ConvexStructured, // convex, constrained by a nontrivial block structure
    Nonconvex,
};

enum class EqualizerPath {
    IdenticalMeasures, // P = Q after comparing directly
    CoprimeUniform,    // uniform residuals with coprime sizes
    SigmaAlgebra,      // the full subset-sum decision
};

std::string verdict_name(EqualizerVerdict verdict);
std::string path_name(EqualizerPath path);

struct EqualizerReport {
    EqualizerVerdict verdict;
    EqualizerPath path;
    // Reduction data: residuals with disjoint supports and common mass.
    DiscreteMeasure p_residual;
    DiscreteMeasure q_residual;
    Rational residual_mass;
    // Convex verdicts:
    std::optional<CommonSumAssignment> assignment;
    std::vector<AtomBlock> blocks;
    // Nonconvex verdicts:
    std::optional<ConditionViolation> violation;
    std::optional<WitnessPair> witness;
};

/// End-to-end decision for the set of maps equalizing two probability
/// measures: reduce the pair, shortcut the trivial and uniform-coprime
/// cases, otherwise run the subset-sum decision; nonconvex verdicts carry
/// a verified witness against the original measures.
EqualizerReport analyze_equalizers(const DiscreteMeasure& p, const DiscreteMeasure& q,
                                   std::size_t cap = kDefaultAtomCap);

/// Builds the two-valued witness maps (values 0 and 1, codomain dimension
/// one) dictated by the violation, reduced internally to the disjoint
/// residuals and extended over shared atoms by sending them to 0 under
/// both maps. The violation must come from deciding the residuals of
/// (p, q). The returned pair is verified against p and q themselves.
WitnessPair build_witness(const DiscreteMeasure& p, const DiscreteMeasure& q,
                          const ConditionViolation& violation);

} // namespace pushcert
