#pragma once

#include "pushcert/equalizer.hpp"
#include "pushcert/measure.hpp"
#include "pushcert/transport.hpp"

#include <optional>
#include <string>

namespace pushcert {

inline constexpr std::size_t kDefaultEqualizerOracleBudget = 729; // 3^6
inline constexpr std::size_t kDefaultTransportOracleBudget = 1000000;

/// Brute-force search result. A missing counterexample only means the
/// family below was exhausted, never that the constraint set is convex.
struct EqualizerOracleVerdict {
    std::optional<WitnessPair> counterexample;
    std::string family;
    std::size_t functions_enumerated = 0;
    std::size_t members_found = 0; // equalizers in the family
    std::size_t pairs_checked = 0;

    bool found() const { return counterexample.has_value(); }
};

/// Enumerates every map from supp(P) u supp(Q) into {4^0, ..., 4^(k-1)}
/// (powers of four keep pairwise midpoints from colliding), keeps the
/// equalizers, and tests every unordered pair's midpoint for membership.
/// Independent of the subset-sum decision procedure.
EqualizerOracleVerdict oracle_equalizer(const DiscreteMeasure& p, const DiscreteMeasure& q,
                                        int value_count = 3,
                                        std::size_t budget = kDefaultEqualizerOracleBudget);

struct TransportOracleVerdict {
    std::optional<TransportEvidence> counterexample;
    std::string family;
    std::size_t assignments_scanned = 0;
    std::size_t members_found = 0; // transport maps among all assignments
    std::size_t pairs_checked = 0;

    bool found() const { return counterexample.has_value(); }
};

/// Scans all |supp(Q)|^|supp(P)| assignments (no pruning), keeps the maps
/// pushing P onto Q, and tests every unordered pair's midpoint. Independent
/// of the backtracking enumerator.
TransportOracleVerdict oracle_transport(const DiscreteMeasure& p, const DiscreteMeasure& q,
                                        std::size_t budget = kDefaultTransportOracleBudget);

} // namespace pushcert
