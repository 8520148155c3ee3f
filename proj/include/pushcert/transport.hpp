#pragma once

#include "pushcert/finite_map.hpp"
#include "pushcert/measure.hpp"
#include "pushcert/measure_ops.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pushcert {

inline constexpr std::size_t kDefaultMapLimit = 10000;

/// Exact enumeration of the maps sending supp(P) into supp(Q) whose fiber
/// weights reproduce Q. Deterministic lexicographic order; stops at the
/// limit with the truncation flag set, carrying the maps found so far.
struct TransportEnumeration {
    std::vector<FiniteMap> maps;
    bool truncated = false;
};

TransportEnumeration enumerate_transport_maps(const DiscreteMeasure& p,
                                              const DiscreteMeasure& q,
                                              std::size_t limit = kDefaultMapLimit);

/// Exact map count, or a lower bound when enumeration was truncated.
struct TransportCount {
    BigInt value;
    bool is_lower_bound = false;
};

/// Two transport maps whose midpoint fails to push P onto Q; the failing
/// push-forward is recomputed and checked at construction.
struct TransportEvidence {
    FiniteMap f;
    FiniteMap g;
    Rational t; // always 1/2
    DiscreteMeasure f_push_p;
    DiscreteMeasure g_push_p;
    DiscreteMeasure mid_push_p;

    static TransportEvidence create(FiniteMap f, FiniteMap g, const DiscreteMeasure& p,
                                    const DiscreteMeasure& q);
};

bool reverify_evidence(const TransportEvidence& e, const DiscreteMeasure& p,
                       const DiscreteMeasure& q);

enum class TransportVerdict { Empty, Singleton, Nonconvex };

std::string verdict_name(TransportVerdict verdict);

struct TransportReport {
    TransportVerdict verdict;
    TransportCount count;
    std::optional<FiniteMap> representative; // Singleton
    std::optional<TransportEvidence> evidence; // Nonconvex
    bool used_uniform_shortcut = false;
};

/// Trichotomy for the set of maps pushing P onto Q: empty, a single map
/// up to P-a.e. equality, or nonconvex with verified midpoint evidence.
/// Uniform supports take closed-form shortcuts for emptiness and counting.
TransportReport classify_transport(const DiscreteMeasure& p, const DiscreteMeasure& q,
                                   std::size_t limit = kDefaultMapLimit);

/// Exact test of the squared-norm matching condition:
/// integral of |f|^2 against P equals the second moment of Q.
bool m2_membership(const FiniteMap& f, const DiscreteMeasure& p, const DiscreteMeasure& q);

/// A joint weight matrix over supp(P) x supp(Q).
struct Coupling {
    std::vector<Point> row_points;
    std::vector<Point> col_points;
    std::vector<std::vector<Rational>> weights; // rows x cols
};

Coupling independent_coupling(const DiscreteMeasure& p, const DiscreteMeasure& q);
bool is_coupling(const Coupling& pi, const DiscreteMeasure& p, const DiscreteMeasure& q);
Coupling coupling_mix(const Coupling& a, const Coupling& b, const Rational& t);
/// The coupling concentrated on the graph of a transport map.
Coupling deterministic_coupling(const FiniteMap& f, const DiscreteMeasure& p,
                                const DiscreteMeasure& q);

} // namespace pushcert
