#pragma once

#include "pushcert/equalizer.hpp"
#include "pushcert/finite_map.hpp"
#include "pushcert/measure.hpp"
#include "pushcert/transport.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pushcert {

/// Total variation distance: half the sum of absolute weight differences
/// over the union of supports, exactly.
Rational tv_distance(const DiscreteMeasure& a, const DiscreteMeasure& b);

/// One-dimensional Wasserstein-1 distance: the exact integral of the
/// absolute CDF difference over the sorted breakpoints.
Rational w1_line(const DiscreteMeasure& a, const DiscreteMeasure& b);

enum class LossName { TV, W1Line };
enum class LossKind {
    Equalizer, // D(f#P, f#Q): vanishes exactly on the equalizing maps
    Transport, // D(f#P, Q):   vanishes exactly on the transport maps
};

std::string loss_label(LossName name, LossKind kind);

struct LossCandidate {
    LossName name;
    LossKind kind;

    Rational evaluate(const FiniteMap& f, const DiscreteMeasure& p,
                      const DiscreteMeasure& q) const;
};

/// Exact values demonstrating that the loss cannot be convex: it vanishes
/// at f and g but not at their midpoint.
struct NonconvexityCertificate {
    std::string loss;
    FiniteMap f;
    FiniteMap g;
    Rational loss_f;
    Rational loss_g;
    Rational loss_mid;
};

/// Fails loudly (NotInConstraintSet) unless L(f) = L(g) = 0.
NonconvexityCertificate certify_nonconvexity(const LossCandidate& loss, const FiniteMap& f,
                                             const FiniteMap& g, const DiscreteMeasure& p,
                                             const DiscreteMeasure& q);
NonconvexityCertificate certify_nonconvexity(const LossCandidate& loss, const WitnessPair& w,
                                             const DiscreteMeasure& p,
                                             const DiscreteMeasure& q);
NonconvexityCertificate certify_nonconvexity(const LossCandidate& loss,
                                             const TransportEvidence& e,
                                             const DiscreteMeasure& p,
                                             const DiscreteMeasure& q);

/// Exact loss values along the segment from f to g at t = k/grid_size.
std::vector<std::pair<Rational, Rational>> segment_scan(const LossCandidate& loss,
                                                        const FiniteMap& f,
                                                        const FiniteMap& g,
                                                        const DiscreteMeasure& p,
                                                        const DiscreteMeasure& q,
                                                        int grid_size);

/// Covariance of (f(X,S), S) under the two-group mixture where X ~ P on
/// S = 0 (probability 1 - pi1) and X ~ Q on S = 1 (probability pi1).
/// Affine in f, which is why its square is a usable convex penalty.
Rational covariance_penalty(const FiniteMap& f, const DiscreteMeasure& p,
                            const DiscreteMeasure& q,
                            const Rational& pi1 = Rational(1, 2));

/// Self-contained fixture: two linear maps on the laws of (A,B) and (A,A)
/// for independent fair coins A, B equalize the pair while their midpoint
/// does not. Certified with the total variation equalizer loss.
struct LinearEqualizerDemo {
    DiscreteMeasure p;
    DiscreteMeasure q;
    WitnessPair witness;
    NonconvexityCertificate tv_certificate;
};

LinearEqualizerDemo linear_equalizer_demo();

} // namespace pushcert
