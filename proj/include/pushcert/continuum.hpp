#pragma once

#include "pushcert/measure.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace pushcert {

inline constexpr std::uint64_t kDefaultSeed = 1729;

/// Deterministic sampler: mt19937_64 with 53-bit mantissa scaling, so a
/// fixed seed reproduces results bit for bit. Values lie strictly in (0,1).
class UniformSampler {
public:
    explicit UniformSampler(std::uint64_t seed) : engine_(seed) {}

    double next() {
        // Dyadic midpoints (k + 1/2) / 2^53: uniform and never 0 or 1.
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Seed for chunk `index` derived from `seed` by splitmix64, so chunked
    /// runs are reproducible for a fixed chunk count.
    static std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t index);

private:
    std::mt19937_64 engine_;
};

/// A one-dimensional distribution with closed-form CDF and quantiles:
/// either a finitely supported measure on the line or a parametric
/// absolutely continuous family.
class UnivariateDistribution {
public:
    static UnivariateDistribution discrete_line(const DiscreteMeasure& m);
    static UnivariateDistribution uniform(double a, double b);
    static UnivariateDistribution exponential(double rate);
    /// Triangular density on [a, b] with mode c.
    static UnivariateDistribution triangular(double a, double c, double b);

    double cdf(double x) const;
    /// Generalized inverse: inf{t : F(t) >= u} for 0 < u < 1.
    double quantile(double u) const;
    bool is_discrete() const { return kind_ == Kind::Discrete; }
    bool is_absolutely_continuous() const { return kind_ != Kind::Discrete; }
    /// Atom positions and probabilities (discrete case only).
    const std::vector<std::pair<double, double>>& atoms() const;
    /// Closed support interval.
    std::pair<double, double> support() const;
    std::string describe() const;

private:
    enum class Kind { Discrete, Uniform, Exponential, Triangular };
    Kind kind_;
    std::vector<std::pair<double, double>> atoms_; // sorted by position
    double a_ = 0, b_ = 0, c_ = 0, rate_ = 1;
};

/// The mod-one shift of [0,1]: u + a below the wrap point, u - 1 + a above.
/// Preserves the uniform law for every shift a in [0,1).
double xi_shift(double a, double u);

double generalized_inverse_cdf(const UnivariateDistribution& q, double u);

/// Quantile composition: the nondecreasing map sending P onto Q in one
/// dimension. P must be absolutely continuous.
double monotone_transport_1d(const UnivariateDistribution& p,
                             const UnivariateDistribution& q, double u);

struct MonteCarloReport {
    std::string name;
    std::size_t sample_size = 0;
    std::uint64_t seed = 0;
    std::size_t chunk_count = 1;
    std::string statistic_name;
    double statistic = 0;
    double threshold = 0;
    bool pass = false; // statistic <= threshold
    std::map<std::string, double> details;
};

/// Kolmogorov-Smirnov distance of pushed samples against the target CDF;
/// threshold 1.63 / sqrt(N) (about the 1% asymptotic level).
MonteCarloReport check_continuous_fit(const std::string& name,
                                      const std::vector<double>& samples,
                                      const UnivariateDistribution& target,
                                      std::uint64_t seed, std::size_t chunk_count);

/// Worst per-atom frequency deviation against three-sigma binomial bounds.
MonteCarloReport check_discrete_fit(const std::string& name,
                                    const std::vector<double>& samples,
                                    const UnivariateDistribution& target,
                                    std::uint64_t seed, std::size_t chunk_count);

std::vector<double> draw_samples(const UnivariateDistribution& dist, std::size_t n,
                                 std::uint64_t seed, std::size_t chunk_count = 1);

/// Pushes uniform samples through the shift and tests uniformity.
MonteCarloReport xi_uniformity_demo(double a, std::size_t n,
                                    std::uint64_t seed = kDefaultSeed,
                                    std::size_t chunk_count = 1);

/// Pushes uniform samples through the generalized inverse CDF of Q and
/// tests the fit.
MonteCarloReport inverse_cdf_demo(const UnivariateDistribution& q, std::size_t n,
                                  std::uint64_t seed = kDefaultSeed,
                                  std::size_t chunk_count = 1);

/// For each shift a, the composed map F_Q^- o xi_a o F_P pushes P onto Q;
/// distinct shifts give maps differing on a positive sample fraction.
struct FamilyDemoReport {
    std::vector<MonteCarloReport> per_shift;
    // Fraction of samples where the maps for two shifts differ, keyed by
    // "a=x vs a=y"; positive for distinct shifts.
    std::map<std::string, double> distinct_fractions;
};

FamilyDemoReport uncountable_family_demo(const UnivariateDistribution& p,
                                         const UnivariateDistribution& q,
                                         const std::vector<double>& shifts, std::size_t n,
                                         std::uint64_t seed = kDefaultSeed,
                                         std::size_t chunk_count = 1);

struct MonotoneDemoReport {
    MonteCarloReport fit;
    bool grid_nondecreasing = false;
    bool grid_strictly_increasing = false;
    std::size_t grid_size = 0;
};

MonotoneDemoReport monotone_transport_demo(const UnivariateDistribution& p,
                                           const UnivariateDistribution& q, std::size_t n,
                                           std::uint64_t seed = kDefaultSeed,
                                           std::size_t grid_size = 1000,
                                           std::size_t chunk_count = 1);

/// The two-valued crossing witness for equalizing maps between
/// absolutely continuous measures with disjoint supports: f and g both
/// push P and Q onto the fair two-point law while their midpoint sends
/// every Q sample to the midpoint value exactly.
struct AcWitnessReport {
    MonteCarloReport f_push_p, f_push_q, g_push_p, g_push_q, mid_push_p;
    bool mid_push_q_degenerate = false; // every sampled value equals (z+z')/2
    double mid_value = 0;
};

AcWitnessReport ac_equalizer_witness_demo(const UnivariateDistribution& p,
                                          const UnivariateDistribution& q, std::size_t n,
                                          std::uint64_t seed = kDefaultSeed,
                                          std::size_t chunk_count = 1);

} // namespace pushcert
