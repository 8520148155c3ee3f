#include "pushcert/continuum.hpp"

#include "pushcert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pushcert {

std::uint64_t UniformSampler::chunk_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 mix of (seed, index)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

UnivariateDistribution UnivariateDistribution::discrete_line(const DiscreteMeasure& m) {
    if (m.dimension() != 1) {
        fail(ErrorKind::DimensionMismatch, "discrete_line requires a one-dimensional measure");
    }
    if (m.mass() != 1) {
        fail(ErrorKind::Validation, "discrete_line requires a probability measure");
    }
    UnivariateDistribution d;
    d.kind_ = Kind::Discrete;
    for (const auto& atom : m.atoms()) {
        d.atoms_.emplace_back(rational_to_double(atom.point.coords[0]),
                              rational_to_double(atom.weight));
    }
    return d;
}

UnivariateDistribution UnivariateDistribution::uniform(double a, double b) {
    if (!(a < b)) fail(ErrorKind::Validation, "uniform(a,b) requires a < b");
    UnivariateDistribution d;
    d.kind_ = Kind::Uniform;
    d.a_ = a;
    d.b_ = b;
    return d;
}

UnivariateDistribution UnivariateDistribution::exponential(double rate) {
    if (!(rate > 0)) fail(ErrorKind::Validation, "exponential rate must be positive");
    UnivariateDistribution d;
    d.kind_ = Kind::Exponential;
    d.rate_ = rate;
    return d;
}

UnivariateDistribution UnivariateDistribution::triangular(double a, double c, double b) {
    if (!(a < b) || !(a <= c) || !(c <= b)) {
        fail(ErrorKind::Validation, "triangular(a,c,b) requires a <= c <= b and a < b");
    }
    UnivariateDistribution d;
    d.kind_ = Kind::Triangular;
    d.a_ = a;
    d.b_ = b;
    d.c_ = c;
    return d;
}

double UnivariateDistribution::cdf(double x) const {
    switch (kind_) {
        case Kind::Discrete: {
            double total = 0;
            for (const auto& [pos, w] : atoms_) {
                if (pos <= x) total += w;
            }
            return total;
        }
        case Kind::Uniform:
            if (x <= a_) return 0;
            if (x >= b_) return 1;
            return (x - a_) / (b_ - a_);
        case Kind::Exponential:
            return x <= 0 ? 0.0 : 1.0 - std::exp(-rate_ * x);
        case Kind::Triangular: {
            if (x <= a_) return 0;
            if (x >= b_) return 1;
            if (x < c_) return (x - a_) * (x - a_) / ((b_ - a_) * (c_ - a_));
            return 1.0 - (b_ - x) * (b_ - x) / ((b_ - a_) * (b_ - c_));
        }
    }
    return 0;
}

double UnivariateDistribution::quantile(double u) const {
    if (!(u > 0) || !(u < 1)) {
        fail(ErrorKind::OutOfDomain, "quantile argument must lie strictly in (0,1)");
    }
    switch (kind_) {
        case Kind::Discrete: {
            double total = 0;
            for (const auto& [pos, w] : atoms_) {
                total += w;
                if (total >= u) return pos;
            }
            return atoms_.back().first; // guards rounding in the weight sum
        }
        case Kind::Uniform:
            return a_ + u * (b_ - a_);
        case Kind::Exponential:
            return -std::log1p(-u) / rate_;
        case Kind::Triangular: {
            const double pivot = (c_ - a_) / (b_ - a_);
            if (u < pivot) return a_ + std::sqrt(u * (b_ - a_) * (c_ - a_));
            return b_ - std::sqrt((1.0 - u) * (b_ - a_) * (b_ - c_));
        }
    }
    return 0;
}

const std::vector<std::pair<double, double>>& UnivariateDistribution::atoms() const {
    if (kind_ != Kind::Discrete) {
        fail(ErrorKind::Validation, "atoms() is only defined for discrete distributions");
    }
    return atoms_;
}

std::pair<double, double> UnivariateDistribution::support() const {
    switch (kind_) {
        case Kind::Discrete: return {atoms_.front().first, atoms_.back().first};
        case Kind::Uniform: return {a_, b_};
        case Kind::Exponential: return {0.0, std::numeric_limits<double>::infinity()};
        case Kind::Triangular: return {a_, b_};
    }
    return {0, 0};
}

std::string UnivariateDistribution::describe() const {
    std::ostringstream out;
    switch (kind_) {
        case Kind::Discrete:
            out << "discrete(" << atoms_.size() << " atoms)";
            break;
        case Kind::Uniform: out << "uniform(" << a_ << "," << b_ << ")"; break;
        case Kind::Exponential: out << "exponential(" << rate_ << ")"; break;
        case Kind::Triangular:
            out << "triangular(" << a_ << "," << c_ << "," << b_ << ")";
            break;
    }
    return out.str();
}

double xi_shift(double a, double u) {
    if (!(a >= 0) || !(a < 1)) {
        fail(ErrorKind::OutOfDomain, "shift a must lie in [0,1)");
    }
    if (!(u >= 0) || !(u <= 1)) {
        fail(ErrorKind::OutOfDomain, "argument u must lie in [0,1]");
    }
    return u < 1.0 - a ? u + a : u - 1.0 + a;
}

double generalized_inverse_cdf(const UnivariateDistribution& q, double u) {
    return q.quantile(u);
}

double monotone_transport_1d(const UnivariateDistribution& p,
                             const UnivariateDistribution& q, double u) {
    if (!p.is_absolutely_continuous()) {
        fail(ErrorKind::Validation, "the source measure must be absolutely continuous");
    }
    return q.quantile(p.cdf(u));
}

std::vector<double> draw_samples(const UnivariateDistribution& dist, std::size_t n,
                                 std::uint64_t seed, std::size_t chunk_count) {
    if (chunk_count == 0) fail(ErrorKind::Validation, "chunk count must be positive");
    std::vector<double> out;
    out.reserve(n);
    const std::size_t per_chunk = (n + chunk_count - 1) / chunk_count;
    for (std::size_t chunk = 0; chunk < chunk_count && out.size() < n; ++chunk) {
        UniformSampler sampler(UniformSampler::chunk_seed(seed, chunk));
        for (std::size_t i = 0; i < per_chunk && out.size() < n; ++i) {
            out.push_back(dist.quantile(sampler.next()));
        }
    }
    return out;
}

MonteCarloReport check_continuous_fit(const std::string& name,
                                      const std::vector<double>& samples,
                                      const UnivariateDistribution& target,
                                      std::uint64_t seed, std::size_t chunk_count) {
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double ks = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = target.cdf(sorted[i]);
        ks = std::max(ks, (static_cast<double>(i) + 1.0) / n - f);
        ks = std::max(ks, f - static_cast<double>(i) / n);
    }
    MonteCarloReport report;
    report.name = name;
    report.sample_size = sorted.size();
    report.seed = seed;
    report.chunk_count = chunk_count;
    report.statistic_name = "ks_distance";
    report.statistic = ks;
    report.threshold = 1.63 / std::sqrt(n);
    report.pass = report.statistic <= report.threshold;
    return report;
}

MonteCarloReport check_discrete_fit(const std::string& name,
                                    const std::vector<double>& samples,
                                    const UnivariateDistribution& target,
                                    std::uint64_t seed, std::size_t chunk_count) {
    const auto& atoms = target.atoms();
    const double n = static_cast<double>(samples.size());
    MonteCarloReport report;
    report.name = name;
    report.sample_size = samples.size();
    report.seed = seed;
    report.chunk_count = chunk_count;
    report.statistic_name = "max_atom_frequency_deviation";

    double worst_ratio = -1;
    double matched = 0;
    for (const auto& [pos, prob] : atoms) {
        double count = 0;
        for (double s : samples) {
            if (s == pos) count += 1;
        }
        matched += count;
        const double freq = count / n;
        const double deviation = std::abs(freq - prob);
        const double sigma3 = 3.0 * std::sqrt(prob * (1.0 - prob) / n);
        const double ratio = sigma3 > 0 ? deviation / sigma3 : (deviation > 0 ? 1e30 : 0);
        std::ostringstream key;
        key << "freq@" << pos;
        report.details[key.str()] = freq;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            report.statistic = deviation;
            report.threshold = sigma3;
        }
    }
    report.details["off_support_fraction"] = (n - matched) / n;
    report.pass = report.statistic <= report.threshold && matched == n;
    return report;
}

MonteCarloReport xi_uniformity_demo(double a, std::size_t n, std::uint64_t seed,
                                    std::size_t chunk_count) {
    const UnivariateDistribution u01 = UnivariateDistribution::uniform(0, 1);
    std::vector<double> pushed = draw_samples(u01, n, seed, chunk_count);
    for (double& x : pushed) x = xi_shift(a, x);
    std::ostringstream name;
    name << "xi_shift(a=" << a << ") preserves the uniform law";
    MonteCarloReport report = check_continuous_fit(name.str(), pushed, u01, seed, chunk_count);
    report.details["a"] = a;
    return report;
}

MonteCarloReport inverse_cdf_demo(const UnivariateDistribution& q, std::size_t n,
                                  std::uint64_t seed, std::size_t chunk_count) {
    const UnivariateDistribution u01 = UnivariateDistribution::uniform(0, 1);
    std::vector<double> pushed = draw_samples(u01, n, seed, chunk_count);
    for (double& x : pushed) x = generalized_inverse_cdf(q, x);
    const std::string name = "inverse CDF pushes uniform onto " + q.describe();
    return q.is_discrete() ? check_discrete_fit(name, pushed, q, seed, chunk_count)
                           : check_continuous_fit(name, pushed, q, seed, chunk_count);
}

FamilyDemoReport uncountable_family_demo(const UnivariateDistribution& p,
                                         const UnivariateDistribution& q,
                                         const std::vector<double>& shifts, std::size_t n,
                                         std::uint64_t seed, std::size_t chunk_count) {
    if (!p.is_absolutely_continuous()) {
        fail(ErrorKind::Validation, "the source measure must be absolutely continuous");
    }
    const std::vector<double> source = draw_samples(p, n, seed, chunk_count);
    FamilyDemoReport report;
    std::vector<std::vector<double>> pushed_per_shift;
    for (double a : shifts) {
        std::vector<double> pushed;
        pushed.reserve(n);
        for (double x : source) {
            pushed.push_back(generalized_inverse_cdf(q, xi_shift(a, p.cdf(x))));
        }
        std::ostringstream name;
        name << "family member a=" << a << " pushes " << p.describe() << " onto "
             << q.describe();
        MonteCarloReport fit = q.is_discrete()
                                   ? check_discrete_fit(name.str(), pushed, q, seed, chunk_count)
                                   : check_continuous_fit(name.str(), pushed, q, seed,
                                                          chunk_count);
        fit.details["a"] = a;
        report.per_shift.push_back(std::move(fit));
        pushed_per_shift.push_back(std::move(pushed));
    }
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        for (std::size_t j = i + 1; j < shifts.size(); ++j) {
            double differing = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (pushed_per_shift[i][k] != pushed_per_shift[j][k]) differing += 1;
            }
            std::ostringstream key;
            key << "a=" << shifts[i] << " vs a=" << shifts[j];
            report.distinct_fractions[key.str()] = differing / static_cast<double>(n);
        }
    }
    return report;
}

MonotoneDemoReport monotone_transport_demo(const UnivariateDistribution& p,
                                           const UnivariateDistribution& q, std::size_t n,
                                           std::uint64_t seed, std::size_t grid_size,
                                           std::size_t chunk_count) {
    std::vector<double> pushed = draw_samples(p, n, seed, chunk_count);
    for (double& x : pushed) x = monotone_transport_1d(p, q, x);
    const std::string name =
        "monotone rearrangement pushes " + p.describe() + " onto " + q.describe();
    MonotoneDemoReport report{
        q.is_discrete() ? check_discrete_fit(name, pushed, q, seed, chunk_count)
                        : check_continuous_fit(name, pushed, q, seed, chunk_count),
        true, true, grid_size};

    // Probe monotonicity on an interior grid of the source support.
    const double lo = p.quantile(1e-9), hi = p.quantile(1.0 - 1e-9);
    double prev = monotone_transport_1d(p, q, lo);
    for (std::size_t k = 1; k < grid_size; ++k) {
        const double x = lo + (hi - lo) * static_cast<double>(k) /
                                  static_cast<double>(grid_size - 1);
        const double y = monotone_transport_1d(p, q, x);
        if (y < prev) report.grid_nondecreasing = false;
        if (y <= prev) report.grid_strictly_increasing = false;
        prev = y;
    }
    return report;
}

AcWitnessReport ac_equalizer_witness_demo(const UnivariateDistribution& p,
                                          const UnivariateDistribution& q, std::size_t n,
                                          std::uint64_t seed, std::size_t chunk_count) {
    if (!p.is_absolutely_continuous() || !q.is_absolutely_continuous()) {
        fail(ErrorKind::Validation, "both measures must be absolutely continuous");
    }
    const auto [p_lo, p_hi] = p.support();
    const auto [q_lo, q_hi] = q.support();
    if (std::max(p_lo, q_lo) < std::min(p_hi, q_hi)) {
        fail(ErrorKind::SupportsOverlap, "the demo requires disjoint support intervals");
    }
    const double z = 0.0, z_prime = 1.0;
    const auto psi1 = [&](double u) { return u < 0.5 ? z : z_prime; };
    const auto psi2 = [&](double u) { return u < 0.5 ? z_prime : z; };

    const std::vector<double> p_samples = draw_samples(p, n, seed, chunk_count);
    const std::vector<double> q_samples =
        draw_samples(q, n, UniformSampler::chunk_seed(seed, 0x5eed), chunk_count);

    // f uses the same crossing on both supports; g flips it on supp(Q).
    std::vector<double> f_p, f_q, g_p, g_q, mid_p, mid_q;
    for (double x : p_samples) {
        const double fv = psi1(p.cdf(x));
        f_p.push_back(fv);
        g_p.push_back(fv);
        mid_p.push_back(fv);
    }
    for (double x : q_samples) {
        const double fv = psi1(q.cdf(x));
        const double gv = psi2(q.cdf(x));
        f_q.push_back(fv);
        g_q.push_back(gv);
        mid_q.push_back(0.5 * (fv + gv));
    }

    DiscreteMeasure fair(1, {Atom{Point{"z", Coords{Rational(0)}}, Rational(1, 2)},
                             Atom{Point{"z'", Coords{Rational(1)}}, Rational(1, 2)}});
    const UnivariateDistribution two_point = UnivariateDistribution::discrete_line(fair);

    AcWitnessReport report{
        check_discrete_fit("f pushes P onto the fair two-point law", f_p, two_point, seed,
                           chunk_count),
        check_discrete_fit("f pushes Q onto the fair two-point law", f_q, two_point, seed,
                           chunk_count),
        check_discrete_fit("g pushes P onto the fair two-point law", g_p, two_point, seed,
                           chunk_count),
        check_discrete_fit("g pushes Q onto the fair two-point law", g_q, two_point, seed,
                           chunk_count),
        check_discrete_fit("midpoint still pushes P onto the fair two-point law", mid_p,
                           two_point, seed, chunk_count),
        true,
        0.5 * (z + z_prime)};
    for (double v : mid_q) {
        if (v != report.mid_value) report.mid_push_q_degenerate = false;
    }
    return report;
}

} // namespace pushcert
