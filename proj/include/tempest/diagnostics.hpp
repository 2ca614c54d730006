#ifndef TEMPEST_DIAGNOSTICS_HPP
#define TEMPEST_DIAGNOSTICS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace tempest {

// Empirical Laplace transform / pgf on a grid, with per-point CLT standard
// errors. The convergence currency of every sampler-vs-transform check.
struct EmpiricalTransform {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> se;
    std::size_t m = 0;
};

/// Means and SEs of e^{-z X} over the samples, per grid point. Samples must
/// be nonnegative, grid positive, samples nonempty.
EmpiricalTransform empirical_lt(std::span<const double> samples,
                                std::span<const double> z_grid);

/// Means and SEs of s^X, s in [0,1] (s = 0 counts zeros). Integer samples
/// are passed as doubles; values below 2^53 are exact.
EmpiricalTransform empirical_pgf(std::span<const double> samples,
                                 std::span<const double> s_grid);
EmpiricalTransform empirical_pgf(std::span<const std::uint64_t> samples,
                                 std::span<const double> s_grid);

struct GapReport {
    std::vector<double> target;
    std::vector<double> gaps;      // emp - target
    std::vector<bool> in_band;     // |gap| <= 3 se
    double sup_gap = 0.0;
    double in_band_fraction = 0.0;
};

GapReport sup_gap(const EmpiricalTransform& emp,
                  const std::function<double(double)>& target);

struct KsResult {
    double statistic = 0.0;
    double critical_1pct = 0.0;  // 1.63 sqrt((n+m)/(n m))
    bool reject = false;
};

KsResult ks_two_sample(std::span<const double> x, std::span<const double> y);

} // namespace tempest

#endif
