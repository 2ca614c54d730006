#include "tempest/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tempest/kernels.hpp"

namespace tempest {

namespace {

void require_increasing(std::span<const double> grid, const char* who) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::domain_error(std::string(who) + ": grid must be strictly increasing");
}

// mean/SE of the already-transformed values in scratch.
void reduce(const std::vector<double>& scratch, double& mean, double& se) {
    const std::size_t m = scratch.size();
    double sum = 0.0, sumsq = 0.0;
    kernels::active().sum_sq(scratch.data(), m, &sum, &sumsq);
    mean = sum / static_cast<double>(m);
    if (m < 2) {
        se = 0.0;
        return;
    }
    const double var = std::max(0.0, (sumsq - sum * mean) / static_cast<double>(m - 1));
    se = std::sqrt(var / static_cast<double>(m));
}

} // namespace

EmpiricalTransform empirical_lt(std::span<const double> samples,
                                std::span<const double> z_grid) {
    if (samples.empty()) throw std::domain_error("empirical_lt: no samples");
    require_increasing(z_grid, "empirical_lt");
    EmpiricalTransform out;
    out.m = samples.size();
    out.grid.assign(z_grid.begin(), z_grid.end());
    std::vector<double> scratch(samples.size());
    for (double z : z_grid) {
        if (!(z > 0.0)) throw std::domain_error("empirical_lt: grid must be positive");
        kernels::active().exp_ax(-z, samples.data(), scratch.data(), samples.size());
        double mean, se;
        reduce(scratch, mean, se);
        out.values.push_back(mean);
        out.se.push_back(se);
    }
    return out;
}

EmpiricalTransform empirical_pgf(std::span<const double> samples,
                                 std::span<const double> s_grid) {
    if (samples.empty()) throw std::domain_error("empirical_pgf: no samples");
    require_increasing(s_grid, "empirical_pgf");
    EmpiricalTransform out;
    out.m = samples.size();
    out.grid.assign(s_grid.begin(), s_grid.end());
    std::vector<double> scratch(samples.size());
    for (double s : s_grid) {
        if (!(s >= 0.0 && s <= 1.0))
            throw std::domain_error("empirical_pgf: grid must lie in [0,1]");
        if (s == 0.0) {
            for (std::size_t i = 0; i < samples.size(); ++i)
                scratch[i] = (samples[i] == 0.0) ? 1.0 : 0.0;
        } else if (s == 1.0) {
            std::fill(scratch.begin(), scratch.end(), 1.0);
        } else {
            // s^x = exp(x log s)
            kernels::active().exp_ax(std::log(s), samples.data(), scratch.data(),
                                     samples.size());
        }
        double mean, se;
        reduce(scratch, mean, se);
        out.values.push_back(mean);
        out.se.push_back(se);
    }
    return out;
}

EmpiricalTransform empirical_pgf(std::span<const std::uint64_t> samples,
                                 std::span<const double> s_grid) {
    std::vector<double> as_double(samples.begin(), samples.end());
    return empirical_pgf(std::span<const double>(as_double), s_grid);
}

GapReport sup_gap(const EmpiricalTransform& emp,
                  const std::function<double(double)>& target) {
    GapReport rep;
    std::size_t in = 0;
    for (std::size_t i = 0; i < emp.grid.size(); ++i) {
        const double t = target(emp.grid[i]);
        const double gap = emp.values[i] - t;
        rep.target.push_back(t);
        rep.gaps.push_back(gap);
        const bool ok = std::abs(gap) <= 3.0 * emp.se[i];
        rep.in_band.push_back(ok);
        in += ok;
        rep.sup_gap = std::max(rep.sup_gap, std::abs(gap));
    }
    rep.in_band_fraction =
        emp.grid.empty() ? 0.0 : static_cast<double>(in) / static_cast<double>(emp.grid.size());
    return rep;
}

KsResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw std::domain_error("ks_two_sample: empty sample");
    std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    const double nx = static_cast<double>(xs.size());
    const double ny = static_cast<double>(ys.size());

    KsResult res;
    std::size_t i = 0, j = 0;
    while (i < xs.size() && j < ys.size()) {
        const double v = std::min(xs[i], ys[j]);
        while (i < xs.size() && xs[i] <= v) ++i;
        while (j < ys.size() && ys[j] <= v) ++j;
        res.statistic = std::max(
            res.statistic, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    res.critical_1pct = 1.63 * std::sqrt((nx + ny) / (nx * ny));
    res.reject = res.statistic > res.critical_1pct;
    return res;
}

} // namespace tempest
