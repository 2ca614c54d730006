#include "tempest/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tempest {

namespace {

constexpr std::uint64_t kSaturate = std::uint64_t{1} << 62;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

// Stirling series remainder of log k!; same table as Hormann's papers.
double fc(std::uint64_t k) {
    switch (k) {
        case 0: return 0.08106146679532726;
        case 1: return 0.04134069595540929;
        case 2: return 0.02767792568499834;
        case 3: return 0.02079067210376509;
        case 4: return 0.01664469118982119;
        case 5: return 0.01387612882307075;
        case 6: return 0.01189670994589177;
        case 7: return 0.01041126526197209;
        case 8: return 0.009255462182712733;
        case 9: return 0.008330563433362871;
        default: {
            const double r = 1.0 / static_cast<double>(k + 1);
            const double r2 = r * r;
            return (1.0 / 12 - (1.0 / 360 - (1.0 / 1260) * r2) * r2) * r;
        }
    }
}

// log(lambda^k e^{-lambda} / k!) rearranged so no two huge terms cancel;
// needed when lambda is large enough that k*log(lambda) - lgamma(k+1)
// loses the O(1) answer to rounding. Uses ln k! = (k+1/2)ln(k+1) - (k+1)
// + ln(2 pi)/2 + fc(k), which is exact at k = 0.
double poisson_log_pmf(double k, double lambda) {
    const double kp1 = k + 1.0;
    const double delta = (kp1 - lambda) / lambda;
    const double s = (kp1 - lambda) - k * std::log1p(delta);
    return s - 0.5 * std::log(2.0 * std::numbers::pi * kp1) - fc(static_cast<std::uint64_t>(k));
}

} // namespace

void RngStream::reseed(std::uint64_t seed, std::uint64_t stream_index) {
    std::uint64_t state = seed ^ (0x9E3779B97F4A7C15ull * (stream_index + 1));
    for (auto& w : s_) w = splitmix64(state);
    // All-zero state is invalid for xoshiro; splitmix64 makes it vanishingly
    // unlikely but guard anyway.
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::uniform() {
    // 53-bit mantissa shifted into (0,1): (n + 0.5) * 2^-53 with n in [0,2^53).
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::exponential() {
    return -std::log(uniform());
}

std::uint64_t RngStream::poisson(double lambda) {
    if (!(lambda >= 0.0)) throw std::domain_error("poisson: requires lambda >= 0");
    if (lambda == 0.0) return 0;
    if (lambda < 10.0) return poisson_small(lambda);
    if (lambda >= 4.0e18) return kSaturate;
    return poisson_ptrs(lambda);
}

std::uint64_t RngStream::poisson_small(double lambda) {
    // Inversion by sequential search.
    const double L = std::exp(-lambda);
    double p = 1.0;
    std::uint64_t k = 0;
    do {
        p *= uniform();
        ++k;
    } while (p > L);
    return k - 1;
}

std::uint64_t RngStream::poisson_ptrs(double lambda) {
    // W. Hormann, "The transformed rejection method for generating Poisson
    // random variables" (PTRS), valid for lambda >= 10.
    const double b = 0.931 + 2.53 * std::sqrt(lambda);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_lambda = std::log(lambda);
    const bool huge = lambda > 1e7;

    for (;;) {
        double v = uniform();
        double u = uniform() - 0.5;
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= v_r) {
            return kf >= static_cast<double>(kSaturate) ? kSaturate
                                                        : static_cast<std::uint64_t>(kf);
        }
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        double log_target;
        if (huge) {
            log_target = poisson_log_pmf(kf, lambda);
        } else {
            log_target = kf * log_lambda - lambda - std::lgamma(kf + 1.0);
        }
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <= log_target) {
            return kf >= static_cast<double>(kSaturate) ? kSaturate
                                                        : static_cast<std::uint64_t>(kf);
        }
    }
}

std::uint64_t RngStream::binomial(std::uint64_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binomial: requires p in [0,1]");
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;
    if (p > 0.5) return n - binomial(n, 1.0 - p);
    const double np = static_cast<double>(n) * p;
    if (np < 10.0) return binomial_waiting(n, p);
    return binomial_btrd(n, p);
}

std::uint64_t RngStream::binomial_waiting(std::uint64_t n, double p) {
    // Count geometric(p) gaps until the trial budget is spent. Expected cost
    // is np + 1 draws, so this stays cheap no matter how large n is.
    const double log_q = std::log1p(-p);
    double sum = 0.0;
    std::uint64_t k = 0;
    for (;;) {
        sum += std::floor(std::log(uniform()) / log_q) + 1.0;
        if (sum > static_cast<double>(n)) return k;
        ++k;
        if (k >= kSaturate) return kSaturate;
    }
}

std::uint64_t RngStream::binomial_btrd(std::uint64_t n_int, double p) {
    // W. Hormann, "The generation of binomial random variates" (BTRD),
    // for p <= 0.5 and np >= 10.
    const double n = static_cast<double>(n_int);
    const double m = std::floor((n + 1.0) * p);
    const double r = p / (1.0 - p);
    const double nr = (n + 1.0) * r;
    const double npq = n * p * (1.0 - p);
    const double sq = std::sqrt(npq);
    const double b = 1.15 + 2.53 * sq;
    const double a = -0.0873 + 0.0248 * b + 0.01 * p;
    const double c = n * p + 0.5;
    const double alpha = (2.83 + 5.1 / b) * sq;
    const double v_r = 0.92 - 4.2 / b;
    const double u_rv_r = 0.86 * v_r;

    for (;;) {
        double v = uniform();
        double u;
        if (v <= u_rv_r) {
            u = v / v_r - 0.43;
            const double us = 0.5 - std::abs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + c);
            return static_cast<std::uint64_t>(kf);
        }
        if (v >= v_r) {
            u = uniform() - 0.5;
        } else {
            u = v / v_r - 0.93;
            u = std::copysign(0.5, u) - u;
            v = v_r * uniform();
        }
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + c);
        if (kf < 0.0 || kf > n) continue;
        v *= alpha / (a / (us * us) + b);
        const double km = std::abs(kf - m);
        if (km > 15.0) {
            v = std::log(v);
            const double rho = (km / npq) * (((km / 3.0 + 0.625) * km + 1.0 / 6.0) / npq + 0.5);
            const double t = -km * km / (2.0 * npq);
            if (v < t - rho) return static_cast<std::uint64_t>(kf);
            if (v > t + rho) continue;
            const double nm = n - m + 1.0;
            const double nk = n - kf + 1.0;
            const double h = (m + 0.5) * std::log((m + 1.0) / (r * nm)) +
                             fc(static_cast<std::uint64_t>(m)) +
                             fc(static_cast<std::uint64_t>(n - m));
            const double threshold = h + (n + 1.0) * std::log(nm / nk) +
                                     (kf + 0.5) * std::log(nk * r / (kf + 1.0)) -
                                     fc(static_cast<std::uint64_t>(kf)) -
                                     fc(static_cast<std::uint64_t>(n - kf));
            if (v <= threshold) return static_cast<std::uint64_t>(kf);
        } else {
            // Small |k - m|: evaluate the pmf ratio directly.
            double f = 1.0;
            if (m < kf) {
                for (double i = m + 1.0; i <= kf; i += 1.0) f *= nr / i - r;
            } else if (m > kf) {
                for (double i = kf + 1.0; i <= m; i += 1.0) v *= nr / i - r;
            }
            if (v <= f) return static_cast<std::uint64_t>(kf);
        }
    }
}

} // namespace tempest
