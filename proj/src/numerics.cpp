#include "tempest/numerics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace tempest {

double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: requires x > 0");
    return std::tgamma(x);
}

double lgamma_pos(double x) {
    if (!(x > 0.0)) throw std::domain_error("lgamma_pos: requires x > 0");
#ifdef __GLIBC__
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double invert_monotone(const std::function<double(double)>& V, double t,
                       std::pair<double, double> bracket_hint, double rel_tol) {
    if (!(t >= 0.0)) throw std::domain_error("invert_monotone: requires t >= 0");
    if (!(rel_tol > 0.0)) throw std::domain_error("invert_monotone: requires rel_tol > 0");

    double lo = std::max(bracket_hint.first, 0.0);
    double hi = std::max(bracket_hint.second, lo > 0.0 ? 2.0 * lo : 1.0);

    // Expand until V(hi) > t.
    constexpr double kExpandLimit = 1e300;
    while (!(V(hi) > t)) {
        if (hi > kExpandLimit)
            throw inversion_error("invert_monotone: V does not exceed t=" + std::to_string(t) +
                                  " within expansion limit");
        lo = hi;
        hi *= 2.0;
    }
    // Move lo down if the hint started above the root.
    while (lo > 0.0 && V(lo) > t) {
        hi = lo;
        lo = (lo > 1e-300) ? lo * 0.5 : 0.0;
    }

    for (int i = 0; i < 2000; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (V(mid) > t)
            hi = mid;
        else
            lo = mid;
        if ((hi - lo) <= rel_tol * std::max(lo, std::numeric_limits<double>::min()))
            break;
    }
    return 0.5 * (lo + hi);
}

} // namespace tempest
