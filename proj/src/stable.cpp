#include "tempest/stable.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tempest/numerics.hpp"

namespace tempest {

StableParams::StableParams(double alpha_, double eta_) : alpha(alpha_), eta(eta_) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("StableParams: requires alpha in (0,1)");
    if (!(eta >= 0.0)) throw std::domain_error("StableParams: requires eta >= 0");
    if (!std::isfinite(scale())) throw std::domain_error("StableParams: scale overflows");
}

double StableParams::scale() const {
    if (eta == 0.0) return 0.0;
    return std::pow(eta * std::tgamma(1.0 - alpha) / alpha, 1.0 / alpha);
}

double ps_laplace(const StableParams& p, double z) {
    if (!(z >= 0.0)) throw std::domain_error("ps_laplace: requires z >= 0");
    return std::exp(-p.eta * std::tgamma(1.0 - p.alpha) / p.alpha * std::pow(z, p.alpha));
}

double ps_sample(const StableParams& p, RngStream& rng) {
    if (p.eta == 0.0) return 0.0;
    // Kanter: standard one-sided stable (Laplace transform e^{-z^alpha}) is
    // (A(theta)/E)^{(1-alpha)/alpha} with theta ~ U(0,pi), E ~ Exp(1).
    const double alpha = p.alpha;
    const double theta = std::numbers::pi * rng.uniform();
    const double e = rng.exponential();
    const double a = std::sin((1.0 - alpha) * theta) *
                     std::pow(std::sin(alpha * theta), alpha / (1.0 - alpha)) /
                     std::pow(std::sin(theta), 1.0 / (1.0 - alpha));
    return p.scale() * std::pow(a / e, (1.0 - alpha) / alpha);
}

double ds_pgf(const StableParams& p, double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("ds_pgf: requires s in [0,1]");
    return ps_laplace(p, 1.0 - s);
}

std::uint64_t ds_sample(const StableParams& p, RngStream& rng) {
    if (p.eta == 0.0) return 0;
    return rng.poisson(ps_sample(p, rng));
}

} // namespace tempest
