#ifndef TEMPEST_STABLE_HPP
#define TEMPEST_STABLE_HPP

#include <cstdint>

#include "tempest/rng.hpp"

namespace tempest {

// Parameters of the positive stable law PS_alpha(eta) (and of its lattice
// analogue DS_alpha(eta)): Laplace transform exp(-eta Gamma(1-alpha)/alpha
// z^alpha), alpha in (0,1), eta >= 0. eta = 0 is the point mass at zero.
struct StableParams {
    double alpha;
    double eta;

    StableParams(double alpha_, double eta_);

    /// sigma with sigma^alpha = eta Gamma(1-alpha)/alpha, so that
    /// PS_alpha(eta) = sigma * (standard one-sided stable).
    double scale() const;
};

/// E[e^{-zX}] for X ~ PS_alpha(eta), z >= 0.
double ps_laplace(const StableParams& p, double z);

/// Exact draw from PS_alpha(eta) (Kanter's representation scaled by
/// StableParams::scale()).
double ps_sample(const StableParams& p, RngStream& rng);

/// E[s^X] for X ~ DS_alpha(eta), s in [0,1]. Shares the ps_laplace code
/// path: ds_pgf(p, s) == ps_laplace(p, 1-s).
double ds_pgf(const StableParams& p, double s);

/// Exact draw from DS_alpha(eta): Poisson(T) at an independent T ~ PS_alpha(eta).
std::uint64_t ds_sample(const StableParams& p, RngStream& rng);

} // namespace tempest

#endif
