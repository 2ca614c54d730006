#ifndef TEMPEST_NUMERICS_HPP
#define TEMPEST_NUMERICS_HPP

#include <functional>

#include "tempest/errors.hpp"
#include "tempest/quadrature.hpp"

namespace tempest {

/// Gamma function on (0, inf). Throws std::domain_error for x <= 0.
double gamma_fn(double x);

/// log Gamma on (0, inf); used wherever Gamma(k) would overflow.
double lgamma_pos(double x);

/// Generalized inverse V^{<-}(t) = inf{s : V(s) > t} for a nondecreasing,
/// eventually unbounded V, computed by expanding bracket plus bisection.
/// `bracket_hint` = {lo, hi} is a starting bracket; it is widened as needed.
/// Throws inversion_error if V never exceeds t within the expansion limit.
double invert_monotone(const std::function<double(double)>& V, double t,
                       std::pair<double, double> bracket_hint = {0.0, 1.0},
                       double rel_tol = 1e-12);

} // namespace tempest

#endif
