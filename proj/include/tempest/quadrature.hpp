#ifndef TEMPEST_QUADRATURE_HPP
#define TEMPEST_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "tempest/errors.hpp"

namespace tempest {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;

    void validate() const;
};

// Adaptive 15-point Gauss-Kronrod on a finite interval. Bisects the segment
// with the largest error estimate until the global estimate meets
// max(abs_tol, rel_tol*|I|). `breakpoints` are interior points used as
// initial segment boundaries (known kinks / jumps of the integrand).
// Throws quadrature_error on non-convergence.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {},
                 const std::vector<double>& breakpoints = {});

// Integral of f over (0, infinity) for Levy-type integrands: f behaves like
// x^{-sing_exponent} as x -> 0 (sing_exponent < 1) and decays at least like
// x^{-decay_exponent} as x -> infinity (decay_exponent > 1).
//
// The domain is split at 1. On (0,1] the substitution x = u^{1/(1-s0)}
// removes the singularity; on [1,inf) the map x = v^{-1/(d-1)} takes the
// tail to (0,1] with a bounded integrand. Breakpoints (in x) are honoured
// on both pieces.
double levy_integral(const std::function<double(double)>& f,
                     double sing_exponent, double decay_exponent,
                     const QuadratureSpec& spec = {},
                     const std::vector<double>& breakpoints = {});

// Same tail map as levy_integral, for integrals over (lo, infinity), lo > 0.
double integrate_tail(const std::function<double(double)>& f, double lo,
                      double decay_exponent, const QuadratureSpec& spec = {},
                      const std::vector<double>& breakpoints = {});

} // namespace tempest

#endif
