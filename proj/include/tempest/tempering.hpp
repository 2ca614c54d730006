#ifndef TEMPEST_TEMPERING_HPP
#define TEMPEST_TEMPERING_HPP

#include <string>
#include <vector>

#include "tempest/quadrature.hpp"

namespace tempest {

enum class TemperingKind { identity, exponential, truncation, exp_floor, table };

// A tempering function q: [0,inf) -> [0,K], Borel, q(0+) = 1, with at most a
// null set of discontinuities. Closed under rescale(l): q_l(x) = q(x/l).
class TemperingFunction {
public:
    static TemperingFunction identity();
    /// q(x) = exp(-a x), a > 0.
    static TemperingFunction exponential(double a);
    /// q(x) = 1 for x < a, 0 otherwise.
    static TemperingFunction truncation(double a);
    /// q(x) = theta + (1-theta) exp(-a x); floor theta in [0,1], a > 0.
    static TemperingFunction exp_floor(double theta, double a);
    /// Left-continuous step function: q(x) = y[i] on (x[i-1], x[i]] with
    /// x[0-1] := 0, and q(x) = zeta for x > x.back(). Requires y[0] = 1 so
    /// that q(0+) = 1.
    static TemperingFunction table(std::vector<double> xs, std::vector<double> ys, double zeta);

    TemperingKind kind() const { return kind_; }

    double operator()(double x) const { return eval(x); }
    double eval(double x) const;

    /// q_l with q_l(x) = q(x/l); kind-preserving for every built-in.
    TemperingFunction rescale(double ell) const;

    /// K = sup q.
    double bound() const { return bound_; }

    /// zeta = lim_{x->inf} q(x); every built-in kind has one.
    double limit_at_infinity() const { return zeta_; }

    /// sup_{y >= x} |q(y) - zeta|; the envelope summation/tail bounds use to
    /// decide where the non-constant part of q has died off.
    double sup_beyond(double x) const;

    /// Discontinuity/kink locations, used as quadrature breakpoints.
    std::vector<double> breakpoints() const;

    bool is_identity() const { return kind_ == TemperingKind::identity; }

    // Parameter access for serialization and kind-specific fast paths.
    double rate() const { return a_; }
    double theta() const { return theta_; }
    const std::vector<double>& grid_x() const { return xs_; }
    const std::vector<double>& grid_y() const { return ys_; }

    std::string describe() const;

private:
    TemperingFunction() = default;

    TemperingKind kind_ = TemperingKind::identity;
    double a_ = 0.0;      // rate (exponential, exp_floor) or cutoff (truncation)
    double theta_ = 0.0;  // exp_floor floor
    std::vector<double> xs_, ys_;
    double bound_ = 1.0;
    double zeta_ = 1.0;
};

struct IntegrabilityReport {
    bool pass = false;
    double value = 0.0;  // int_0^inf (1 ^ x) q(x) x^{-1-alpha} dx
    double head = 0.0;   // (0,1] part
    double tail = 0.0;   // (1,inf) part
};

/// Numerically checks the defining integrability condition of a tempering
/// function for a given stability index alpha in (0,1). The head/tail split
/// is at 1; the tail is also probed on doubling upper limits as a Cauchy
/// check (bounded q always passes, but the report records the evidence).
IntegrabilityReport validate_integrability(const TemperingFunction& q, double alpha,
                                           const QuadratureSpec& spec = {});

} // namespace tempest

#endif
