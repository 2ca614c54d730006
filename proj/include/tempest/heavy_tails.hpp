#ifndef TEMPEST_HEAVY_TAILS_HPP
#define TEMPEST_HEAVY_TAILS_HPP

#include <cstdint>
#include <span>

#include "tempest/quadrature.hpp"
#include "tempest/rng.hpp"
#include "tempest/tempering.hpp"

namespace tempest {

// Heavy-tailed base law mu with tail t^{-alpha} L(t), L slowly varying,
// alpha in (0,1). Built-in kinds:
//   pareto(alpha, x_m):      mu((t,inf)) = (t/x_m)^{-alpha} for t >= x_m; L const
//   log_pareto(alpha, p):    mu((t,inf)) = min(1, A t^{-alpha} log(e+t)^p),
//                            A = log(e+1)^{-p}, support [1,inf)
//   discrete_pareto(alpha):  lattice, mu((t,inf)) = (1 + floor(t))^{-alpha};
//                            support {1,2,...}, pmf(k) = k^{-a} - (k+1)^{-a}
class BaseMeasure {
public:
    enum class Kind { pareto, log_pareto, discrete_pareto };

    static BaseMeasure pareto(double alpha, double x_m);
    static BaseMeasure log_pareto(double alpha, double p);
    static BaseMeasure discrete_pareto(double alpha);

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double x_m() const { return x_m_; }
    double log_power() const { return p_; }
    bool lattice() const { return kind_ == Kind::discrete_pareto; }

    /// mu((t,inf)), exact, t > 0.
    double tail(double t) const;
    /// L(t) = t^alpha * tail(t).
    double slowly_varying(double t) const;
    /// V(t) = t^alpha / L(t) = 1 / tail(t) on the support.
    double V(double t) const;
    /// V^{<-}(t) = inf{s : V(s) > t}, t >= 1. Closed form except log_pareto,
    /// which inverts numerically.
    double inverse_V(double t) const;

    /// Lebesgue density (continuous kinds only).
    double density(double x) const;
    /// pmf at k (lattice only).
    double pmf_at(std::uint64_t k) const;
    /// Left endpoint of the support.
    double support_min() const;

    double sample(RngStream& rng) const;
    std::uint64_t sample_int(RngStream& rng) const;

    /// Inverse-cdf transform of a batch of uniforms (kernel-accelerated for
    /// the pareto kinds); lattice values are reported as doubles.
    void sample_batch(RngStream& rng, std::span<double> out) const;

private:
    BaseMeasure(Kind k, double alpha, double x_m, double p)
        : kind_(k), alpha_(alpha), x_m_(x_m), p_(p) {}

    static std::uint64_t sample_int_from_uniform(double u, double alpha);

    Kind kind_;
    double alpha_;
    double x_m_ = 1.0;
    double p_ = 0.0;
};

// Norming machinery: a_t = 1 / V^{<-}(t), regularly varying with index -1/alpha.
struct NormingSequence {
    BaseMeasure base;
    double a(std::uint64_t n) const;
    double V(double t) const { return base.V(t); }
};

// mu_ell(dx) = c_ell q_ell(x) mu(dx) with q_ell(x) = q(x/ell) and
// c_ell = [int q_ell dmu]^{-1}, computed eagerly at construction
// (quadrature for continuous mu, exact-tail-bounded summation for lattice mu).
class TemperedMeasure {
public:
    TemperedMeasure(BaseMeasure base, TemperingFunction q, double ell,
                    const QuadratureSpec& spec = {});

    const BaseMeasure& base() const { return base_; }
    const TemperingFunction& q_scaled() const { return q_ell_; }
    double ell() const { return ell_; }
    double c_ell() const { return c_ell_; }

    /// Rejection draw: x ~ base accepted with probability q_ell(x)/K.
    double sample(RngStream& rng) const;
    std::uint64_t sample_int(RngStream& rng) const;

    /// Draws n values and accumulates their sum; batch path shared with the
    /// limit experiments. Lattice sums saturate at 2^62 (any statistic used
    /// here is already saturated far below that).
    double sample_sum(RngStream& rng, std::uint64_t n) const;
    std::uint64_t sample_sum_int(RngStream& rng, std::uint64_t n) const;

    /// mu_ell((t,inf)) = c_ell int_(t,inf) q_ell dmu.
    double tail(double t) const;
    /// c_ell int_[0,t) x q_ell(x) mu(dx).
    double truncated_mean(double t) const;

private:
    double integral_q_dmu(const TemperingFunction& q_ell) const;

    template <class Consume>
    void sample_sum_impl(RngStream& rng, std::uint64_t n, Consume&& consume) const;

    BaseMeasure base_;
    TemperingFunction q_;      // unscaled
    TemperingFunction q_ell_;  // q(./ell)
    double ell_;
    double c_ell_;
    QuadratureSpec spec_;
};

inline TemperedMeasure temper(BaseMeasure base, TemperingFunction q, double ell,
                              const QuadratureSpec& spec = {}) {
    return TemperedMeasure(std::move(base), std::move(q), ell, spec);
}

} // namespace tempest

#endif
