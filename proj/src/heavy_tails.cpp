#include "tempest/heavy_tails.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "tempest/kernels.hpp"
#include "tempest/numerics.hpp"

namespace tempest {

namespace {

constexpr std::uint64_t kLatticeCap = std::uint64_t{1} << 50;
constexpr std::uint64_t kSumCap = std::uint64_t{1} << 62;

// sum_{k=1}^{K} k^{-alpha}; direct up to 4096, Euler-Maclaurin continuation
// beyond (third-derivative remainder is far below double precision here).
double partial_zeta(double alpha, double K) {
    const double n_direct = std::min(K, 4096.0);
    double s = 0.0;
    for (double k = 1.0; k <= n_direct; k += 1.0) s += std::pow(k, -alpha);
    if (K <= 4096.0) return s;
    auto em = [&](double x) {
        return std::pow(x, 1.0 - alpha) / (1.0 - alpha) + 0.5 * std::pow(x, -alpha) -
               alpha * std::pow(x, -alpha - 1.0) / 12.0;
    };
    return s + em(K) - em(n_direct);
}

// k^{-alpha} - (k+1)^{-alpha} without cancellation for large k.
double pmf_smooth(double x, double alpha) {
    return -std::pow(x, -alpha) * std::expm1(-alpha * std::log1p(1.0 / x));
}

// Smallest x with sup_{y>=x} |q(y) - zeta| <= tol (by doubling; exactness is
// not needed, only a safe cutoff).
double decay_cutoff(const TemperingFunction& q, double tol) {
    if (q.sup_beyond(0.0) <= tol) return 0.0;
    double x = 1.0;
    for (int i = 0; i < 120 && q.sup_beyond(x) > tol; ++i) x *= 2.0;
    return x;
}

std::vector<double> geometric_cuts(double lo, double hi) {
    std::vector<double> cuts;
    for (double c = std::max(lo, 1e-6) * 4.0; c < hi; c *= 4.0) cuts.push_back(c);
    return cuts;
}

} // namespace

BaseMeasure BaseMeasure::pareto(double alpha, double x_m) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("pareto: requires alpha in (0,1)");
    if (!(x_m > 0.0)) throw std::domain_error("pareto: requires x_m > 0");
    return BaseMeasure(Kind::pareto, alpha, x_m, 0.0);
}

BaseMeasure BaseMeasure::log_pareto(double alpha, double p) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("log_pareto: requires alpha in (0,1)");
    // For p > 0 the tail is monotone iff alpha >= p / ((e+t) log(e+t)) for all
    // t >= 1; the right side peaks at t = 1.
    const double pmax = alpha * (std::numbers::e + 1.0) * std::log(std::numbers::e + 1.0);
    if (p > pmax)
        throw std::domain_error("log_pareto: p too large for a monotone tail at this alpha");
    return BaseMeasure(Kind::log_pareto, alpha, 1.0, p);
}

BaseMeasure BaseMeasure::discrete_pareto(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("discrete_pareto: requires alpha in (0,1)");
    return BaseMeasure(Kind::discrete_pareto, alpha, 1.0, 0.0);
}

double BaseMeasure::tail(double t) const {
    if (!(t > 0.0)) throw std::domain_error("tail: requires t > 0");
    switch (kind_) {
        case Kind::pareto:
            return t <= x_m_ ? 1.0 : std::pow(t / x_m_, -alpha_);
        case Kind::log_pareto: {
            if (t <= 1.0) return 1.0;
            const double A = std::pow(std::log(std::numbers::e + 1.0), -p_);
            return std::min(1.0, A * std::pow(t, -alpha_) *
                                     std::pow(std::log(std::numbers::e + t), p_));
        }
        case Kind::discrete_pareto:
            return std::pow(1.0 + std::floor(t), -alpha_);
    }
    return 0.0;
}

double BaseMeasure::slowly_varying(double t) const {
    return std::pow(t, alpha_) * tail(t);
}

double BaseMeasure::V(double t) const {
    if (!(t > 0.0)) throw std::domain_error("V: requires t > 0");
    return 1.0 / tail(t);
}

double BaseMeasure::inverse_V(double t) const {
    if (!(t >= 1.0)) throw std::domain_error("inverse_V: requires t >= 1");
    switch (kind_) {
        case Kind::pareto:
            return x_m_ * std::pow(t, 1.0 / alpha_);
        case Kind::log_pareto: {
            const double guess = std::pow(t, 1.0 / alpha_);
            return invert_monotone([&](double s) { return V(std::max(s, 1e-300)); }, t,
                                   {1.0, std::max(2.0, 2.0 * guess)}, 1e-13);
        }
        case Kind::discrete_pareto: {
            // smallest integer m with (1+m)^alpha > t
            double m = std::max(0.0, std::floor(std::pow(t, 1.0 / alpha_)) - 2.0);
            while (std::pow(1.0 + m, alpha_) <= t) m += 1.0;
            return m;
        }
    }
    return 0.0;
}

double BaseMeasure::density(double x) const {
    switch (kind_) {
        case Kind::pareto:
            return x < x_m_ ? 0.0 : alpha_ / x_m_ * std::pow(x / x_m_, -alpha_ - 1.0);
        case Kind::log_pareto: {
            if (x <= 1.0) return 0.0;
            const double A = std::pow(std::log(std::numbers::e + 1.0), -p_);
            const double lg = std::log(std::numbers::e + x);
            return A * (alpha_ * std::pow(x, -alpha_ - 1.0) * std::pow(lg, p_) -
                        p_ * std::pow(x, -alpha_) * std::pow(lg, p_ - 1.0) /
                            (std::numbers::e + x));
        }
        case Kind::discrete_pareto:
            throw std::domain_error("density: lattice measure has no density");
    }
    return 0.0;
}

double BaseMeasure::pmf_at(std::uint64_t k) const {
    if (kind_ != Kind::discrete_pareto)
        throw std::domain_error("pmf_at: continuous measure has no pmf");
    if (k == 0) return 0.0;
    return pmf_smooth(static_cast<double>(k), alpha_);
}

double BaseMeasure::support_min() const {
    return kind_ == Kind::pareto ? x_m_ : 1.0;
}

double BaseMeasure::sample(RngStream& rng) const {
    const double u = rng.uniform();
    switch (kind_) {
        case Kind::pareto:
            return x_m_ * std::pow(u, -1.0 / alpha_);
        case Kind::log_pareto:
            return inverse_V(1.0 / u);
        case Kind::discrete_pareto:
            return static_cast<double>(sample_int_from_uniform(u, alpha_));
    }
    return 0.0;
}

std::uint64_t BaseMeasure::sample_int(RngStream& rng) const {
    if (!lattice()) throw std::domain_error("sample_int: measure is not lattice");
    return sample_int_from_uniform(rng.uniform(), alpha_);
}

void BaseMeasure::sample_batch(RngStream& rng, std::span<double> out) const {
    const std::size_t n = out.size();
    switch (kind_) {
        case Kind::pareto: {
            for (std::size_t i = 0; i < n; ++i) out[i] = rng.uniform();
            kernels::active().pow_c(-1.0 / alpha_, out.data(), out.data(), n);
            if (x_m_ != 1.0)
                for (std::size_t i = 0; i < n; ++i) out[i] *= x_m_;
            return;
        }
        case Kind::log_pareto: {
            for (std::size_t i = 0; i < n; ++i) out[i] = sample(rng);
            return;
        }
        case Kind::discrete_pareto: {
            for (std::size_t i = 0; i < n; ++i) out[i] = rng.uniform();
            kernels::active().pow_c(-1.0 / alpha_, out.data(), out.data(), n);
            for (std::size_t i = 0; i < n; ++i) {
                double v = std::ceil(out[i] - 1.0);
                if (v < 1.0) v = 1.0;
                if (v > static_cast<double>(kLatticeCap)) v = static_cast<double>(kLatticeCap);
                out[i] = v;
            }
            return;
        }
    }
}

std::uint64_t BaseMeasure::sample_int_from_uniform(double u, double alpha) {
    const double y = std::pow(u, -1.0 / alpha) - 1.0;
    double v = std::ceil(y);
    if (v < 1.0) v = 1.0;
    if (v > static_cast<double>(kLatticeCap)) v = static_cast<double>(kLatticeCap);
    return static_cast<std::uint64_t>(v);
}

double NormingSequence::a(std::uint64_t n) const {
    if (n == 0) throw std::domain_error("NormingSequence::a: requires n >= 1");
    return 1.0 / base.inverse_V(static_cast<double>(n));
}

TemperedMeasure::TemperedMeasure(BaseMeasure base, TemperingFunction q, double ell,
                                 const QuadratureSpec& spec)
    : base_(std::move(base)),
      q_(std::move(q)),
      q_ell_(q_.rescale(ell)),
      ell_(ell),
      c_ell_(0.0),
      spec_(spec) {
    if (!(ell > 0.0)) throw std::domain_error("TemperedMeasure: requires ell > 0");
    const double z = integral_q_dmu(q_ell_);
    if (!(z > 0.0))
        throw std::domain_error("TemperedMeasure: integral of q_ell d mu vanishes (degenerate)");
    c_ell_ = 1.0 / z;
}

double TemperedMeasure::integral_q_dmu(const TemperingFunction& q_ell) const {
    if (q_ell.is_identity()) return 1.0;
    const double zeta = q_ell.limit_at_infinity();
    const double cut = decay_cutoff(q_ell, 1e-18);
    const double lo = base_.support_min();
    if (!base_.lattice()) {
        double integral = 0.0;
        if (cut > lo) {
            auto f = [&](double x) { return (q_ell.eval(x) - zeta) * base_.density(x); };
            auto cuts = geometric_cuts(lo, cut);
            for (double b : q_ell.breakpoints())
                if (b > lo && b < cut) cuts.push_back(b);
            integral = integrate(f, lo, cut, spec_, cuts);
        }
        return zeta + integral;
    }
    // lattice: direct summation while the summand envelope is alive, then a
    // midpoint-integral continuation for very slow tempering scales.
    double acc = 0.0;
    const std::uint64_t k_hi =
        cut <= 0.0 ? 0 : static_cast<std::uint64_t>(std::min(cut + 1.0, 4.2e18));
    const std::uint64_t direct_hi = std::min<std::uint64_t>(k_hi, 1u << 22);
    for (std::uint64_t k = 1; k <= direct_hi; ++k)
        acc += (q_ell.eval(static_cast<double>(k)) - zeta) * base_.pmf_at(k);
    if (k_hi > direct_hi) {
        const double a = base_.alpha();
        auto g = [&](double x) { return (q_ell.eval(x) - zeta) * pmf_smooth(x, a); };
        acc += integrate(g, static_cast<double>(direct_hi) + 0.5, static_cast<double>(k_hi),
                         spec_, geometric_cuts(static_cast<double>(direct_hi), static_cast<double>(k_hi)));
    }
    return zeta + acc;
}

double TemperedMeasure::sample(RngStream& rng) const {
    const double K = q_ell_.bound();
    for (;;) {
        const double x = base_.sample(rng);
        if (rng.uniform() * K <= q_ell_.eval(x)) return x;
    }
}

std::uint64_t TemperedMeasure::sample_int(RngStream& rng) const {
    const double K = q_ell_.bound();
    for (;;) {
        const std::uint64_t x = base_.sample_int(rng);
        if (rng.uniform() * K <= q_ell_.eval(static_cast<double>(x))) return x;
    }
}

template <class Consume>
void TemperedMeasure::sample_sum_impl(RngStream& rng, std::uint64_t n, Consume&& consume) const {
    constexpr std::size_t B = 2048;
    const double K = q_ell_.bound();
    const TemperingKind qk = q_ell_.kind();

    double xs[B], probs[B];
    std::uint64_t accepted = 0;
    while (accepted < n) {
        base_.sample_batch(rng, std::span<double>(xs, B));
        switch (qk) {
            case TemperingKind::identity:
                for (std::size_t i = 0; i < B; ++i) probs[i] = 1.0;
                break;
            case TemperingKind::exponential:
                kernels::active().exp_ax(-q_ell_.rate(), xs, probs, B);
                break;
            case TemperingKind::exp_floor: {
                kernels::active().exp_ax(-q_ell_.rate(), xs, probs, B);
                const double th = q_ell_.theta();
                for (std::size_t i = 0; i < B; ++i) probs[i] = th + (1.0 - th) * probs[i];
                break;
            }
            default:
                for (std::size_t i = 0; i < B; ++i) probs[i] = q_ell_.eval(xs[i]);
                break;
        }
        for (std::size_t i = 0; i < B && accepted < n; ++i) {
            if (rng.uniform() * K <= probs[i]) {
                consume(xs[i]);
                ++accepted;
            }
        }
    }
}

double TemperedMeasure::sample_sum(RngStream& rng, std::uint64_t n) const {
    double sum = 0.0;
    sample_sum_impl(rng, n, [&](double x) { sum += x; });
    return sum;
}

std::uint64_t TemperedMeasure::sample_sum_int(RngStream& rng, std::uint64_t n) const {
    std::uint64_t sum = 0;
    sample_sum_impl(rng, n, [&](double x) {
        const std::uint64_t xi = static_cast<std::uint64_t>(x);
        sum = (sum > kSumCap - xi) ? kSumCap : sum + xi;
    });
    return sum;
}

double TemperedMeasure::tail(double t) const {
    const double zeta = q_ell_.limit_at_infinity();
    const double cut = decay_cutoff(q_ell_, 1e-18);
    double rest = 0.0;
    if (!base_.lattice()) {
        const double lo = std::max(t, base_.support_min());
        if (cut > lo) {
            auto f = [&](double x) { return (q_ell_.eval(x) - zeta) * base_.density(x); };
            auto cuts = geometric_cuts(lo, cut);
            for (double b : q_ell_.breakpoints())
                if (b > lo && b < cut) cuts.push_back(b);
            rest = integrate(f, lo, cut, spec_, cuts);
        }
    } else {
        const std::uint64_t k_lo = static_cast<std::uint64_t>(std::floor(std::max(t, 0.0))) + 1;
        const std::uint64_t k_hi =
            cut <= 0.0 ? 0 : static_cast<std::uint64_t>(std::min(cut + 1.0, 4.2e18));
        const std::uint64_t direct_hi =
            std::min<std::uint64_t>(k_hi, k_lo > (1u << 22) ? k_lo + (1u << 22) : (1u << 22));
        for (std::uint64_t k = k_lo; k <= direct_hi && k_hi >= k_lo; ++k)
            rest += (q_ell_.eval(static_cast<double>(k)) - zeta) * base_.pmf_at(k);
        if (k_hi > direct_hi && k_hi >= k_lo) {
            const double a = base_.alpha();
            auto g = [&](double x) { return (q_ell_.eval(x) - zeta) * pmf_smooth(x, a); };
            rest += integrate(g, static_cast<double>(direct_hi) + 0.5, static_cast<double>(k_hi),
                              spec_,
                              geometric_cuts(static_cast<double>(direct_hi), static_cast<double>(k_hi)));
        }
    }
    return c_ell_ * (zeta * base_.tail(t) + rest);
}

double TemperedMeasure::truncated_mean(double t) const {
    const double zeta = q_ell_.limit_at_infinity();
    const double cut = decay_cutoff(q_ell_, 1e-18);
    if (!base_.lattice()) {
        const double lo = base_.support_min();
        if (t <= lo) return 0.0;
        // zeta part: zeta * int_lo^t x mu(dx); decaying part up to min(t,cut).
        auto f_zeta = [&](double x) { return x * base_.density(x); };
        double acc = 0.0;
        if (zeta > 0.0)
            acc += zeta * integrate(f_zeta, lo, t, spec_, geometric_cuts(lo, t));
        const double hi = std::min(t, cut);
        if (hi > lo) {
            auto f = [&](double x) { return x * (q_ell_.eval(x) - zeta) * base_.density(x); };
            auto cuts = geometric_cuts(lo, hi);
            for (double b : q_ell_.breakpoints())
                if (b > lo && b < hi) cuts.push_back(b);
            acc += integrate(f, lo, hi, spec_, cuts);
        }
        return c_ell_ * acc;
    }
    // lattice: E[X 1_{X<t}] pieces. zeta part via
    // sum_{k=1}^{K} k pmf(k) = partial_zeta(alpha,K) - K (K+1)^{-alpha}.
    const double a = base_.alpha();
    const double K_real = std::ceil(t) - 1.0; // k < t means k <= ceil(t)-1
    if (K_real < 1.0) return 0.0;
    double acc = 0.0;
    if (zeta > 0.0)
        acc += zeta * (partial_zeta(a, K_real) - K_real * std::pow(K_real + 1.0, -a));
    const double hi = std::min(K_real, cut);
    const std::uint64_t direct_hi = static_cast<std::uint64_t>(std::min(hi, 4194304.0));
    for (std::uint64_t k = 1; k <= direct_hi; ++k)
        acc += static_cast<double>(k) * (q_ell_.eval(static_cast<double>(k)) - zeta) *
               base_.pmf_at(k);
    if (hi > static_cast<double>(direct_hi)) {
        auto g = [&](double x) { return x * (q_ell_.eval(x) - zeta) * pmf_smooth(x, a); };
        acc += integrate(g, static_cast<double>(direct_hi) + 0.5, hi, spec_,
                         geometric_cuts(static_cast<double>(direct_hi), hi));
    }
    return c_ell_ * acc;
}

} // namespace tempest
