#include "tempest/tempered.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tempest/numerics.hpp"

namespace tempest {

namespace {

// int_0^b f with f ~ x^{-s0} near 0, s0 < 1: x = b u^{1/(1-s0)}.
double integrate_singular_head(const std::function<double(double)>& f, double b, double s0,
                               const QuadratureSpec& spec,
                               const std::vector<double>& breaks = {}) {
    if (b <= 0.0) return 0.0;
    const double p = 1.0 / (1.0 - s0);
    std::vector<double> cuts;
    for (double x : breaks)
        if (x > 0.0 && x < b) cuts.push_back(std::pow(x / b, 1.0 - s0));
    return integrate(
        [&](double u) {
            const double x = b * std::pow(u, p);
            return f(x) * b * p * std::pow(u, p - 1.0);
        },
        0.0, 1.0, spec, cuts);
}

} // namespace

PtsParams::PtsParams(double alpha_, TemperingFunction q_, double eta_, double drift_)
    : alpha(alpha_), q(std::move(q_)), eta(eta_), drift(drift_) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("PtsParams: requires alpha in (0,1)");
    if (!(eta >= 0.0)) throw std::domain_error("PtsParams: requires eta >= 0");
    if (!(drift >= 0.0)) throw std::domain_error("PtsParams: requires drift >= 0");
    if (!validate_integrability(q, alpha).pass)
        throw std::domain_error("PtsParams: tempering function fails the integrability condition");
}

DtsParams::DtsParams(double alpha_, TemperingFunction q_, double eta_, double rate_,
                     double drift_)
    : alpha(alpha_), q(std::move(q_)), eta(eta_), rate(rate_), drift(drift_) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("DtsParams: requires alpha in (0,1)");
    if (!(eta >= 0.0)) throw std::domain_error("DtsParams: requires eta >= 0");
    if (!(rate > 0.0)) throw std::domain_error("DtsParams: requires rate > 0");
    if (!(drift >= 0.0)) throw std::domain_error("DtsParams: requires drift >= 0");
    if (!validate_integrability(q, alpha).pass)
        throw std::domain_error("DtsParams: tempering function fails the integrability condition");
}

DtsParams DtsParams::folded() const {
    if (rate == 1.0) return *this;
    return DtsParams(alpha, q.rescale(rate), std::pow(rate, alpha) * eta, 1.0, drift * rate);
}

double pts_laplace_exponent(const PtsParams& p, double z, const QuadratureSpec& spec) {
    if (!(z >= 0.0)) throw std::domain_error("pts_laplace_exponent: requires z >= 0");
    if (z == 0.0) return 0.0;
    if (p.eta == 0.0) return p.drift * z;
    auto f = [&](double x) {
        return -std::expm1(-z * x) * p.q.eval(x) * std::pow(x, -1.0 - p.alpha);
    };
    const double integral = levy_integral(f, p.alpha, 1.0 + p.alpha, spec, p.q.breakpoints());
    return p.drift * z + p.eta * integral;
}

PtsSampler::PtsSampler(PtsParams p, double tol, const QuadratureSpec& spec) : p_(std::move(p)) {
    if (!(tol > 0.0)) throw std::domain_error("PtsSampler: requires tol > 0");
    if (p_.eta == 0.0) {
        path_ = Path::point_mass;
        return;
    }
    if (p_.q.is_identity()) {
        path_ = Path::stable_exact;
        return;
    }
    if (p_.q.kind() == TemperingKind::exponential) {
        // Accepting a PS_alpha(eta) draw X with probability e^{-aX} produces
        // exactly the exponentially tempered law; the acceptance rate is the
        // stable Laplace transform at a.
        const double accept = ps_laplace(StableParams(p_.alpha, p_.eta), p_.q.rate());
        if (accept >= 0.01) {
            path_ = Path::exponential_rejection;
            return;
        }
    }

    path_ = Path::series;
    const double K = p_.q.bound();
    const double alpha = p_.alpha;
    // sd of the discarded remainder is at most sqrt(eta K eps^{2-alpha}/(2-alpha)).
    eps_ = std::pow(tol * tol * (2.0 - alpha) / (p_.eta * K), 1.0 / (2.0 - alpha));
    level_scale_ = std::pow(alpha / (p_.eta * K), -1.0 / alpha);
    compensation_ = p_.eta * integrate_singular_head(
                                [&](double x) { return p_.q.eval(x) * std::pow(x, -alpha); },
                                eps_, alpha, spec, p_.q.breakpoints());
    const double second_moment =
        p_.eta * integrate_singular_head(
                     [&](double x) { return p_.q.eval(x) * std::pow(x, 1.0 - alpha); }, eps_,
                     0.0, spec, p_.q.breakpoints());
    bias_bound_ = std::sqrt(second_moment);
}

double PtsSampler::sample(RngStream& rng) const {
    switch (path_) {
        case Path::point_mass:
            return p_.drift;
        case Path::stable_exact:
            return p_.drift + ps_sample(StableParams(p_.alpha, p_.eta), rng);
        case Path::exponential_rejection: {
            const StableParams sp(p_.alpha, p_.eta);
            const double a = p_.q.rate();
            for (;;) {
                const double x = ps_sample(sp, rng);
                if (rng.uniform() <= std::exp(-a * x)) return p_.drift + x;
            }
        }
        case Path::series: {
            // Decreasing jumps x_i = level_scale * Gamma_i^{-1/alpha}; each
            // retained with probability q(x)/K, stopping below eps.
            const double K = p_.q.bound();
            const double inv_alpha = -1.0 / p_.alpha;
            double gamma = 0.0;
            double sum = p_.drift + compensation_;
            for (;;) {
                gamma += rng.exponential();
                const double x = level_scale_ * std::pow(gamma, inv_alpha);
                if (x < eps_) break;
                if (rng.uniform() * K <= p_.q.eval(x)) sum += x;
            }
            return sum;
        }
    }
    return 0.0;
}

double pts_sample(const PtsParams& p, RngStream& rng, double tol) {
    return PtsSampler(p, tol).sample(rng);
}

double dts_pgf(const DtsParams& p, double s, const QuadratureSpec& spec) {
    if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("dts_pgf: requires s in (0,1]");
    const PtsParams sub(p.alpha, p.q, p.eta, p.drift);
    return std::exp(-pts_laplace_exponent(sub, p.rate * (1.0 - s), spec));
}

DtsSampler::DtsSampler(DtsParams p, double tol, const QuadratureSpec& spec)
    : rate_(p.rate), pts_(PtsParams(p.alpha, p.q, p.eta, p.drift), tol, spec) {}

std::uint64_t DtsSampler::sample(RngStream& rng) const {
    return rng.poisson(rate_ * pts_.sample(rng));
}

std::uint64_t dts_sample(const DtsParams& p, RngStream& rng, double tol) {
    return DtsSampler(p, tol).sample(rng);
}

LevyWeights dts_levy_weights(const DtsParams& p, std::size_t k_max, const QuadratureSpec& spec) {
    constexpr std::size_t kCap = 100000;
    const bool auto_grow = (k_max == 0);
    if (auto_grow) k_max = kCap;

    const DtsParams f = p.folded();
    const double alpha = f.alpha;

    LevyWeights w;
    w.total_mass = pts_laplace_exponent(PtsParams(f.alpha, f.q, f.eta, f.drift), 1.0, spec);
    w.lambda.reserve(std::min<std::size_t>(k_max, 4096));

    const auto& q = f.q;
    const auto breaks = q.breakpoints();
    for (std::size_t k = 1; k <= k_max; ++k) {
        double lam;
        if (f.eta == 0.0) {
            lam = 0.0;
        } else if (k == 1) {
            // lambda_1 = eta int e^{-x} x^{-alpha} q(x) dx, singular at 0.
            lam = f.eta * levy_integral(
                              [&](double x) {
                                  return std::exp(-x) * std::pow(x, -alpha) * q.eval(x);
                              },
                              alpha, 2.0, spec, breaks);
        } else {
            // lambda_k = eta Gamma(k-alpha)/k! E[q(Y)], Y ~ Gamma(k-alpha, 1);
            // integrate the normalized gamma density over a window that
            // carries all but ~1e-30 of its mass.
            const double s = static_cast<double>(k) - alpha;
            const double lg = lgamma_pos(s);
            const double sd = std::sqrt(s);
            const double lo = std::max(0.0, s - 12.0 * sd - 20.0);
            const double hi = s + 12.0 * sd + 40.0;
            const double mean_q = integrate(
                [&](double x) { return q.eval(x) * std::exp((s - 1.0) * std::log(x) - x - lg); },
                lo, hi, spec, breaks);
            lam = f.eta * std::exp(lg - lgamma_pos(static_cast<double>(k) + 1.0)) * mean_q;
        }
        if (k == 1) lam += f.drift; // Poisson(b r) convolution puts mass b r at 1
        w.lambda.push_back(lam);
        if (auto_grow && k >= 8 && lam * static_cast<double>(k) < 1e-14) break;
    }
    w.k_max = w.lambda.size();
    double partial = 0.0;
    for (double lam : w.lambda) partial += lam;
    w.tail_mass = std::max(0.0, w.total_mass - partial);
    return w;
}

PmfResult dts_pmf(const DtsParams& p, std::size_t n_max, const QuadratureSpec& spec) {
    PmfResult res;
    res.weights = dts_levy_weights(p, std::max<std::size_t>(n_max, 1), spec);
    const auto& lam = res.weights.lambda;

    res.p.assign(n_max + 1, 0.0);
    res.p[0] = std::exp(-res.weights.total_mass);
    for (std::size_t n = 1; n <= n_max; ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k)
            acc += static_cast<double>(k) * lam[k - 1] * res.p[n - k];
        res.p[n] = acc / static_cast<double>(n);
        if (!std::isfinite(res.p[n]))
            throw std::runtime_error("dts_pmf: recursion diverged at n=" + std::to_string(n));
    }
    double total = 0.0;
    for (double v : res.p) total += v;
    res.tail_prob = std::max(0.0, 1.0 - total);
    return res;
}

std::uint64_t thin(double gamma, std::uint64_t x, RngStream& rng) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::domain_error("thin: requires gamma in [0,1]");
    return rng.binomial(x, gamma);
}

} // namespace tempest
