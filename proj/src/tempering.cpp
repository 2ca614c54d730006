#include "tempest/tempering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tempest {

TemperingFunction TemperingFunction::identity() {
    TemperingFunction q;
    q.kind_ = TemperingKind::identity;
    q.bound_ = 1.0;
    q.zeta_ = 1.0;
    return q;
}

TemperingFunction TemperingFunction::exponential(double a) {
    if (!(a > 0.0)) throw std::domain_error("tempering exponential: requires a > 0");
    TemperingFunction q;
    q.kind_ = TemperingKind::exponential;
    q.a_ = a;
    q.bound_ = 1.0;
    q.zeta_ = 0.0;
    return q;
}

TemperingFunction TemperingFunction::truncation(double a) {
    if (!(a > 0.0)) throw std::domain_error("tempering truncation: requires a > 0");
    TemperingFunction q;
    q.kind_ = TemperingKind::truncation;
    q.a_ = a;
    q.bound_ = 1.0;
    q.zeta_ = 0.0;
    return q;
}

TemperingFunction TemperingFunction::exp_floor(double theta, double a) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::domain_error("tempering exp_floor: requires theta in [0,1]");
    if (!(a > 0.0)) throw std::domain_error("tempering exp_floor: requires a > 0");
    TemperingFunction q;
    q.kind_ = TemperingKind::exp_floor;
    q.theta_ = theta;
    q.a_ = a;
    q.bound_ = 1.0;
    q.zeta_ = theta;
    return q;
}

TemperingFunction TemperingFunction::table(std::vector<double> xs, std::vector<double> ys,
                                           double zeta) {
    if (xs.empty() || xs.size() != ys.size())
        throw std::domain_error("tempering table: grids must be nonempty and equal length");
    if (!std::is_sorted(xs.begin(), xs.end()) || xs.front() <= 0.0)
        throw std::domain_error("tempering table: x grid must be positive and increasing");
    for (double y : ys)
        if (!(y >= 0.0) || !std::isfinite(y))
            throw std::domain_error("tempering table: values must be finite and >= 0");
    if (ys.front() != 1.0)
        throw std::domain_error("tempering table: first value must be 1 so that q(0+) = 1");
    if (!(zeta >= 0.0) || !std::isfinite(zeta))
        throw std::domain_error("tempering table: zeta must be finite and >= 0");
    TemperingFunction q;
    q.kind_ = TemperingKind::table;
    q.xs_ = std::move(xs);
    q.ys_ = std::move(ys);
    q.zeta_ = zeta;
    q.bound_ = std::max(zeta, *std::max_element(q.ys_.begin(), q.ys_.end()));
    return q;
}

double TemperingFunction::eval(double x) const {
    if (!(x >= 0.0)) throw std::domain_error("tempering eval: requires x >= 0");
    switch (kind_) {
        case TemperingKind::identity:
            return 1.0;
        case TemperingKind::exponential:
            return std::exp(-a_ * x);
        case TemperingKind::truncation:
            return x < a_ ? 1.0 : 0.0;
        case TemperingKind::exp_floor:
            return theta_ + (1.0 - theta_) * std::exp(-a_ * x);
        case TemperingKind::table: {
            if (x == 0.0) return 1.0;
            // left-continuous: value ys[i] on (xs[i-1], xs[i]]
            auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
            if (it == xs_.end()) return zeta_;
            return ys_[static_cast<size_t>(it - xs_.begin())];
        }
    }
    return 1.0;
}

TemperingFunction TemperingFunction::rescale(double ell) const {
    if (!(ell > 0.0)) throw std::domain_error("tempering rescale: requires ell > 0");
    switch (kind_) {
        case TemperingKind::identity:
            return identity();
        case TemperingKind::exponential:
            return exponential(a_ / ell);
        case TemperingKind::truncation:
            return truncation(a_ * ell);
        case TemperingKind::exp_floor:
            return exp_floor(theta_, a_ / ell);
        case TemperingKind::table: {
            std::vector<double> xs = xs_;
            for (double& x : xs) x *= ell;
            return table(std::move(xs), ys_, zeta_);
        }
    }
    return identity();
}

double TemperingFunction::sup_beyond(double x) const {
    switch (kind_) {
        case TemperingKind::identity:
            return 0.0;
        case TemperingKind::exponential:
            return std::exp(-a_ * x);
        case TemperingKind::truncation:
            return x < a_ ? 1.0 : 0.0;
        case TemperingKind::exp_floor:
            return (1.0 - theta_) * std::exp(-a_ * x);
        case TemperingKind::table: {
            if (x > xs_.back()) return 0.0;
            double sup = 0.0;
            auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
            for (auto j = static_cast<size_t>(it - xs_.begin()); j < ys_.size(); ++j)
                sup = std::max(sup, std::abs(ys_[j] - zeta_));
            return sup;
        }
    }
    return 0.0;
}

std::vector<double> TemperingFunction::breakpoints() const {
    switch (kind_) {
        case TemperingKind::truncation:
            return {a_};
        case TemperingKind::table:
            return xs_;
        default:
            return {};
    }
}

std::string TemperingFunction::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case TemperingKind::identity: os << "identity"; break;
        case TemperingKind::exponential: os << "exponential(a=" << a_ << ")"; break;
        case TemperingKind::truncation: os << "truncation(a=" << a_ << ")"; break;
        case TemperingKind::exp_floor: os << "exp_floor(theta=" << theta_ << ",a=" << a_ << ")"; break;
        case TemperingKind::table: os << "table[" << xs_.size() << "]"; break;
    }
    return os.str();
}

IntegrabilityReport validate_integrability(const TemperingFunction& q, double alpha,
                                           const QuadratureSpec& spec) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("validate_integrability: requires alpha in (0,1)");

    IntegrabilityReport rep;
    const auto breaks = q.breakpoints();
    auto tail_integrand = [&](double x) { return q.eval(x) * std::pow(x, -1.0 - alpha); };

    // Head: int_0^1 x q(x) x^{-1-alpha} dx = int_0^1 q(x) x^{-alpha} dx,
    // singularity removed by x = u^{1/(1-alpha)}.
    const double p = 1.0 / (1.0 - alpha);
    std::vector<double> head_cuts;
    for (double b : breaks)
        if (b > 0.0 && b < 1.0) head_cuts.push_back(std::pow(b, 1.0 - alpha));
    rep.head = integrate(
        [&](double u) {
            const double x = std::pow(u, p);
            return q.eval(x) * std::pow(x, -alpha) * p * std::pow(u, p - 1.0);
        },
        0.0, 1.0, spec, head_cuts);

    rep.tail = integrate_tail(tail_integrand, 1.0, 1.0 + alpha, spec, breaks);

    // Cauchy check: partial tails on doubling upper limits must keep
    // contracting. A convergent tail ~ x^{-alpha_eff} contracts by
    // 2^{-alpha_eff} per doubling, which approaches 1 for small indices, so
    // only a failure to decay at all is flagged.
    bool cauchy_ok = true;
    double upper = 2.0;
    double last_increment =
        std::max(integrate(tail_integrand, 1.0, 2.0, spec, breaks), spec.abs_tol);
    for (int k = 0; k < 24; ++k) {
        const double inc = integrate(tail_integrand, upper, 2.0 * upper, spec, breaks);
        upper *= 2.0;
        if (k > 2 && inc > 0.999 * last_increment + spec.abs_tol) {
            cauchy_ok = false;
            break;
        }
        last_increment = std::max(inc, spec.abs_tol);
        if (inc < spec.abs_tol) break;
    }

    rep.value = rep.head + rep.tail;
    rep.pass = cauchy_ok && std::isfinite(rep.value);
    return rep;
}

} // namespace tempest
