#include "tempest/kernels.hpp"
#include "kernels_detail.hpp"

namespace tempest::kernels {

namespace {

using detail::exp_core;
using detail::log_core;

void exp_ax_scalar(double a, const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = exp_core(a * x[i]);
}

void pow_c_scalar(double c, const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = exp_core(c * log_core(x[i]));
}

void sum_sq_scalar(const double* v, std::size_t n, double* sum, double* sumsq) {
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    double s2[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t blocks = n / 4;
    for (std::size_t k = 0; k < blocks; ++k) {
        for (int j = 0; j < 4; ++j) {
            const double x = v[4 * k + j];
            s[j] += x;
            s2[j] = std::fma(x, x, s2[j]);
        }
    }
    double total = (s[0] + s[1]) + (s[2] + s[3]);
    double total2 = (s2[0] + s2[1]) + (s2[2] + s2[3]);
    for (std::size_t i = 4 * blocks; i < n; ++i) {
        total += v[i];
        total2 = std::fma(v[i], v[i], total2);
    }
    *sum = total;
    *sumsq = total2;
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops{"scalar", exp_ax_scalar, pow_c_scalar, sum_sq_scalar};
    return ops;
}

} // namespace tempest::kernels
