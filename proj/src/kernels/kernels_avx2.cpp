#include "tempest/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include "kernels_detail.hpp"

namespace tempest::kernels {

namespace {

using namespace detail;

// Integral-valued doubles |k| < 2^51 -> int64 lanes.
inline __m256i to_i64(__m256d k) {
    const __m256d magic = _mm256_set1_pd(kMagic);
    return _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(k, magic)),
                            _mm256_castpd_si256(magic));
}

// 2^k for integral doubles k, |k| <= 1022.
inline __m256d pow2i_v(__m256d k) {
    const __m256i ki = to_i64(k);
    const __m256i bits =
        _mm256_slli_epi64(_mm256_add_epi64(ki, _mm256_set1_epi64x(1023)), 52);
    return _mm256_castsi256_pd(bits);
}

inline __m256d exp_core_v(__m256d t) {
    const __m256d n =
        _mm256_round_pd(_mm256_mul_pd(t, _mm256_set1_pd(kLog2E)),
                        _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fmadd_pd(n, _mm256_set1_pd(-kLn2Hi), t);
    r = _mm256_fmadd_pd(n, _mm256_set1_pd(-kLn2Lo), r);

    const __m256d xx = _mm256_mul_pd(r, r);
    __m256d p = _mm256_fmadd_pd(_mm256_set1_pd(kExpP0), xx, _mm256_set1_pd(kExpP1));
    p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(kExpP2));
    const __m256d px = _mm256_mul_pd(r, p);
    __m256d q = _mm256_fmadd_pd(_mm256_set1_pd(kExpQ0), xx, _mm256_set1_pd(kExpQ1));
    q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(kExpQ2));
    q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(kExpQ3));
    const __m256d rat = _mm256_div_pd(px, _mm256_sub_pd(q, px));
    const __m256d e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), rat, _mm256_set1_pd(1.0));

    const __m256d n1 = _mm256_floor_pd(_mm256_mul_pd(n, _mm256_set1_pd(0.5)));
    const __m256d n2 = _mm256_sub_pd(n, n1);
    __m256d res = _mm256_mul_pd(_mm256_mul_pd(e, pow2i_v(n1)), pow2i_v(n2));

    // Same special-case policy as the scalar core; NaN wins last.
    const __m256d lo_mask = _mm256_cmp_pd(t, _mm256_set1_pd(kExpLo), _CMP_LT_OQ);
    const __m256d hi_mask = _mm256_cmp_pd(t, _mm256_set1_pd(kExpHi), _CMP_GT_OQ);
    const __m256d nan_mask = _mm256_cmp_pd(t, t, _CMP_UNORD_Q);
    res = _mm256_blendv_pd(res, _mm256_setzero_pd(), lo_mask);
    res = _mm256_blendv_pd(
        res, _mm256_set1_pd(std::numeric_limits<double>::infinity()), hi_mask);
    res = _mm256_blendv_pd(res, t, nan_mask);
    return res;
}

inline __m256d log_core_v(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i expo = _mm256_srli_epi64(bits, 52);
    // int64 lanes (all < 2^11) -> double via the magic-bias trick.
    const __m256d magic = _mm256_set1_pd(kMagic);
    const __m256d expo_d = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_add_epi64(expo, _mm256_castpd_si256(magic))), magic);
    __m256d ed = _mm256_sub_pd(expo_d, _mm256_set1_pd(1022.0));

    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(
        _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll)),
        _mm256_set1_epi64x(0x3FE0000000000000ll)));

    const __m256d small = _mm256_cmp_pd(m, _mm256_set1_pd(kSqrtHalf), _CMP_LT_OQ);
    ed = _mm256_add_pd(ed, _mm256_and_pd(small, _mm256_set1_pd(-1.0)));
    m = _mm256_blendv_pd(m, _mm256_add_pd(m, m), small);

    const __m256d w = _mm256_sub_pd(m, _mm256_set1_pd(1.0));
    const __m256d z = _mm256_mul_pd(w, w);

    __m256d pp = _mm256_fmadd_pd(_mm256_set1_pd(kLogP0), w, _mm256_set1_pd(kLogP1));
    pp = _mm256_fmadd_pd(pp, w, _mm256_set1_pd(kLogP2));
    pp = _mm256_fmadd_pd(pp, w, _mm256_set1_pd(kLogP3));
    pp = _mm256_fmadd_pd(pp, w, _mm256_set1_pd(kLogP4));
    pp = _mm256_fmadd_pd(pp, w, _mm256_set1_pd(kLogP5));
    __m256d qq = _mm256_add_pd(w, _mm256_set1_pd(kLogQ0));
    qq = _mm256_fmadd_pd(qq, w, _mm256_set1_pd(kLogQ1));
    qq = _mm256_fmadd_pd(qq, w, _mm256_set1_pd(kLogQ2));
    qq = _mm256_fmadd_pd(qq, w, _mm256_set1_pd(kLogQ3));
    qq = _mm256_fmadd_pd(qq, w, _mm256_set1_pd(kLogQ4));

    __m256d y = _mm256_mul_pd(w, _mm256_mul_pd(z, _mm256_div_pd(pp, qq)));
    y = _mm256_fmadd_pd(ed, _mm256_set1_pd(-kLn2LoLog), y);
    y = _mm256_fmadd_pd(z, _mm256_set1_pd(-0.5), y);
    __m256d res = _mm256_add_pd(w, y);
    res = _mm256_fmadd_pd(ed, _mm256_set1_pd(kLn2HiLog), res);
    return res;
}

void exp_ax_avx2(double a, const double* x, double* out, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_mul_pd(av, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(out + i, exp_core_v(t));
    }
    for (; i < n; ++i) out[i] = exp_core(a * x[i]);
}

void pow_c_avx2(double c, const double* x, double* out, std::size_t n) {
    const __m256d cv = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d lg = log_core_v(_mm256_loadu_pd(x + i));
        _mm256_storeu_pd(out + i, exp_core_v(_mm256_mul_pd(cv, lg)));
    }
    for (; i < n; ++i) out[i] = exp_core(c * log_core(x[i]));
}

void sum_sq_avx2(const double* v, std::size_t n, double* sum, double* sumsq) {
    __m256d acc = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    const std::size_t blocks = n / 4;
    for (std::size_t k = 0; k < blocks; ++k) {
        const __m256d x = _mm256_loadu_pd(v + 4 * k);
        acc = _mm256_add_pd(acc, x);
        acc2 = _mm256_fmadd_pd(x, x, acc2);
    }
    alignas(32) double s[4], s2[4];
    _mm256_store_pd(s, acc);
    _mm256_store_pd(s2, acc2);
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

const Ops* avx2_ops() {
    if (!(__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))) return nullptr;
    static const Ops ops{"avx2", exp_ax_avx2, pow_c_avx2, sum_sq_avx2};
    return &ops;
}

} // namespace tempest::kernels

#else

namespace tempest::kernels {
const Ops* avx2_ops() { return nullptr; }
} // namespace tempest::kernels

#endif
