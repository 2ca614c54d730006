#ifndef TEMPEST_KERNELS_DETAIL_HPP
#define TEMPEST_KERNELS_DETAIL_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

// Shared scalar cores and constants for the exp/log kernels. Both the scalar
// reference and the AVX2 variant evaluate exactly these polynomials with
// exactly this FMA structure; see kernels.hpp for the bit-identity contract.
//
// Coefficients are the classic Cephes double-precision exp()/log() sets
// (Moshier), accurate to ~1-2 ulp on the reduced ranges.

namespace tempest::kernels::detail {

inline constexpr double kLog2E = 1.4426950408889634073599;

// Cody-Waite split of ln 2 (hi part exactly representable).
inline constexpr double kLn2Hi = 6.93145751953125e-1;
inline constexpr double kLn2Lo = 1.42860682030941723212e-6;

// exp: e^r = 1 + 2 r P(r^2) / (Q(r^2) - r P(r^2)) on |r| <= ln2/2.
inline constexpr double kExpP0 = 1.26177193074810590878e-4;
inline constexpr double kExpP1 = 3.02994407707441961300e-2;
inline constexpr double kExpP2 = 9.99999999999999999910e-1;
inline constexpr double kExpQ0 = 3.00198505138664455042e-6;
inline constexpr double kExpQ1 = 2.52448340349684104192e-3;
inline constexpr double kExpQ2 = 2.27265548208155028766e-1;
inline constexpr double kExpQ3 = 2.00000000000000000005e0;

// Below this everything rounds to +0; above kExpHi to +inf.
inline constexpr double kExpLo = -745.5;
inline constexpr double kExpHi = 709.7827128933840868;

// log: on m in [sqrt(1/2), sqrt(2)), w = m-1,
// log m = w - w^2/2 + w^3 P(w)/Q(w).
inline constexpr double kSqrtHalf = 0.70710678118654752440;
inline constexpr double kLogP0 = 1.01875663804580931796e-4;
inline constexpr double kLogP1 = 4.97494994976747001425e-1;
inline constexpr double kLogP2 = 4.70579119878881725854e0;
inline constexpr double kLogP3 = 1.44989225341610930846e1;
inline constexpr double kLogP4 = 1.79368678507819816313e1;
inline constexpr double kLogP5 = 7.70838733755885391666e0;
inline constexpr double kLogQ0 = 1.12873587189167450590e1;
inline constexpr double kLogQ1 = 4.52279145837532221105e1;
inline constexpr double kLogQ2 = 8.29875266912776603211e1;
inline constexpr double kLogQ3 = 7.11544750618563894466e1;
inline constexpr double kLogQ4 = 2.31251620126765340583e1;

// Split of ln 2 used on the exponent term of log: ln2 = hi - lo.
inline constexpr double kLn2HiLog = 0.693359375;
inline constexpr double kLn2LoLog = 2.121944400546905827679e-4;

// 1.5 * 2^52; doubles in [2^52, 2^53) expose their integer value in the
// low mantissa bits, which is how both variants turn small integral
// doubles into int64 lanes.
inline constexpr double kMagic = 6755399441055744.0;

// 2^k for integral k stored in a double, |k| <= 1022, built from exponent bits.
inline double pow2i(double k) {
    const std::int64_t ki = static_cast<std::int64_t>(k);
    return std::bit_cast<double>(static_cast<std::uint64_t>(ki + 1023) << 52);
}

inline double exp_core(double t) {
    if (std::isnan(t)) return t;
    if (t < kExpLo) return 0.0;
    if (t > kExpHi) return std::numeric_limits<double>::infinity();

    const double n = std::nearbyint(t * kLog2E);
    double r = std::fma(n, -kLn2Hi, t);
    r = std::fma(n, -kLn2Lo, r);

    const double xx = r * r;
    const double p = std::fma(std::fma(kExpP0, xx, kExpP1), xx, kExpP2);
    const double px = r * p;
    const double q =
        std::fma(std::fma(std::fma(kExpQ0, xx, kExpQ1), xx, kExpQ2), xx, kExpQ3);
    const double e = std::fma(2.0, px / (q - px), 1.0);

    // Two-step 2^n scaling keeps intermediates finite near both ends.
    const double n1 = std::floor(n * 0.5);
    const double n2 = n - n1;
    return e * pow2i(n1) * pow2i(n2);
}

// Precondition: x positive and normal.
inline double log_core(double x) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
    double ed = static_cast<double>(static_cast<std::int64_t>(bits >> 52) - 1022);
    // m in [0.5, 1)
    double m = std::bit_cast<double>((bits & 0x000FFFFFFFFFFFFFull) | 0x3FE0000000000000ull);
    if (m < kSqrtHalf) {
        ed -= 1.0;
        m = m + m;
    }
    const double w = m - 1.0;
    const double z = w * w;

    double pp = std::fma(kLogP0, w, kLogP1);
    pp = std::fma(pp, w, kLogP2);
    pp = std::fma(pp, w, kLogP3);
    pp = std::fma(pp, w, kLogP4);
    pp = std::fma(pp, w, kLogP5);
    double qq = w + kLogQ0;
    qq = std::fma(qq, w, kLogQ1);
    qq = std::fma(qq, w, kLogQ2);
    qq = std::fma(qq, w, kLogQ3);
    qq = std::fma(qq, w, kLogQ4);

    double y = w * (z * (pp / qq));
    y = std::fma(ed, -kLn2LoLog, y);
    y = std::fma(z, -0.5, y);
    double res = w + y;
    res = std::fma(ed, kLn2HiLog, res);
    return res;
}

} // namespace tempest::kernels::detail

#endif
