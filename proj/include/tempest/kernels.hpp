#ifndef TEMPEST_KERNELS_HPP
#define TEMPEST_KERNELS_HPP

#include <cstddef>

namespace tempest::kernels {

// Batch kernels for the hot array loops: inverse-cdf powers, tempering
// exponentials, and transform reductions. Each operation has a scalar
// reference implementation and an AVX2 variant selected at runtime.
//
// The two variants are bit-identical by construction: they share one
// polynomial algorithm (Cephes-style exp/log with explicit FMA), and the
// reductions fix a 4-lane accumulation order
//
//   acc[j] += v[4k + j];  combined = (acc0 + acc1) + (acc2 + acc3);
//   then the n % 4 tail elements are added to `combined` in index order,
//
// which the scalar reference emulates. Equivalence tests assert exact
// equality, so a run produces the same bytes whichever variant dispatch
// picks.
//
// Preconditions: pow_c requires normal positive inputs (x >= 1e-300);
// exp_ax accepts any double and follows IEEE special-case conventions.
struct Ops {
    const char* name;

    /// out[i] = exp(a * x[i])
    void (*exp_ax)(double a, const double* x, double* out, std::size_t n);

    /// out[i] = x[i]^c for x[i] > 0 (computed as exp(c * log x))
    void (*pow_c)(double c, const double* x, double* out, std::size_t n);

    /// *sum = sum_i v[i], *sumsq = sum_i v[i]^2, in the lane order above.
    void (*sum_sq)(const double* v, std::size_t n, double* sum, double* sumsq);
};

/// The dispatched implementation: AVX2 when the CPU supports AVX2+FMA,
/// otherwise scalar. Environment variable TEMPEST_KERNELS=scalar|avx2
/// overrides (unknown or unavailable names fall back to scalar).
const Ops& active();

const Ops& scalar_ops();

/// AVX2 variant, or nullptr when not compiled in / not supported.
const Ops* avx2_ops();

/// Test hook: force a variant by name ("scalar" / "avx2"). Returns false if
/// the variant is unavailable. Not thread-safe; call before spawning workers.
bool force_variant(const char* name);

} // namespace tempest::kernels

#endif
