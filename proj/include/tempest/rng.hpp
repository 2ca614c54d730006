#ifndef TEMPEST_RNG_HPP
#define TEMPEST_RNG_HPP

#include <cstdint>

namespace tempest {

// Seedable pseudo-random stream (xoshiro256++). Same seed => identical draw
// sequence. Never global: every sampler takes the stream it should use, and
// independent substreams are derived from a root seed plus an index so that
// parallel replications are reproducible regardless of scheduling.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) { reseed(seed, 0); }
    RngStream(std::uint64_t seed, std::uint64_t stream_index) { reseed(seed, stream_index); }

    void reseed(std::uint64_t seed, std::uint64_t stream_index);

    std::uint64_t next_u64();

    /// Uniform on the open interval (0,1); never returns 0 or 1, so logs and
    /// negative powers of the result are always finite.
    double uniform();

    /// Exponential(1).
    double exponential();

    /// Poisson(lambda), lambda >= 0. Inversion below lambda = 10, Hormann's
    /// PTRS transformed rejection above; exact for all lambda, no normal
    /// approximation. Results above 2^62 saturate.
    std::uint64_t poisson(double lambda);

    /// Binomial(n, p). Waiting-time count when the rare-side mean is small,
    /// Hormann's BTRD otherwise; exact for all n representable in a double.
    std::uint64_t binomial(std::uint64_t n, double p);

private:
    std::uint64_t poisson_small(double lambda);
    std::uint64_t poisson_ptrs(double lambda);
    std::uint64_t binomial_waiting(std::uint64_t n, double p);
    std::uint64_t binomial_btrd(std::uint64_t n, double p);

    std::uint64_t s_[4];
};

} // namespace tempest

#endif
