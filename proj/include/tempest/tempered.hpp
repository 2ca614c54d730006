#ifndef TEMPEST_TEMPERED_HPP
#define TEMPEST_TEMPERED_HPP

#include <cstdint>
#include <vector>

#include "tempest/quadrature.hpp"
#include "tempest/rng.hpp"
#include "tempest/stable.hpp"
#include "tempest/tempering.hpp"

namespace tempest {

// PTS_alpha(q, eta, b): positive infinitely divisible law with Levy measure
// eta q(x) x^{-1-alpha} dx and drift b >= 0.
struct PtsParams {
    double alpha;
    TemperingFunction q;
    double eta;
    double drift = 0.0;

    PtsParams(double alpha_, TemperingFunction q_, double eta_, double drift_ = 0.0);
};

// DTS_alpha(q, eta): a rate-r Poisson process evaluated at an independent
// PTS_alpha(q, eta, b) time. rate != 1 folds into (q_r, r^alpha eta); a
// drift b contributes an independent Poisson(b r).
struct DtsParams {
    double alpha;
    TemperingFunction q;
    double eta;
    double rate = 1.0;
    double drift = 0.0;

    DtsParams(double alpha_, TemperingFunction q_, double eta_, double rate_ = 1.0,
              double drift_ = 0.0);

    /// Equivalent rate-1 parameters (q_r, r^alpha eta, b r).
    DtsParams folded() const;
};

/// psi(z) = b z + eta int_0^inf (1 - e^{-zx}) q(x) x^{-1-alpha} dx, z >= 0.
double pts_laplace_exponent(const PtsParams& p, double z, const QuadratureSpec& spec = {});

// Draws from PTS_alpha(q, eta, b). The sampling path is fixed at
// construction:
//   - point mass (eta = 0),
//   - exact stable draw (q identity),
//   - exact rejection of stable draws (q exponential, when the predicted
//     acceptance rate exp(-eta Gamma(1-alpha)/alpha a^alpha) >= 0.01),
//   - truncated jump series otherwise: subordinator jumps at intensity
//     eta K x^{-1-alpha} thinned by q/K, jumps below eps replaced by their
//     mean; eps is chosen so the discarded remainder's standard deviation
//     is below `tol`, and that bound is reported as bias_bound().
class PtsSampler {
public:
    enum class Path { point_mass, stable_exact, exponential_rejection, series };

    explicit PtsSampler(PtsParams p, double tol = 2e-4, const QuadratureSpec& spec = {});

    double sample(RngStream& rng) const;
    double operator()(RngStream& rng) const { return sample(rng); }

    Path path() const { return path_; }
    /// Standard deviation bound on the truncated small-jump remainder
    /// (zero for the exact paths).
    double bias_bound() const { return bias_bound_; }

private:
    PtsParams p_;
    Path path_;
    double eps_ = 0.0;          // series truncation level
    double compensation_ = 0.0; // mean of discarded small jumps
    double bias_bound_ = 0.0;
    double level_scale_ = 0.0;  // (alpha / (eta K))^{-1/alpha} jump scale
};

/// One-off convenience wrapper around PtsSampler.
double pts_sample(const PtsParams& p, RngStream& rng, double tol = 2e-4);

/// E[s^X] for X ~ DTS, s in (0,1]: exp(-psi(r(1-s))) including the drift term.
double dts_pgf(const DtsParams& p, double s, const QuadratureSpec& spec = {});

class DtsSampler {
public:
    explicit DtsSampler(DtsParams p, double tol = 2e-4, const QuadratureSpec& spec = {});
    std::uint64_t sample(RngStream& rng) const;
    std::uint64_t operator()(RngStream& rng) const { return sample(rng); }
    const PtsSampler& subordinator() const { return pts_; }

private:
    double rate_;
    PtsSampler pts_;
};

std::uint64_t dts_sample(const DtsParams& p, RngStream& rng, double tol = 2e-4);

// Levy measure of DTS on {1,2,...}: lambda_k = eta int_0^inf e^{-x} x^k / k!
// q(x) x^{-1-alpha} dx (after rate folding). For q == 1 this is
// eta Gamma(k-alpha)/k!.
struct LevyWeights {
    std::vector<double> lambda; // lambda[k-1] is the weight of atom k
    double total_mass = 0.0;    // Lambda = sum_k lambda_k = psi(r) + b r, by quadrature
    double tail_mass = 0.0;     // Lambda - sum of computed lambda_k
    std::size_t k_max = 0;
};

/// k_max = 0 selects k_max automatically: grow until lambda_k * k < 1e-14,
/// capped at 1e5.
LevyWeights dts_levy_weights(const DtsParams& p, std::size_t k_max,
                             const QuadratureSpec& spec = {});

// pmf of DTS by the compound-Poisson recursion
//   p_0 = exp(-Lambda),  p_n = (1/n) sum_{k<=n} k lambda_k p_{n-k}.
// Lambda comes from the Laplace exponent, not from truncating the lambda
// series, so p_n is exact for n <= n_max and the reported tail_prob
// 1 - sum p_n is the true mass above n_max.
struct PmfResult {
    std::vector<double> p;   // p[0..n_max]
    double tail_prob = 0.0;  // 1 - sum p
    LevyWeights weights;
};

PmfResult dts_pmf(const DtsParams& p, std::size_t n_max, const QuadratureSpec& spec = {});

/// Thinning gamma o x: Binomial(x, gamma). gamma outside [0,1] is a domain
/// error; thin(., 0, .) == 0.
std::uint64_t thin(double gamma, std::uint64_t x, RngStream& rng);

} // namespace tempest

#endif
