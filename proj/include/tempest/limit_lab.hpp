#ifndef TEMPEST_LIMIT_LAB_HPP
#define TEMPEST_LIMIT_LAB_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tempest/diagnostics.hpp"
#include "tempest/heavy_tails.hpp"
#include "tempest/tempered.hpp"

namespace tempest {

// The three limit regimes for a_n ell_n: -> c in (0,inf), -> inf, -> 0.
enum class RegimeKind { finite_c, infinite, zero };

struct Regime {
    RegimeKind kind = RegimeKind::finite_c;
    double c = 1.0;     // finite_c limit of a_n ell_n
    double zeta = 0.0;  // lim q at infinity (zero regime)
};

const char* regime_name(RegimeKind k);

// ell_n = scale * n^power.
struct EllSchedule {
    double scale = 1.0;
    double power = 0.0;
    double operator()(std::uint64_t n) const;
};

/// Classifies the regime from the trend of a_n ell_n over probe sizes
/// (default 10^3, 10^4, 10^5): log-slope within +-0.05 of zero is finite_c
/// with c read off at the largest probe.
Regime classify_regime(const BaseMeasure& base, const TemperingFunction& q,
                       const EllSchedule& ell,
                       std::vector<std::uint64_t> probes = {1000, 10000, 100000});

// One triangular-array experiment: m replications of row sums of n iid draws
// from mu_{ell_n}, scaled by a_n (continuous) or thinned by a_n (discrete).
struct ArrayExperiment {
    ArrayExperiment(BaseMeasure base_, TemperingFunction q_, EllSchedule ell_)
        : base(std::move(base_)), q(std::move(q_)), ell(ell_) {}

    BaseMeasure base;
    TemperingFunction q;
    EllSchedule ell;
    std::uint64_t n = 10000;
    std::size_t m = 10000;
    bool discrete = false;
    std::uint64_t seed = 1;
    std::vector<double> grid = {0.1, 0.25, 0.5, 1.0, 2.0, 5.0};  // z; pgf uses s = e^{-z}
    double sup_gap_limit = 0.015;
    double min_in_band = 0.95;
    double mass_delta = 0.05;   // zero regime with zeta = 0: point-mass check
    double mass_limit = 0.02;
    int workers = 1;
    std::optional<Regime> regime_override;
};

struct ConvergenceReport {
    enum class Mode { laplace, pgf, mass_at_zero };
    Mode mode = Mode::laplace;
    Regime regime;
    std::uint64_t n = 0;
    std::size_t m = 0;
    double a_n = 0.0;
    double ell_n = 0.0;
    double c_ell = 0.0;
    EmpiricalTransform emp;  // grid is z (laplace) or s (pgf)
    GapReport gaps;
    double mass_above_delta = 0.0;
    double mass_delta = 0.0;
    double mass_limit = 0.0;
    bool pass = false;
};

/// One replication (convenience; run_experiment shares the per-n context
/// across replications instead of rebuilding it).
double run_row(const ArrayExperiment& exp, RngStream& rng);

ConvergenceReport run_experiment(const ArrayExperiment& exp);

// DTS -> PTS embedding: X_a ~ DTS_alpha(q_{1/a}, a^{-alpha} eta), compare the
// Laplace transform of a X_a against the PTS target as a decreases.
struct Prop34Result {
    std::vector<double> a_list;
    std::vector<EmpiricalTransform> emps;
    std::vector<GapReport> gaps;
    std::vector<double> sup_gaps;
    bool monotone = false;
    double final_gap = 0.0;
    double final_gap_limit = 0.0;
    bool pass = false;
};

Prop34Result prop34_embedding(const PtsParams& p, const std::vector<double>& a_list,
                              std::size_t m, const std::vector<double>& z_grid,
                              std::uint64_t seed, int workers = 1,
                              double final_gap_limit = 0.01);

// Fixed tempering scale ell: the sum of n ~ ell^alpha draws should sit closer
// to the PTS target than the sum of n ~ 100 ell^alpha draws.
struct NaturalScaleResult {
    std::uint64_t n_at = 0;
    std::uint64_t n_past = 0;
    double gap_at = 0.0;
    double gap_past = 0.0;
    bool pass = false;
};

NaturalScaleResult natural_scale_demo(const BaseMeasure& base, const TemperingFunction& q,
                                      double ell, std::size_t m,
                                      const std::vector<double>& grid, std::uint64_t seed,
                                      int workers = 1);

// Numerical check of the triangular-array conditions: n P(a_n X > s) against
// the limiting Levy tail, and the vanishing truncated means.
struct ConditionRow {
    std::uint64_t n = 0;
    double point = 0.0;  // s (tail rows) or eps (mean rows)
    double value = 0.0;
    double limit = 0.0;
};

struct ConditionsReport {
    Regime regime;
    std::vector<ConditionRow> tail_rows;
    std::vector<ConditionRow> mean_rows;
    bool tail_trend_ok = false;
    bool mean_trend_ok = false;
    bool pass = false;
};

ConditionsReport check_array_conditions(const BaseMeasure& base, const TemperingFunction& q,
                                        const EllSchedule& ell,
                                        const std::vector<std::uint64_t>& n_list,
                                        const std::vector<double>& s_grid,
                                        const std::vector<double>& eps_list = {1.0, 0.1, 0.01},
                                        const QuadratureSpec& spec = {});

} // namespace tempest

#endif
