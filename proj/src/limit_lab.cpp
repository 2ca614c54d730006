#include "tempest/limit_lab.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "tempest/errors.hpp"
#include "tempest/stable.hpp"

namespace tempest {

namespace {

// Static contiguous chunking; item i derives its own substream, so results
// do not depend on the worker count.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    workers = std::max(1, workers);
    if (workers == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t w = std::min<std::size_t>(workers, count);
    std::vector<std::thread> pool;
    pool.reserve(w);
    const std::size_t chunk = (count + w - 1) / w;
    for (std::size_t t = 0; t < w; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

struct TargetFns {
    std::function<double(double)> transform;  // LT at z, or pgf at s
};

// Limit target per Theorem 4.2 / 4.7: the limiting law has stability index
// alpha (the base tail index) and intensity alpha, tempered by q_c in the
// finite-c regime; beta = alpha (infinite) or alpha zeta (zero).
TargetFns make_target(const Regime& regime, const BaseMeasure& base,
                      const TemperingFunction& q, bool discrete) {
    const double alpha = base.alpha();
    TargetFns t;
    switch (regime.kind) {
        case RegimeKind::finite_c: {
            if (discrete) {
                DtsParams dp(alpha, q.rescale(regime.c), alpha);
                t.transform = [dp](double s) { return dts_pgf(dp, s); };
            } else {
                PtsParams pp(alpha, q.rescale(regime.c), alpha);
                t.transform = [pp](double z) {
                    return std::exp(-pts_laplace_exponent(pp, z));
                };
            }
            break;
        }
        case RegimeKind::infinite:
        case RegimeKind::zero: {
            const double beta =
                regime.kind == RegimeKind::infinite ? alpha : alpha * regime.zeta;
            const StableParams sp(alpha, beta);
            if (discrete)
                t.transform = [sp](double s) { return ds_pgf(sp, s); };
            else
                t.transform = [sp](double z) { return ps_laplace(sp, z); };
            break;
        }
    }
    return t;
}

} // namespace

const char* regime_name(RegimeKind k) {
    switch (k) {
        case RegimeKind::finite_c: return "finite_c";
        case RegimeKind::infinite: return "infinite";
        case RegimeKind::zero: return "zero";
    }
    return "?";
}

double EllSchedule::operator()(std::uint64_t n) const {
    return scale * std::pow(static_cast<double>(n), power);
}

Regime classify_regime(const BaseMeasure& base, const TemperingFunction& q,
                       const EllSchedule& ell, std::vector<std::uint64_t> probes) {
    if (probes.size() < 2) probes = {1000, 10000, 100000};
    const NormingSequence norming{base};
    std::vector<double> r;
    for (auto n : probes) r.push_back(norming.a(n) * ell(n));
    const double slope = std::log(r.back() / r.front()) /
                         std::log(static_cast<double>(probes.back()) /
                                  static_cast<double>(probes.front()));
    Regime reg;
    if (std::abs(slope) < 0.05) {
        reg.kind = RegimeKind::finite_c;
        reg.c = r.back();
    } else if (slope > 0.0) {
        reg.kind = RegimeKind::infinite;
    } else {
        reg.kind = RegimeKind::zero;
        reg.zeta = q.limit_at_infinity();
    }
    return reg;
}

double run_row(const ArrayExperiment& exp, RngStream& rng) {
    const NormingSequence norming{exp.base};
    const double a_n = norming.a(exp.n);
    const TemperedMeasure tm = temper(exp.base, exp.q, exp.ell(exp.n));
    if (exp.discrete) {
        if (!exp.base.lattice())
            throw config_error("run_row: discrete mode requires a lattice base measure");
        if (a_n > 1.0) throw config_error("run_row: thinning requires a_n <= 1");
        return static_cast<double>(thin(a_n, tm.sample_sum_int(rng, exp.n), rng));
    }
    return a_n * tm.sample_sum(rng, exp.n);
}

ConvergenceReport run_experiment(const ArrayExperiment& exp) {
    if (exp.m == 0 || exp.n == 0) throw config_error("run_experiment: requires n, m >= 1");
    if (exp.discrete && !exp.base.lattice())
        throw config_error("run_experiment: discrete mode requires a lattice base measure");

    const NormingSequence norming{exp.base};
    const double a_n = norming.a(exp.n);
    const double ell_n = exp.ell(exp.n);
    if (exp.discrete && a_n > 1.0)
        throw config_error("run_experiment: thinning requires a_n <= 1");
    const TemperedMeasure tm = temper(exp.base, exp.q, ell_n);
    const Regime regime =
        exp.regime_override ? *exp.regime_override : classify_regime(exp.base, exp.q, exp.ell);

    std::vector<double> rows(exp.m);
    parallel_for(exp.m, exp.workers, [&](std::size_t i) {
        RngStream rng(exp.seed, 1 + static_cast<std::uint64_t>(i));
        if (exp.discrete) {
            rows[i] = static_cast<double>(thin(a_n, tm.sample_sum_int(rng, exp.n), rng));
        } else {
            rows[i] = a_n * tm.sample_sum(rng, exp.n);
        }
    });

    ConvergenceReport rep;
    rep.regime = regime;
    rep.n = exp.n;
    rep.m = exp.m;
    rep.a_n = a_n;
    rep.ell_n = ell_n;
    rep.c_ell = tm.c_ell();

    if (regime.kind == RegimeKind::zero && regime.zeta == 0.0) {
        // Limit is the point mass at zero; transforms carry no information
        // there, so check the escaping mass directly.
        rep.mode = ConvergenceReport::Mode::mass_at_zero;
        rep.mass_delta = exp.mass_delta;
        rep.mass_limit = exp.mass_limit;
        std::size_t above = 0;
        for (double v : rows) above += (v > exp.mass_delta);
        rep.mass_above_delta = static_cast<double>(above) / static_cast<double>(exp.m);
        rep.pass = rep.mass_above_delta < exp.mass_limit;
        return rep;
    }

    const TargetFns target = make_target(regime, exp.base, exp.q, exp.discrete);
    if (exp.discrete) {
        rep.mode = ConvergenceReport::Mode::pgf;
        std::vector<double> s_grid;
        for (double z : exp.grid) s_grid.push_back(std::exp(-z));
        std::sort(s_grid.begin(), s_grid.end());
        rep.emp = empirical_pgf(std::span<const double>(rows), s_grid);
    } else {
        rep.mode = ConvergenceReport::Mode::laplace;
        rep.emp = empirical_lt(rows, exp.grid);
    }
    rep.gaps = sup_gap(rep.emp, target.transform);
    rep.pass = rep.gaps.in_band_fraction >= exp.min_in_band &&
               rep.gaps.sup_gap < exp.sup_gap_limit;
    return rep;
}

Prop34Result prop34_embedding(const PtsParams& p, const std::vector<double>& a_list,
                              std::size_t m, const std::vector<double>& z_grid,
                              std::uint64_t seed, int workers, double final_gap_limit) {
    if (a_list.empty() || m == 0) throw config_error("prop34_embedding: empty design");
    for (std::size_t i = 1; i < a_list.size(); ++i)
        if (!(a_list[i] < a_list[i - 1]))
            throw config_error("prop34_embedding: a_list must be strictly decreasing");

    Prop34Result res;
    res.a_list = a_list;
    res.final_gap_limit = final_gap_limit;
    auto target = [&](double z) { return std::exp(-pts_laplace_exponent(p, z)); };

    std::uint64_t stream_base = 1;
    for (double a : a_list) {
        // X_a ~ DTS_alpha(q_{1/a}, a^{-alpha} eta); q_{1/a}(x) = q(a x).
        const DtsParams dp(p.alpha, p.q.rescale(1.0 / a), std::pow(a, -p.alpha) * p.eta);
        const DtsSampler sampler(dp);
        std::vector<double> scaled(m);
        parallel_for(m, workers, [&](std::size_t i) {
            RngStream rng(seed, stream_base + static_cast<std::uint64_t>(i));
            scaled[i] = a * static_cast<double>(sampler.sample(rng));
        });
        stream_base += m;
        res.emps.push_back(empirical_lt(scaled, z_grid));
        res.gaps.push_back(sup_gap(res.emps.back(), target));
        res.sup_gaps.push_back(res.gaps.back().sup_gap);
    }

    res.monotone = true;
    for (std::size_t i = 1; i < res.sup_gaps.size(); ++i)
        res.monotone = res.monotone && (res.sup_gaps[i] < res.sup_gaps[i - 1]);
    res.final_gap = res.sup_gaps.back();
    res.pass = res.monotone && res.final_gap < final_gap_limit;
    return res;
}

NaturalScaleResult natural_scale_demo(const BaseMeasure& base, const TemperingFunction& q,
                                      double ell, std::size_t m,
                                      const std::vector<double>& grid, std::uint64_t seed,
                                      int workers) {
    NaturalScaleResult res;
    const double alpha = base.alpha();
    res.n_at = static_cast<std::uint64_t>(std::llround(std::pow(ell, alpha)));
    res.n_past = 100 * res.n_at;

    const NormingSequence norming{base};
    const double c_at = norming.a(res.n_at) * ell;
    const PtsParams target_params(alpha, q.rescale(c_at), alpha);
    auto target = [&](double z) { return std::exp(-pts_laplace_exponent(target_params, z)); };

    const TemperedMeasure tm = temper(base, q, ell);
    auto gap_for = [&](std::uint64_t n, std::uint64_t stream_base) {
        const double a_n = norming.a(n);
        std::vector<double> rows(m);
        parallel_for(m, workers, [&](std::size_t i) {
            RngStream rng(seed, stream_base + static_cast<std::uint64_t>(i));
            rows[i] = a_n * tm.sample_sum(rng, n);
        });
        return sup_gap(empirical_lt(rows, grid), target).sup_gap;
    };
    res.gap_at = gap_for(res.n_at, 1);
    res.gap_past = gap_for(res.n_past, 1 + m);
    res.pass = res.gap_at < res.gap_past;
    return res;
}

ConditionsReport check_array_conditions(const BaseMeasure& base, const TemperingFunction& q,
                                        const EllSchedule& ell,
                                        const std::vector<std::uint64_t>& n_list,
                                        const std::vector<double>& s_grid,
                                        const std::vector<double>& eps_list,
                                        const QuadratureSpec& spec) {
    if (n_list.empty() || s_grid.empty())
        throw config_error("check_array_conditions: empty design");

    ConditionsReport rep;
    rep.regime = classify_regime(base, q, ell);
    const double alpha = base.alpha();
    const NormingSequence norming{base};

    // Limiting Levy tail M((s,inf)).
    auto limit_tail = [&](double s) {
        switch (rep.regime.kind) {
            case RegimeKind::finite_c: {
                const TemperingFunction qc = q.rescale(rep.regime.c);
                if (qc.is_identity()) return std::pow(s, -alpha);
                return alpha * integrate_tail(
                                   [&](double x) {
                                       return qc.eval(x) * std::pow(x, -1.0 - alpha);
                                   },
                                   s, 1.0 + alpha, spec, qc.breakpoints());
            }
            case RegimeKind::infinite:
                return std::pow(s, -alpha);
            case RegimeKind::zero:
                return rep.regime.zeta * std::pow(s, -alpha);
        }
        return 0.0;
    };

    for (auto n : n_list) {
        const double a_n = norming.a(n);
        const TemperedMeasure tm = temper(base, q, ell(n), spec);
        for (double s : s_grid) {
            ConditionRow row;
            row.n = n;
            row.point = s;
            row.value = static_cast<double>(n) * tm.tail(s / a_n);
            row.limit = limit_tail(s);
            rep.tail_rows.push_back(row);
        }
        for (double eps : eps_list) {
            ConditionRow row;
            row.n = n;
            row.point = eps;
            row.value = static_cast<double>(n) * a_n * tm.truncated_mean(eps / a_n);
            row.limit = std::pow(eps, 1.0 - alpha) * alpha / (1.0 - alpha);
            rep.mean_rows.push_back(row);
        }
    }

    // Trend: per point, |value - limit| at the largest n must not exceed
    // 1.25x the gap at the smallest n, and the final relative gap must be
    // small.
    auto trend_ok = [&](const std::vector<ConditionRow>& rows, std::size_t points,
                        double final_rel_limit) {
        bool ok = true;
        const std::size_t levels = n_list.size();
        for (std::size_t j = 0; j < points; ++j) {
            const ConditionRow& first = rows[j];
            const ConditionRow& last = rows[(levels - 1) * points + j];
            const double g0 = std::abs(first.value - first.limit);
            const double g1 = std::abs(last.value - last.limit);
            const double scale = std::max(std::abs(last.limit), 1e-300);
            ok = ok && (g1 <= 1.25 * g0 + 1e-12) && (g1 / scale < final_rel_limit ||
                                                     (last.limit == 0.0 && g1 < 1e-12));
        }
        return ok;
    };
    rep.tail_trend_ok = trend_ok(rep.tail_rows, s_grid.size(), 0.02);
    rep.mean_trend_ok = trend_ok(rep.mean_rows, eps_list.size(), 0.02);
    rep.pass = rep.tail_trend_ok && rep.mean_trend_ok;
    return rep;
}

} // namespace tempest
