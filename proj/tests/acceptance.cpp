// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// fails.
//
//   acceptance <path-to-tempest-cli> <path-to-scenarios-dir>
//
// Criteria (fixed tolerances, fixed seeds):
//  1 closed-form Laplace-exponent oracle (quadrature vs formula)
//  2 sampler/transform agreement for PS, DS, PTS(exp), PTS(trunc), DTS(exp)
//  3 DTS pmf double oracle (pgf reconstruction + sampler histogram)
//  4 stable domain of attraction (scaled pareto sums)
//  5 tempered triangular arrays, all three regimes (continuous)
//  6 tempered triangular arrays, all three regimes (thinned, lattice)
//  7 DTS -> PTS small-scale embedding
//  8 triangular-array condition checker (exact tails + truncated means)
//  9 CLI determinism across reruns and worker counts

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "tempest/diagnostics.hpp"
#include "tempest/limit_lab.hpp"
#include "tempest/numerics.hpp"
#include "tempest/stable.hpp"
#include "tempest/tempered.hpp"

using namespace tempest;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20260809;
const std::vector<double> kZGrid = {0.1, 0.25, 0.5, 1.0, 2.0, 5.0};

int g_failures = 0;

void criterion(int id, const std::string& name, const std::function<bool(std::string&)>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                secs, detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

std::vector<double> s_grid_of(const std::vector<double>& zs) {
    std::vector<double> s;
    for (double z : zs) s.push_back(std::exp(-z));
    std::sort(s.begin(), s.end());
    return s;
}

bool c1_exponent_oracle(std::string& detail) {
    double worst_exp = 0.0, worst_id = 0.0;
    for (double alpha : {0.3, 0.5, 0.7}) {
        for (double a : {0.5, 1.0, 2.0}) {
            for (double z : {0.1, 1.0, 5.0}) {
                const PtsParams p(alpha, TemperingFunction::exponential(a), 0.5);
                const double got = pts_laplace_exponent(p, z);
                const double want = 0.5 * gamma_fn(1.0 - alpha) / alpha *
                                    (std::pow(a + z, alpha) - std::pow(a, alpha));
                worst_exp = std::max(worst_exp, std::abs(got / want - 1.0));
            }
        }
    }
    for (double alpha : {0.3, 0.5, 0.7}) {
        for (double z : {0.1, 1.0, 5.0}) {
            const PtsParams p(alpha, TemperingFunction::identity(), 0.5);
            const double got = pts_laplace_exponent(p, z);
            const double want = 0.5 * gamma_fn(1.0 - alpha) / alpha * std::pow(z, alpha);
            worst_id = std::max(worst_id, std::abs(got / want - 1.0));
        }
    }
    std::ostringstream os;
    os << "rel err: exponential " << worst_exp << ", identity " << worst_id;
    detail = os.str();
    return worst_exp < 1e-8 && worst_id < 1e-10;
}

bool c2_sampler_transform(std::string& detail) {
    const std::size_t m = 100000;
    std::ostringstream os;
    bool ok = true;

    auto check_lt = [&](const char* name, auto&& draw,
                        const std::function<double(double)>& target) {
        RngStream rng(kSeed);
        std::vector<double> xs(m);
        for (auto& x : xs) x = draw(rng);
        const auto gap = sup_gap(empirical_lt(xs, kZGrid), target);
        os << name << " in-band " << gap.in_band_fraction << "; ";
        ok = ok && gap.in_band_fraction >= 0.95;
    };
    auto check_pgf = [&](const char* name, auto&& draw,
                         const std::function<double(double)>& target) {
        RngStream rng(kSeed);
        std::vector<double> xs(m);
        for (auto& x : xs) x = static_cast<double>(draw(rng));
        const auto gap = sup_gap(empirical_pgf(std::span<const double>(xs), s_grid_of(kZGrid)),
                                 target);
        os << name << " in-band " << gap.in_band_fraction << "; ";
        ok = ok && gap.in_band_fraction >= 0.95;
    };

    const StableParams sp(0.5, 0.5);
    check_lt("PS", [&](RngStream& r) { return ps_sample(sp, r); },
             [&](double z) { return ps_laplace(sp, z); });
    check_pgf("DS", [&](RngStream& r) { return ds_sample(sp, r); },
              [&](double s) { return ds_pgf(sp, s); });

    const PtsParams pe(0.5, TemperingFunction::exponential(1.0), 0.5);
    const PtsSampler pes(pe);
    check_lt("PTS(exp)", [&](RngStream& r) { return pes.sample(r); },
             [&](double z) { return std::exp(-pts_laplace_exponent(pe, z)); });

    const PtsParams pt(0.5, TemperingFunction::truncation(1.0), 0.5);
    const PtsSampler pts_series(pt, 2e-4);
    check_lt("PTS(trunc)", [&](RngStream& r) { return pts_series.sample(r); },
             [&](double z) { return std::exp(-pts_laplace_exponent(pt, z)); });

    const DtsParams de(0.5, TemperingFunction::exponential(1.0), 0.5);
    const DtsSampler des(de);
    check_pgf("DTS(exp)", [&](RngStream& r) { return des.sample(r); },
              [&](double s) { return dts_pgf(de, s); });

    detail = os.str();
    return ok;
}

bool c3_pmf_double_oracle(std::string& detail) {
    const DtsParams p(0.5, TemperingFunction::identity(), 0.5);
    const std::size_t n_max = 1000;
    const auto res = dts_pmf(p, n_max);
    std::ostringstream os;

    const double p0_want = std::exp(-std::sqrt(std::numbers::pi));
    const double p0_err = std::abs(res.p[0] - p0_want);
    os << "p0 err " << p0_err;
    bool ok = p0_err < 1e-8;

    const StableParams sp(0.5, 0.5);
    double worst_pgf = 0.0;
    for (double s : {0.25, 0.5, 0.75}) {
        double acc = 0.0;
        for (std::size_t n = 0; n < res.p.size(); ++n)
            acc += res.p[n] * std::pow(s, static_cast<double>(n));
        worst_pgf = std::max(worst_pgf, std::abs(acc - ds_pgf(sp, s)));
    }
    os << "; pgf reconstruction err " << worst_pgf;
    ok = ok && worst_pgf < 1e-6;

    // sampler histogram, 1e6 draws, cells {0..100, >100}. A perfect sampler
    // over 1000 single-integer cells already has E[TV] ~ 0.0053 at this m,
    // so the comparison partition stops where the pmf still carries real
    // mass per cell.
    const std::size_t m = 1000000;
    const std::size_t cells = 100;
    RngStream rng(kSeed + 3);
    std::vector<double> hist(cells + 2, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        hist[std::min<std::uint64_t>(ds_sample(sp, rng), cells + 1)] += 1.0;
    double tv = 0.0;
    double head_mass = 0.0;
    for (std::size_t k = 0; k <= cells; ++k) {
        tv += std::abs(hist[k] / static_cast<double>(m) - res.p[k]);
        head_mass += res.p[k];
    }
    tv += std::abs(hist[cells + 1] / static_cast<double>(m) - (1.0 - head_mass));
    tv *= 0.5;
    os << "; TV " << tv;
    ok = ok && tv < 0.005;

    detail = os.str();
    return ok;
}

ArrayExperiment base_experiment(BaseMeasure base, TemperingFunction q, EllSchedule ell,
                                bool discrete, std::uint64_t n = 10000) {
    ArrayExperiment e(std::move(base), std::move(q), ell);
    e.n = n;
    e.m = 10000;
    e.discrete = discrete;
    e.seed = kSeed;
    e.grid = kZGrid;
    return e;
}

bool c4_stable_doa(std::string& detail) {
    auto e = base_experiment(BaseMeasure::pareto(0.5, 1.0), TemperingFunction::identity(),
                             {1.0, 0.0}, false);
    const auto rep = run_experiment(e);
    std::ostringstream os;
    os << "in-band " << rep.gaps.in_band_fraction << ", sup gap " << rep.gaps.sup_gap;
    detail = os.str();
    return rep.gaps.in_band_fraction >= 0.95 && rep.gaps.sup_gap < 0.015;
}

bool run_regimes(bool discrete, std::string& detail) {
    const auto base = discrete ? BaseMeasure::discrete_pareto(0.5)
                               : BaseMeasure::pareto(0.5, 1.0);
    std::ostringstream os;
    bool ok = true;

    auto finite = base_experiment(base, TemperingFunction::exponential(1.0), {1.0, 2.0},
                                  discrete);
    const auto rf = run_experiment(finite);
    os << "finite_c in-band " << rf.gaps.in_band_fraction << " sup " << rf.gaps.sup_gap
       << "; ";
    ok = ok && rf.pass && rf.regime.kind == RegimeKind::finite_c;

    auto infinite = base_experiment(base, TemperingFunction::exponential(1.0), {1.0, 4.0},
                                    discrete);
    const auto ri = run_experiment(infinite);
    os << "infinite in-band " << ri.gaps.in_band_fraction << " sup " << ri.gaps.sup_gap
       << "; ";
    ok = ok && ri.pass && ri.regime.kind == RegimeKind::infinite;

    // floor regime runs further along the sequence: at n = 1e4 the finite-n
    // bias at z = 5 exceeds the 3SE band for every power-law schedule (the
    // c_ell and transition-zone biases cross at ~0.009); n = 1e5 brings it
    // to ~1 SE.
    auto floor = base_experiment(base, TemperingFunction::exp_floor(0.4, 1.0), {1.0, 1.0},
                                 discrete, 100000);
    const auto rz = run_experiment(floor);
    os << "zero(floor) in-band " << rz.gaps.in_band_fraction << " sup " << rz.gaps.sup_gap
       << "; ";
    ok = ok && rz.pass && rz.regime.kind == RegimeKind::zero;

    auto vanish = base_experiment(base, TemperingFunction::exponential(1.0), {1.0, 1.0},
                                  discrete);
    const auto rv = run_experiment(vanish);
    os << "zero(exp) mass " << rv.mass_above_delta;
    ok = ok && rv.pass && rv.mode == ConvergenceReport::Mode::mass_at_zero;

    detail = os.str();
    return ok;
}

bool c7_embedding(std::string& detail) {
    const PtsParams p(0.5, TemperingFunction::exponential(1.0), 0.5);
    const auto res = prop34_embedding(p, {1.0, 0.1, 0.01}, 100000, kZGrid, kSeed, 1, 0.01);
    std::ostringstream os;
    os << "gaps";
    for (double g : res.sup_gaps) os << " " << g;
    detail = os.str();
    return res.pass;
}

bool c8_conditions(std::string& detail) {
    const auto rep = check_array_conditions(
        BaseMeasure::pareto(0.5, 1.0), TemperingFunction::identity(), {1.0, 0.0},
        {1000, 10000, 100000, 1000000}, kZGrid, {1.0, 0.1, 0.01});
    double worst_tail = 0.0;
    for (const auto& row : rep.tail_rows)
        worst_tail = std::max(worst_tail, std::abs(row.value - std::pow(row.point, -0.5)));
    double mean_rel = 0.0;
    for (const auto& row : rep.mean_rows) {
        if (row.point == 0.01 && row.n == 1000000)
            mean_rel = std::abs(row.value / (std::pow(0.01, 0.5) * 1.0) - 1.0);
    }
    std::ostringstream os;
    os << "tail err " << worst_tail << ", mean rel err at eps=.01 " << mean_rel;
    detail = os.str();
    return worst_tail < 1e-12 && mean_rel < 0.01;
}

// criterion 9 helpers
std::string g_cli;
fs::path g_scenarios;

bool same_bytes(const fs::path& a, const fs::path& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str();
}

bool c9_cli_determinism(std::string& detail) {
    struct Run {
        const char* command;
        const char* scenario;
        std::vector<const char*> files;
    };
    const std::vector<Run> runs = {
        {"sample", "sample_pts_exponential.json", {"samples.csv"}},
        {"transform", "transform_dts_exponential.json", {"transform.csv"}},
        {"pmf", "pmf_dts_exponential.json", {"pmf.csv"}},
        {"limit", "determinism_limit_smoke.json", {"report.csv", "report.json"}},
        {"conditions", "conditions_truncation.json", {"conditions.csv"}},
    };

    const fs::path work = fs::temp_directory_path() / "tempest_acceptance_c9";
    fs::remove_all(work);
    std::ostringstream os;

    for (const auto& run : runs) {
        std::vector<fs::path> dirs;
        for (int workers : {1, 4}) {
            for (int rep = 0; rep < 2; ++rep) {
                fs::path out = work / (std::string(run.command) + "_w" +
                                       std::to_string(workers) + "_r" + std::to_string(rep));
                std::ostringstream cmd;
                cmd << g_cli << " " << run.command << " --scenario "
                    << (g_scenarios / run.scenario) << " --seed 4242 --out " << out
                    << " --workers " << workers << " > /dev/null 2>&1";
                const int rc = std::system(cmd.str().c_str());
                if (rc == -1 || WEXITSTATUS(rc) >= 2) {
                    os << run.command << " exited with " << WEXITSTATUS(rc) << "; ";
                    detail = os.str();
                    return false;
                }
                dirs.push_back(out);
            }
        }
        for (const char* file : run.files) {
            for (std::size_t d = 1; d < dirs.size(); ++d) {
                if (!same_bytes(dirs[0] / file, dirs[d] / file)) {
                    os << run.command << "/" << file << " differs between runs; ";
                    detail = os.str();
                    return false;
                }
            }
        }
        os << run.command << " ok; ";
    }
    detail = os.str();
    return true;
}

} // namespace

int main(int argc, char** argv) {
    if (argc >= 2) g_cli = argv[1];
    if (argc >= 3) g_scenarios = argv[2];

    criterion(1, "closed-form Laplace exponent oracle", c1_exponent_oracle);
    criterion(2, "sampler-transform agreement (PS, DS, PTS, DTS)", c2_sampler_transform);
    criterion(3, "DTS pmf double oracle", c3_pmf_double_oracle);
    criterion(4, "stable domain of attraction (Lemma 4.1 design)", c4_stable_doa);
    criterion(5, "tempered triangular arrays, continuous regimes",
              [](std::string& d) { return run_regimes(false, d); });
    criterion(6, "tempered triangular arrays, thinned lattice regimes",
              [](std::string& d) { return run_regimes(true, d); });
    criterion(7, "DTS -> PTS embedding (decreasing lattice scale)", c7_embedding);
    criterion(8, "triangular-array condition checker", c8_conditions);
    if (!g_cli.empty() && !g_scenarios.empty()) {
        criterion(9, "CLI determinism across reruns and workers", c9_cli_determinism);
    } else {
        std::printf("[FAIL] criterion 9: CLI determinism -- cli path or scenario dir not "
                    "provided\n");
        ++g_failures;
    }

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
