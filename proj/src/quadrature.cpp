#include "tempest/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace tempest {

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0)) throw std::domain_error("QuadratureSpec: rel_tol must be > 0");
    if (!(abs_tol > 0.0)) throw std::domain_error("QuadratureSpec: abs_tol must be > 0");
    if (max_subdivisions < 1) throw std::domain_error("QuadratureSpec: max_subdivisions must be >= 1");
}

namespace {

// 15-point Kronrod nodes/weights on [-1,1] and the embedded 7-point Gauss
// weights (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double fv1[7], fv2[7];
    double result_g = fc * kWg[3];
    double result_k = fc * kWgk[7];
    double resabs = std::abs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        fv1[j] = f(c - x);
        fv2[j] = f(c + x);
        result_k += kWgk[j] * (fv1[j] + fv2[j]);
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) result_g += kWg[j / 2] * (fv1[j] + fv2[j]);
    }
    const double mean = 0.5 * result_k;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    // QUADPACK error heuristic
    double err = std::abs((result_k - result_g) * h);
    resasc *= std::abs(h);
    resabs *= std::abs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(err, eps50 * resabs);
    return Panel{a, b, result_k * h, err};
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec, const std::vector<double>& breakpoints) {
    spec.validate();
    if (a == b) return 0.0;
    if (!(a < b)) throw std::domain_error("integrate: requires a < b");

    std::vector<double> cuts;
    cuts.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Panel> queue;
    double total = 0.0, total_err = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Panel p = gk15(f, cuts[i], cuts[i + 1]);
        total += p.value;
        total_err += p.err;
        queue.push(p);
    }

    int splits = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (splits >= spec.max_subdivisions)
            throw quadrature_error("integrate: max_subdivisions reached", total, total_err);
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw quadrature_error("integrate: interval too small to split", total, total_err);
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
        ++splits;
    }
    return total;
}

double levy_integral(const std::function<double(double)>& f,
                     double sing_exponent, double decay_exponent,
                     const QuadratureSpec& spec, const std::vector<double>& breakpoints) {
    if (!(sing_exponent < 1.0))
        throw std::domain_error("levy_integral: singular exponent must be < 1");
    if (!(decay_exponent > 1.0))
        throw std::domain_error("levy_integral: decay exponent must be > 1");
    const double s0 = std::max(sing_exponent, 0.0);

    // (0,1]: x = u^p with p = 1/(1-s0); du-integrand is bounded at 0.
    const double p = 1.0 / (1.0 - s0);
    std::vector<double> head_cuts;
    for (double x : breakpoints)
        if (x > 0.0 && x < 1.0) head_cuts.push_back(std::pow(x, 1.0 / p));
    auto head = [&](double u) {
        const double x = std::pow(u, p);
        return f(x) * p * std::pow(u, p - 1.0);
    };
    const double i_head = integrate(head, 0.0, 1.0, spec, head_cuts);

    // [1,inf): x = v^{-r} with r = 1/(d-1).
    const double r = 1.0 / (decay_exponent - 1.0);
    std::vector<double> tail_cuts;
    for (double x : breakpoints)
        if (x > 1.0) tail_cuts.push_back(std::pow(x, -1.0 / r));
    auto tail = [&](double v) {
        const double x = std::pow(v, -r);
        return f(x) * r * std::pow(v, -r - 1.0);
    };
    const double i_tail = integrate(tail, 0.0, 1.0, spec, tail_cuts);

    return i_head + i_tail;
}

double integrate_tail(const std::function<double(double)>& f, double lo,
                      double decay_exponent, const QuadratureSpec& spec,
                      const std::vector<double>& breakpoints) {
    if (!(lo > 0.0)) throw std::domain_error("integrate_tail: requires lo > 0");
    if (!(decay_exponent > 1.0))
        throw std::domain_error("integrate_tail: decay exponent must be > 1");
    // x = lo * v^{-r} maps (0,1] onto [lo,inf).
    const double r = 1.0 / (decay_exponent - 1.0);
    std::vector<double> cuts;
    for (double x : breakpoints)
        if (x > lo) cuts.push_back(std::pow(x / lo, -1.0 / r));
    auto g = [&](double v) {
        const double x = lo * std::pow(v, -r);
        return f(x) * lo * r * std::pow(v, -r - 1.0);
    };
    return integrate(g, 0.0, 1.0, spec, cuts);
}

} // namespace tempest
