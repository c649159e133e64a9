// SPDX-License-Identifier: Apache-2.0
#include "qzeno/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "qzeno/errors.hpp"

namespace qzeno::quad {

namespace {

// Gauss-Kronrod (7, 15) on [-1, 1].  Positive Kronrod abscissae; even-index
// entries are also Gauss points.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526, 0.949107912342758524526189684048,
    0.864864423359769072789712788641, 0.741531185599394439863864773281,
    0.586087235467691130294144838259, 0.405845151377397166906606412077,
    0.207784955007898467600689403773, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008059, 0.063092092629978553290700663189,
    0.104790010322250183839876322542, 0.140653259715525918745189590510,
    0.169004726639267902826583426599, 0.190350578064785409913256402421,
    0.204432940075298892414161999234, 0.209482141084727828012999174892};
constexpr double kWg[4] = {
    0.129484966168869693270611432679, 0.279705391489276667901467771424,
    0.381830050505118944950369775489, 0.417959183673469387755102040816};

struct Panel {
    double a, b;
    double value;
    double error;
    double resabs;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    double resabs = kWgk[7] * std::abs(fc);

    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        const double fsum = f1 + f2;
        k15 += kWgk[i] * fsum;
        resabs += kWgk[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) g7 += kWg[i / 2] * fsum;
    }
    k15 *= half;
    g7 *= half;
    resabs *= half;

    double err = std::abs(k15 - g7);
    const double scaled = std::pow(200.0 * err, 1.5);
    if (scaled < err) err = scaled;
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * resabs);
    return {a, b, k15, err, resabs};
}

struct WorstFirst {
    bool operator()(const Panel& lhs, const Panel& rhs) const
    {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.a > rhs.a; // ties: leftmost panel first
    }
};

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const IntegrateOptions& opt)
{
    if (!(a <= b)) throw domain_error("integrate: requires a <= b");
    if (!(opt.tol > 0.0)) throw domain_error("integrate: tolerance must be positive");
    if (a == b) return {0.0, 0.0, 0};

    std::priority_queue<Panel, std::vector<Panel>, WorstFirst> heap;
    const std::size_t n0 = std::max<std::size_t>(1, opt.initial_panels);
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < n0; ++i) {
        const double lo = a + (b - a) * static_cast<double>(i) / static_cast<double>(n0);
        const double hi = (i + 1 == n0) ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n0);
        heap.push(evaluate_panel(f, lo, hi));
        ++evaluated;
    }

    double err_sum = 0.0;
    {
        std::priority_queue<Panel, std::vector<Panel>, WorstFirst> copy = heap;
        while (!copy.empty()) {
            err_sum += copy.top().error;
            copy.pop();
        }
    }

    while (err_sum > opt.tol && evaluated + 2 <= opt.max_panels) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval no longer splittable at double precision
            heap.push(worst);
            break;
        }
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        evaluated += 2;
        err_sum += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });

    double value = 0.0;
    double error = 0.0;
    for (const Panel& p : panels) {
        value += p.value;
        error += p.error;
    }
    if (error > opt.tol && evaluated + 2 > opt.max_panels)
        throw convergence_error("integrate: subdivision limit exceeded", value, error);
    return {value, error, evaluated};
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol)
{
    IntegrateOptions opt;
    opt.tol = tol;
    return integrate(f, a, b, opt);
}

QuadratureResult principal_value(const std::function<double(double)>& f, double singularity,
                                 double a, double b, double tol)
{
    if (!(a < singularity && singularity < b))
        throw domain_error("principal_value: singularity must lie strictly inside (a, b)");
    if (!(tol > 0.0)) throw domain_error("principal_value: tolerance must be positive");

    const double h = std::min(singularity - a, b - singularity);
    auto paired = [&f, singularity](double u) { return f(singularity + u) + f(singularity - u); };

    IntegrateOptions opt;
    opt.tol = 0.5 * tol;
    opt.max_panels = 40000;
    QuadratureResult core = integrate(paired, 0.0, h, opt);

    QuadratureResult rest{0.0, 0.0, 0};
    if (singularity - a < b - singularity) {
        rest = integrate(f, singularity + h, b, opt);
    } else if (b - singularity < singularity - a) {
        rest = integrate(f, a, singularity - h, opt);
    }
    return {core.value + rest.value, core.est_abs_error + rest.est_abs_error,
            core.subdivisions + rest.subdivisions};
}

namespace {

enum class ResponseWeight { Triangle, Window, Cusp };

// Parity reduction of the regulated complex integrand: only the even real
// part survives, so each variant is a single real integral over [0, dt] of
//   weight(xi) [cos(E xi)(xi^2 - eps^2) + 2 eps xi sin(E xi)] / (xi^2 + eps^2)^2
// with weight dt - xi, dt, or xi, carrying sign -, -, + respectively.
QuadratureResult regulated_vacuum_integral(double E, double delta_tau, double epsilon, double tol,
                                           ResponseWeight weight_kind)
{
    if (!(delta_tau > 0.0)) throw domain_error("regulated integral: delta_tau must be positive");
    if (!(epsilon > 0.0)) throw domain_error("regulated integral: epsilon must be positive");
    if (epsilon >= delta_tau / 10.0)
        throw domain_error("regulated integral: regulator too coarse (epsilon >= delta_tau/10)");

    auto integrand = [=](double xi) {
        const double d = xi * xi + epsilon * epsilon;
        const double num = std::cos(E * xi) * (xi * xi - epsilon * epsilon)
                           + 2.0 * epsilon * xi * std::sin(E * xi);
        double weight = delta_tau;
        if (weight_kind == ResponseWeight::Triangle) weight = delta_tau - xi;
        if (weight_kind == ResponseWeight::Cusp) weight = xi;
        return weight * num / (d * d);
    };
    IntegrateOptions opt;
    opt.tol = tol * (2.0 * M_PI * M_PI); // tolerance requested on the final value
    opt.max_panels = 60000;
    opt.initial_panels = std::max<std::size_t>(
        4, static_cast<std::size_t>(std::ceil(std::abs(E) * delta_tau / M_PI)));
    QuadratureResult r = integrate(integrand, 0.0, delta_tau, opt);
    const double scale = (weight_kind == ResponseWeight::Cusp ? 1.0 : -1.0) / (2.0 * M_PI * M_PI);
    return {scale * r.value, std::abs(scale) * r.est_abs_error, r.subdivisions};
}

} // namespace

QuadratureResult response_double_integral(double E, double delta_tau, double epsilon, double tol)
{
    return regulated_vacuum_integral(E, delta_tau, epsilon, tol, ResponseWeight::Triangle);
}

QuadratureResult response_window_integral(double E, double delta_tau, double epsilon, double tol)
{
    return regulated_vacuum_integral(E, delta_tau, epsilon, tol, ResponseWeight::Window);
}

QuadratureResult response_cusp_integral(double E, double delta_tau, double epsilon, double tol)
{
    return regulated_vacuum_integral(E, delta_tau, epsilon, tol, ResponseWeight::Cusp);
}

QuadratureResult flat_band_kernel_oracle(double xi, double a, double tol)
{
    if (!(a > 0.0)) throw domain_error("flat_band_kernel_oracle: band cutoff must be positive");
    auto integrand = [xi](double w) { return 2.0 * w * std::cos(w * xi); };
    IntegrateOptions opt;
    opt.tol = tol;
    opt.initial_panels = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(std::abs(xi) * a / M_PI)));
    return integrate(integrand, 0.0, a, opt);
}

std::vector<double> default_epsilon_sweep(double delta_tau)
{
    return {1e-2 * delta_tau, 3e-3 * delta_tau, 1e-3 * delta_tau, 3e-4 * delta_tau, 1e-4 * delta_tau};
}

double extrapolate_regulator(RegulatorSweep& sweep, const std::function<double(double)>& counterterm,
                             double residual_tol)
{
    const std::size_t n = sweep.epsilons.size();
    if (n < 3) throw domain_error("extrapolate_regulator: need at least 3 sweep points");
    if (sweep.values.size() != n)
        throw domain_error("extrapolate_regulator: values/epsilons length mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(sweep.epsilons[i] > 0.0)) throw domain_error("extrapolate_regulator: epsilons must be positive");
        if (i > 0 && !(sweep.epsilons[i] < sweep.epsilons[i - 1]))
            throw domain_error("extrapolate_regulator: epsilons must be strictly decreasing");
    }

    // Least-squares fit of y = c0 + c1 e + c2 e ln e via normal equations.
    double ata[3][3] = {};
    double aty[3] = {};
    for (std::size_t i = 0; i < n; ++i) {
        const double e = sweep.epsilons[i];
        const double y = sweep.values[i] - counterterm(e);
        const double basis[3] = {1.0, e, e * std::log(e)};
        for (int r = 0; r < 3; ++r) {
            aty[r] += basis[r] * y;
            for (int c = 0; c < 3; ++c) ata[r][c] += basis[r] * basis[c];
        }
    }

    // 3x3 Gaussian elimination with partial pivoting.
    double m[3][4];
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) m[r][c] = ata[r][c];
        m[r][3] = aty[r];
    }
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        if (m[pivot][col] == 0.0)
            throw convergence_error("extrapolate_regulator: singular fit", 0.0,
                                    std::numeric_limits<double>::infinity());
        if (pivot != col)
            for (int c = col; c < 4; ++c) std::swap(m[pivot][c], m[col][c]);
        for (int r = col + 1; r < 3; ++r) {
            const double factor = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    double coeff[3];
    for (int r = 2; r >= 0; --r) {
        double s = m[r][3];
        for (int c = r + 1; c < 3; ++c) s -= m[r][c] * coeff[c];
        coeff[r] = s / m[r][r];
    }

    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = sweep.epsilons[i];
        const double y = sweep.values[i] - counterterm(e);
        const double fit = coeff[0] + coeff[1] * e + coeff[2] * e * std::log(e);
        rss += (y - fit) * (y - fit);
    }
    const double rms = std::sqrt(rss / static_cast<double>(n));
    if (rms > residual_tol)
        throw convergence_error("extrapolate_regulator: fit residual above tolerance", coeff[0], rms);

    sweep.extrapolated = coeff[0];
    return coeff[0];
}

} // namespace qzeno::quad
