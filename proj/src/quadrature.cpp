#include "endoscopy_kit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ek {

namespace {

// 15-point Kronrod abscissae on [-1, 1] (positive half; symmetric).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

// Kronrod weights matching kXgk.
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// 7-point Gauss weights on the odd-indexed Kronrod abscissae.
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
    std::complex<double> kronrod;
    double error;
};

PanelEstimate panel(const std::function<std::complex<double>(double)>& f,
                    double a, double b, long long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::array<std::complex<double>, 15> fv;
    for (int i = 0; i < 7; ++i) {
        fv[(size_t)i] = f(c - h * kXgk[(size_t)i]);
        fv[(size_t)(14 - i)] = f(c + h * kXgk[(size_t)i]);
    }
    fv[7] = f(c);
    evals += 15;
    std::complex<double> gk{0.0, 0.0}, g{0.0, 0.0};
    for (int i = 0; i < 7; ++i) {
        const std::complex<double> pair = fv[(size_t)i] + fv[(size_t)(14 - i)];
        gk += kWgk[(size_t)i] * pair;
        if (i % 2 == 1) g += kWg[(size_t)(i / 2)] * pair;
    }
    gk += kWgk[7] * fv[7];
    g += kWg[3] * fv[7];
    PanelEstimate est;
    est.kronrod = h * gk;
    est.error = std::abs(h * (gk - g));
    return est;
}

void refine(const std::function<std::complex<double>(double)>& f, double a,
            double b, double tol, int depth, int max_depth,
            QuadratureResult& acc) {
    PanelEstimate est = panel(f, a, b, acc.evaluations);
    if (est.error <= tol || depth >= max_depth) {
        acc.value += est.kronrod;
        acc.error += est.error;
        if (depth >= max_depth && est.error > tol) acc.converged = false;
        return;
    }
    const double c = 0.5 * (a + b);
    refine(f, a, c, 0.5 * tol, depth + 1, max_depth, acc);
    refine(f, c, b, 0.5 * tol, depth + 1, max_depth, acc);
}

} // namespace

QuadratureResult integrate(const std::function<std::complex<double>(double)>& f,
                           double a, double b, double abs_tol, double rel_tol,
                           int max_depth) {
    QuadratureResult acc;
    acc.converged = true;
    if (a == b) return acc;
    // two passes: a coarse whole-interval estimate fixes the relative scale
    long long dummy = 0;
    PanelEstimate coarse = panel(f, a, b, dummy);
    const double scale = std::abs(coarse.kronrod);
    const double tol = std::max(abs_tol, rel_tol * scale);
    refine(f, a, b, tol, 0, max_depth, acc);
    return acc;
}

QuadratureResult integrate2d(
    const std::function<std::complex<double>(double, double)>& f,
    double ax, double bx, double ay, double by,
    double abs_tol, double rel_tol, int max_depth) {
    QuadratureResult total;
    total.converged = true;
    long long inner_evals = 0;
    bool inner_ok = true;
    auto outer = [&](double x) {
        QuadratureResult inner = integrate(
            [&](double y) { return f(x, y); }, ay, by,
            abs_tol * 0.1 / std::max(1.0, bx - ax), rel_tol * 0.1, max_depth);
        inner_evals += inner.evaluations;
        inner_ok = inner_ok && inner.converged;
        return inner.value;
    };
    QuadratureResult res = integrate(outer, ax, bx, abs_tol, rel_tol, max_depth);
    total.value = res.value;
    total.error = res.error;
    total.evaluations = res.evaluations + inner_evals;
    total.converged = res.converged && inner_ok;
    return total;
}

} // namespace ek
