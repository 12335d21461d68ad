// quadrature.hpp — Gauss-Kronrod 15 adaptive integration, an 8-point Gauss
// rule, and an Euler-accelerated summation for oscillatory tails.

#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "dcsb/errors.hpp"

namespace dcsb::quad {

// Gauss-Kronrod 7-15 nodes on [-1,1] (positive half; node 7 is 0)
inline constexpr std::array<double, 8> gk15_nodes{
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr std::array<double, 8> gk15_wk{
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
// Gauss-7 weights, aligned with the odd Kronrod nodes (indices 1,3,5,7)
inline constexpr std::array<double, 4> gk15_wg{
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

// 8-point Gauss-Legendre on [-1,1]
inline constexpr std::array<double, 8> gauss8_nodes{
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
inline constexpr std::array<double, 8> gauss8_weights{
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

struct budget {
    long evals = 0;
    long max_evals = 1000000;
    void charge(long n) {
        evals += n;
        if (evals > max_evals)
            throw QuadratureFailure("quadrature: evaluation budget exhausted");
    }
};

// single GK15 panel; err estimates |K15 - G7|; resabs (optional) is the
// integral of |f|, the roundoff scale of the error estimate
template <class F>
double gk15_panel(F&& f, double a, double b, double& err, budget& bud,
                  double* resabs = nullptr) {
    bud.charge(15);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double k = 0.0, g = 0.0, ab = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double x = gk15_nodes[i];
        double v;
        if (i == 7) {
            v = f(c);
            k += gk15_wk[i] * v;
            g += gk15_wg[3] * v;
            ab += gk15_wk[i] * std::fabs(v);
        } else {
            const double v1 = f(c - h * x), v2 = f(c + h * x);
            v = v1 + v2;
            k += gk15_wk[i] * v;
            if (i % 2 == 1) g += gk15_wg[i / 2] * v;
            ab += gk15_wk[i] * (std::fabs(v1) + std::fabs(v2));
        }
    }
    err = std::fabs(k - g) * h;
    if (resabs) *resabs = ab * h;
    return k * h;
}

namespace detail {
template <class F>
double adapt_rec(F&& f, double a, double b, double tol, int depth, budget& bud) {
    double err, resabs;
    const double v = gk15_panel(f, a, b, err, bud, &resabs);
    // the |K15 - G7| estimate cannot resolve below roundoff of int |f|
    const double floor = 1e-14 * resabs;
    if (err <= tol || err <= floor || depth >= 48) {
        if (depth >= 48 && err > std::max(tol * 64, floor))
            throw QuadratureFailure("quadrature: adaptive bisection stalled");
        return v;
    }
    const double m = 0.5 * (a + b);
    return adapt_rec(f, a, m, 0.5 * tol, depth + 1, bud) +
           adapt_rec(f, m, b, 0.5 * tol, depth + 1, bud);
}
} // namespace detail

// globally adaptive GK15 to absolute tolerance tol
template <class F> double adaptive(F&& f, double a, double b, double tol, budget& bud) {
    if (a == b) return 0.0;
    return detail::adapt_rec(f, a, b, tol, 0, bud);
}

// Sum_{k>=0} panel(k) for slowly decaying alternating-panel series, via
// iterated averaging of partial sums (Euler transformation).
template <class PanelF>
double euler_tail(PanelF&& panel, double tol, budget& bud, int max_panels = 512) {
    std::vector<double> row;
    row.reserve(24);
    double s = 0.0, prev = 0.0, est = 0.0;
    for (int k = 0; k < max_panels; ++k) {
        s += panel(k, bud);
        double cur = s;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double tmp = row[j];
            row[j] = cur;
            cur = 0.5 * (tmp + cur);
        }
        if (row.size() < 24) row.push_back(cur);
        est = cur;
        if (k >= 4 && std::fabs(est - prev) < tol) return est;
        prev = est;
    }
    throw QuadratureFailure("quadrature: oscillatory tail did not converge");
}

} // namespace dcsb::quad
