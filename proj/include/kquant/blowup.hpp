#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "kquant/errors.hpp"
#include "kquant/linalg.hpp"

namespace kquant {

// Blow-up of C^2 at the origin, chart maps
//   phi_1^{-1}(w1, w2) = (w1, w1 w2, [1, w2])
//   phi_2^{-1}(w1, w2) = (w1 w2, w2, [w1, 1])
// The extended Simanca form has the chart-local potentials below; they differ
// from the pullback of |z|^2 + log|z|^2 by pluriharmonic terms, so both induce
// the same metric and stay finite across the exceptional divisor.

using C2 = std::array<std::complex<double>, 2>;

/// Chart-local Kaehler potential of the extended Simanca form (chart 1 or 2).
inline double chart_pullback_potential(int chart, const C2& w) {
    const double a0 = std::norm(w[0]), a1 = std::norm(w[1]);
    if (chart == 1)
        return a0 * (1.0 + a1) + std::log1p(a1);
    if (chart == 2)
        return a1 * (1.0 + a0) + std::log1p(a0);
    throw domain_error("chart_pullback_potential: chart must be 1 or 2");
}

namespace detail {

/// 2x2 complex Hessian d^2 F / dw_i dwbar_j of a real function of (w1, w2),
/// O(h^4) central differences.
template <class F>
HermitianMatrix chart_hessian(const F& f, const C2& w, double h) {
    auto eval = [&](const std::array<double, 4>& x) {
        return f(C2{std::complex<double>(x[0], x[2]), std::complex<double>(x[1], x[3])});
    };
    std::array<double, 4> x0{w[0].real(), w[1].real(), w[0].imag(), w[1].imag()};
    auto d2 = [&](int i, int j) {
        static const int off[4] = {-2, -1, 1, 2};
        static const double cf[4] = {1.0, -8.0, 8.0, -1.0};
        std::array<double, 4> x = x0;
        if (i == j) {
            auto at = [&](int k) { x[i] = x0[i] + k * h; return eval(x); };
            return (-at(-2) + 16 * at(-1) - 30 * at(0) + 16 * at(1) - at(2)) / (12 * h * h);
        }
        double acc = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                x = x0;
                x[i] += off[a] * h;
                x[j] += off[b] * h;
                acc += cf[a] * cf[b] * eval(x);
            }
        return acc / (144 * h * h);
    };
    HermitianMatrix g(2);
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
            const double re = 0.25 * (d2(i, j) + d2(2 + i, 2 + j));
            const double im = 0.25 * (d2(i, 2 + j) - d2(2 + i, j));
            g(i, j) = {re, im};
            g(j, i) = {re, -im};
        }
    return g;
}

} // namespace detail

/// Consistency of the two chart potentials across the overlap: computes the
/// metric from each chart by finite differences, pulls the chart-2 tensor
/// back through the transition Jacobian and returns the maximum entry
/// discrepancy. The chart-1 point must have both underlying coordinates
/// nonzero (z = (w1, w1 w2)), i.e. w1 != 0 and w2 != 0.
inline double chart_transition_check(const C2& w, double h = 0.008) {
    using Cx = std::complex<double>;
    if (std::abs(w[0]) == 0.0 || std::abs(w[1]) == 0.0)
        throw domain_error("chart_transition_check: point not in the chart overlap");
    const Cx w1 = w[0], w2 = w[1];
    // same blow-up point in chart 2: (z1/z2, z2) = (1/w2, w1 w2)
    const C2 v{1.0 / w2, w1 * w2};
    HermitianMatrix g1 = detail::chart_hessian([](const C2& u) { return chart_pullback_potential(1, u); }, w, h);
    HermitianMatrix g2 = detail::chart_hessian([](const C2& u) { return chart_pullback_potential(2, u); }, v, h);
    // Jacobian J(k,i) = dv_k/dw_i of the transition (w1,w2) -> (1/w2, w1 w2)
    Cx J[2][2] = {{0.0, -1.0 / (w2 * w2)}, {w2, w1}};
    double disc = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Cx pb = 0.0;
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    pb += J[k][i] * std::conj(J[l][j]) * g2(k, l);
            disc = std::max(disc, std::abs(g1(i, j) - pb));
        }
    return disc;
}

struct DivisorSliceReport {
    double max_abs_value = 0.0;
    double max_abs_d1 = 0.0; // first derivative along Re w1
    double max_abs_d2 = 0.0; // second derivative along Re w1
};

/// Probes the chart-1 potential on the exceptional-divisor slice w2 = 0,
/// sampling w1 across 0 and bounding the potential and its derivatives —
/// a numerical witness that the form extends over the divisor.
inline DivisorSliceReport divisor_slice_smoothness(double w1_max = 1.0, int samples = 20, double h = 1e-3) {
    DivisorSliceReport rep;
    for (int i = 0; i < samples; ++i) {
        const double x = -w1_max + 2.0 * w1_max * i / (samples - 1);
        auto f = [&](double u) { return chart_pullback_potential(1, C2{std::complex<double>(u, 0.0), 0.0}); };
        const double v = f(x);
        const double d1 = (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
        const double d2 = (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
        rep.max_abs_value = std::max(rep.max_abs_value, std::fabs(v));
        rep.max_abs_d1 = std::max(rep.max_abs_d1, std::fabs(d1));
        rep.max_abs_d2 = std::max(rep.max_abs_d2, std::fabs(d2));
    }
    return rep;
}

} // namespace kquant
