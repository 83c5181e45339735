#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "kquant/errors.hpp"

namespace kquant {

/// A numeric value together with a (conservative) absolute error bound.
/// NaN/inf are never stored; producers throw instead.
struct SpecialValue {
    double value = 0.0;
    double abs_error_bound = 0.0;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
// {abscissa, Gauss weight, Kronrod weight}; nonzero abscissae used symmetrically.
inline constexpr double gk15_nodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529},
};

template <class F>
SpecialValue gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    const double f0 = f(c);
    double g7 = gk15_nodes[0][1] * f0;
    double k15 = gk15_nodes[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double x = hw * gk15_nodes[i][0];
        const double fv = f(c + x) + f(c - x);
        g7 += gk15_nodes[i][1] * fv;
        k15 += gk15_nodes[i][2] * fv;
    }
    g7 *= hw;
    k15 *= hw;
    const double e = 200.0 * std::fabs(g7 - k15);
    return {k15, e * std::sqrt(e)};
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration on a finite interval.
/// Splits the worst segment until the summed error estimate satisfies
/// err <= max(rel_tol*|I|, abs_tol) or the segment budget runs out.
template <class F>
SpecialValue integrate(const F& f, double a, double b, double rel_tol = 1e-12,
                       double abs_tol = 0.0, int max_segments = 2000) {
    struct Seg {
        double err, a, b, val;
        bool operator<(const Seg& o) const { return err < o.err; }
    };
    std::priority_queue<Seg> segs;
    SpecialValue first = detail::gk15(f, a, b);
    double total = first.value, toterr = first.abs_error_bound;
    segs.push({first.abs_error_bound, a, b, first.value});
    int used = 1;
    while (toterr > std::max(rel_tol * std::fabs(total), abs_tol) && used < max_segments) {
        Seg s = segs.top();
        segs.pop();
        const double mid = 0.5 * (s.a + s.b);
        SpecialValue l = detail::gk15(f, s.a, mid);
        SpecialValue r = detail::gk15(f, mid, s.b);
        total += l.value + r.value - s.val;
        toterr += l.abs_error_bound + r.abs_error_bound - s.err;
        segs.push({l.abs_error_bound, s.a, mid, l.value});
        segs.push({r.abs_error_bound, mid, s.b, r.value});
        used += 2;
    }
    if (!std::isfinite(total))
        throw divergence_error("integrate: non-finite accumulation");
    return {total, toterr};
}

/// Integral of exp(log_f(u)) over [a, inf) where log_f eventually decreases
/// at least linearly. Integrates on doubling windows and stops once the
/// analytic tail bound exp(log_f(R))/(-dlog_f/du|_R) is below tolerance.
/// The tail bound is added to the reported error bound.
template <class LogF>
SpecialValue integrate_to_infinity(const LogF& log_f, double a, double rel_tol = 1e-12,
                                   int max_doublings = 60) {
    auto f = [&](double u) {
        const double lf = log_f(u);
        return lf < -745.0 ? 0.0 : std::exp(lf);
    };
    double total = 0.0, toterr = 0.0;
    double lo = a, hi = std::max(2.0 * std::fabs(a), 1.0) + a;
    for (int it = 0; it < max_doublings; ++it) {
        SpecialValue part = integrate(f, lo, hi, 0.1 * rel_tol);
        total += part.value;
        toterr += part.abs_error_bound;
        // local decay slope of the log-integrand at the window end
        const double d = 1e-3 * hi;
        const double slope = (log_f(hi + d) - log_f(hi - d)) / (2.0 * d);
        if (slope < -1e-3) {
            const double tail = f(hi) / (-slope);
            if (tail <= rel_tol * std::fabs(total) || tail == 0.0)
                return {total, toterr + tail};
        }
        lo = hi;
        hi *= 2.0;
    }
    throw divergence_error("integrate_to_infinity: integrand not decaying within budget");
}

} // namespace kquant
