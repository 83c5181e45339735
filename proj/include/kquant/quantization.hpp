#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "kquant/errors.hpp"
#include "kquant/linalg.hpp"
#include "kquant/potential.hpp"
#include "kquant/quadrature.hpp"
#include "kquant/specfun.hpp"

namespace kquant {

/// Exponent vector of a monomial section z_1^{j_1} ... z_n^{j_n}.
struct MultiIndex {
    std::vector<int> exponents;

    explicit MultiIndex(std::vector<int> e) : exponents(std::move(e)) {
        for (int j : exponents)
            if (j < 0)
                throw domain_error("MultiIndex: exponents must be nonnegative");
    }
    int total() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }
};

struct Truncation {
    int max_terms = 200000;
    double tail_tol = 1e-12;
};

struct QuadratureOpts {
    double rel_tol = 1e-12;
    int max_segments = 2000;
};

/// Hilbert-space model: monomials of total degree >= min_order, weighted by
/// h_m = e^{-m smooth(t)} t^{-m c} against the volume density
/// det g = (Phi')^{n-1}(Phi' + t Phi''). The quantum level m plays 1/hbar;
/// the section space is infinite-dimensional and never materialized.
struct QuantizationSetup {
    int n;
    int m;
    RadialPotential potential;
    int min_order;
    Truncation truncation{};
    QuadratureOpts quadrature{};

    QuantizationSetup(int n_, int m_, RadialPotential pot, Truncation tr = {}, QuadratureOpts q = {})
        : n(n_), m(m_), potential(std::move(pot)),
          min_order(potential.log_coefficient() != 0.0 ? m_ : 0), truncation(tr), quadrature(q) {
        if (n < 1 || m < 1)
            throw domain_error("QuantizationSetup: require n >= 1 and m >= 1");
        if (!(truncation.tail_tol >= 0.0))
            throw domain_error("QuantizationSetup: tail tolerance must be nonnegative");
    }
};

struct EpsilonResult {
    double value = 0.0;
    int terms_used = 0;
    double tail_bound = 0.0;
};

namespace detail {

/// The degree-k factor of the epsilon series,
///   k! (k+m+n-1)! / ((k+m)! (k+n-1)! 1F1(1-n, 1-k-n, m)),
/// computed as a product of n-1 small ratios over the truncated Kummer value.
/// Tends to 1 as k -> infinity; bounded above by binom(m+n-1, n-1).
inline double epsilon_series_ratio(int n, int m, long k) {
    double p = 1.0;
    for (int i = 1; i < n; ++i)
        p *= static_cast<double>(k + m + i) / static_cast<double>(k + i);
    return p / kummer_truncated(n, 1.0 - k - n, static_cast<double>(m));
}

inline double binom_bound(int n, int m) {
    double b = 1.0;
    for (int i = 1; i < n; ++i)
        b *= static_cast<double>(m + i) / static_cast<double>(i);
    return b;
}

/// Closed-route epsilon series for Flat / Simanca:
///   eps(t) = m^n sum_k e^{-x} x^k/k! * ratio_k,  x = m t,
/// summed outward from the Poisson mode so every term recurrence is stable.
/// The tail past K is bounded by m^n * B * e^{-x} x^{K+1}/(K+1)! / (1 - q),
/// q = x/(K+2), with B = sup_k ratio_k (1 for Flat).
inline EpsilonResult epsilon_closed_route(const QuantizationSetup& s, double t) {
    const bool simanca = s.potential.kind() == PotentialKind::Simanca;
    const double x = static_cast<double>(s.m) * t;
    const double B = simanca ? binom_bound(s.n, s.m) : 1.0;
    const double mn = std::pow(static_cast<double>(s.m), s.n);
    auto ratio = [&](long k) { return simanca ? epsilon_series_ratio(s.n, s.m, k) : 1.0; };

    const long k0 = static_cast<long>(x);
    const double g0 = std::exp(-x + k0 * std::log(x) - std::lgamma(static_cast<double>(k0) + 1.0));

    double total = 0.0;
    int terms = 0;
    // downward half (finite)
    {
        double g = g0;
        for (long k = k0; k > 0;) {
            g *= static_cast<double>(k) / x;
            --k;
            total += g * ratio(k);
            ++terms;
        }
    }
    // upward half with rigorous tail bound
    double g = g0;
    long k = k0;
    double bound = std::numeric_limits<double>::infinity();
    while (true) {
        total += g * ratio(k);
        ++terms;
        const double gnext = g * x / static_cast<double>(k + 1);
        if (k + 2 > x) {
            const double q = x / static_cast<double>(k + 2);
            bound = mn * B * gnext / (1.0 - q);
            if (bound <= s.truncation.tail_tol)
                break;
        }
        if (terms >= s.truncation.max_terms)
            throw precision_error("epsilon: truncation budget exhausted", mn * total, terms, bound);
        g = gnext;
        ++k;
    }
    return {mn * total, terms, bound};
}

/// log of the radial norm integral int_0^inf u^{J+n-1-mc} e^{-m smooth(u)} det g(u) du,
/// computed with the peak scaled out so large degrees do not overflow.
inline double log_radial_norm_integral(const QuantizationSetup& s, int J) {
    const double c = s.potential.log_coefficient();
    const double a = J + s.n - 1 - s.m * c;
    auto logE = [&](double u) {
        const double p1 = s.potential(u, 1), p2 = s.potential(u, 2);
        const double dg = std::pow(p1, s.n - 1) * (p1 + u * p2);
        if (!(dg > 0.0))
            throw divergence_error("norm integrand: nonpositive volume density");
        return a * std::log(u) - s.m * s.potential.smooth_part(u) + std::log(dg);
    };
    // crude peak location scan, then scaled integration
    double umax = std::max(1.0, a / s.m);
    double emax = logE(umax);
    for (double u = umax / 8; u <= umax * 8; u *= 1.3) {
        const double e = logE(u);
        if (e > emax) {
            emax = e;
            // keep scanning; emax only used for scaling
        }
    }
    auto log_scaled = [&](double u) { return logE(u) - emax; };
    SpecialValue head = integrate([&](double u) { return u <= 0.0 ? 0.0 : std::exp(log_scaled(u)); },
                                  0.0, std::max(1.0, 2.0 * a / s.m + 4.0 / s.m),
                                  0.1 * s.quadrature.rel_tol, 0.0, s.quadrature.max_segments);
    SpecialValue tail = integrate_to_infinity(log_scaled, std::max(1.0, 2.0 * a / s.m + 4.0 / s.m),
                                              0.1 * s.quadrature.rel_tol);
    return emax + std::log(head.value + tail.value);
}

/// Generic-route epsilon: per-degree quadrature norms composed into
///   eps(t) = w(t) sum_{J>=min_order} t^J (J+n-1)! / (J! rad_J).
/// The tail bound is an observed-geometric-domination estimate (successive
/// term ratios past the peak), not the provable exponential remainder of the
/// closed route.
inline EpsilonResult epsilon_quadrature_route(const QuantizationSetup& s, double t) {
    const double c = s.potential.log_coefficient();
    const double logw = -s.m * s.potential.smooth_part(t) - s.m * c * std::log(t);
    double total = 0.0;
    int terms = 0;
    double prev = -1.0, ratio = 1.0;
    int decreasing = 0;
    double term = 0.0;
    for (int J = (s.potential.log_coefficient() != 0.0 ? s.m : 0);; ++J) {
        const double logterm = logw + J * std::log(t) + std::lgamma(J + s.n) - std::lgamma(J + 1.0)
                               - log_radial_norm_integral(s, J);
        term = std::exp(logterm);
        total += term;
        ++terms;
        if (prev > 0.0 && term < prev) {
            ratio = term / prev;
            ++decreasing;
            if (decreasing >= 3 && ratio < 0.9) {
                const double bound = term * ratio / (1.0 - ratio);
                if (bound <= std::max(s.truncation.tail_tol, 1e-13 * total))
                    return {total, terms, bound};
            }
        } else {
            decreasing = 0;
        }
        prev = term;
        if (terms >= s.truncation.max_terms)
            throw precision_error("epsilon: truncation budget exhausted", total, terms,
                                  term * ratio / std::max(1.0 - ratio, 1e-6));
    }
}

} // namespace detail

/// Monomial norm-squared via the closed forms: the hypergeometric expression
/// for Simanca, prod j_i! / m^{J+n} for Flat (no closed form otherwise).
inline double monomial_norm_closed(const QuantizationSetup& s, const MultiIndex& idx) {
    if (static_cast<int>(idx.exponents.size()) != s.n)
        throw domain_error("monomial_norm_closed: index dimension mismatch");
    const int J = idx.total();
    if (J < s.min_order)
        throw not_a_section_error("monomial_norm_closed: degree below the vanishing order");
    if (s.potential.kind() == PotentialKind::Flat) {
        double v = 1.0;
        for (int j : idx.exponents)
            v *= factorial(j);
        return v / std::pow(static_cast<double>(s.m), J + s.n);
    }
    if (s.potential.kind() != PotentialKind::Simanca)
        throw no_closed_form_error("monomial_norm_closed: only Flat and Simanca have closed forms");
    // m^{m-n-J} prod j_i! * Gamma(J-m+n)/Gamma(J+n) * 1F1(1-n, 1+m-n-J, m)
    double v = std::pow(static_cast<double>(s.m), s.m - s.n - J);
    for (int j : idx.exponents)
        v *= factorial(j);
    if (J + s.n <= 170) {
        v *= gamma_fn(static_cast<double>(J - s.m + s.n)) / gamma_fn(static_cast<double>(J + s.n));
    } else {
        // Gamma ratio as a finite product of the m factors it actually contains
        double q = 1.0;
        for (int i = 0; i < s.m; ++i)
            q *= static_cast<double>(J - s.m + s.n + i);
        v /= q;
    }
    v *= kummer_truncated(s.n, 1.0 + s.m - s.n - J, static_cast<double>(s.m));
    return v;
}

/// Monomial norm-squared by quadrature: exact angular beta factors times an
/// adaptive radial integral. Works for any radial potential.
inline double monomial_norm_quadrature(const QuantizationSetup& s, const MultiIndex& idx) {
    if (static_cast<int>(idx.exponents.size()) != s.n)
        throw domain_error("monomial_norm_quadrature: index dimension mismatch");
    const int J = idx.total();
    if (J < s.min_order)
        throw not_a_section_error("monomial_norm_quadrature: degree below the vanishing order");
    double logv = detail::log_radial_norm_integral(s, J) - std::lgamma(J + s.n);
    for (int j : idx.exponents)
        logv += std::lgamma(j + 1.0);
    return std::exp(logv);
}

/// Rawnsley epsilon at |z|^2 = t: weight(t) * sum over sections of
/// |monomial|^2 / norm^2, collapsed by the multinomial identity to a single
/// series in the total degree. The t^{-m} pole and the leading t^{J} powers
/// are combined analytically, so only t^{J - m} is ever formed.
inline EpsilonResult epsilon(const QuantizationSetup& s, double t) {
    if (!(t > 0.0))
        throw domain_error("epsilon: t must be positive");
    switch (s.potential.kind()) {
        case PotentialKind::Flat:
        case PotentialKind::Simanca:
            return detail::epsilon_closed_route(s, t);
        default:
            return detail::epsilon_quadrature_route(s, t);
    }
}

struct BalancedReport {
    std::vector<double> t_grid;
    std::vector<double> values;
    std::vector<double> tail_bounds;
    double mean = 0.0;
    double max_rel_deviation = 0.0;
};

/// Evaluates epsilon on a grid and reports the largest relative deviation
/// from the grid mean; a balanced metric yields deviation at rounding level.
inline BalancedReport balanced_check(const QuantizationSetup& s, const std::vector<double>& t_grid) {
    if (t_grid.empty())
        throw domain_error("balanced_check: empty grid");
    BalancedReport rep;
    rep.t_grid = t_grid;
    for (double t : t_grid) {
        EpsilonResult e = epsilon(s, t);
        rep.values.push_back(e.value);
        rep.tail_bounds.push_back(e.tail_bound);
    }
    rep.mean = std::accumulate(rep.values.begin(), rep.values.end(), 0.0) / rep.values.size();
    for (double v : rep.values)
        rep.max_rel_deviation = std::max(rep.max_rel_deviation, std::fabs(v - rep.mean) / rep.mean);
    return rep;
}

/// Fits c in the model ratio_k ~ 1 + c/k^2 over the largest-k half of
/// [k_lo, k_hi]; the fitted value approaches m(n-1)(n-2)/2.
inline double asymptotic_ratio_fit(int n, int m, long k_lo = 100, long k_hi = 2000) {
    if (k_hi < 100)
        throw domain_error("asymptotic_ratio_fit: need k range up to at least 100");
    const long k_mid = (k_lo + k_hi) / 2;
    double sxy = 0.0, sxx = 0.0;
    for (long k = k_mid; k <= k_hi; ++k) {
        const double x = 1.0 / (static_cast<double>(k) * k);
        const double y = detail::epsilon_series_ratio(n, m, k) - 1.0;
        sxy += x * y;
        sxx += x * x;
    }
    return sxy / sxx;
}

struct TyzFit {
    std::vector<double> coefficients; // a_0 .. a_K multiplying m^{n-j}
    double residual = 0.0;
    int m_lo = 0, m_hi = 0;
    bool conditioning_warning = false;
    std::string note;
};

/// Least-squares fit of eps_m(t) against sum_j a_j m^{n-j} over an m-range.
/// Equal weights, no regularization; conditioning is surfaced, not fixed.
inline TyzFit tyz_fit(int n, const RadialPotential& pot, double t, int m_lo, int m_hi, int K) {
    const int count = m_hi - m_lo + 1;
    if (count < K + 3)
        throw domain_error("tyz_fit: m-range must exceed the model order by at least 3");
    std::vector<std::vector<double>> A(count, std::vector<double>(K + 1));
    std::vector<double> y(count);
    for (int i = 0; i < count; ++i) {
        const int m = m_lo + i;
        QuantizationSetup s(n, m, pot);
        y[i] = epsilon(s, t).value;
        for (int j = 0; j <= K; ++j)
            A[i][j] = std::pow(static_cast<double>(m), n - j);
    }
    TyzFit fit;
    fit.m_lo = m_lo;
    fit.m_hi = m_hi;
    double cond = 0.0;
    fit.coefficients = least_squares(A, y, &fit.residual, &cond);
    fit.conditioning_warning = cond > 1e12;
    if (pot.kind() == PotentialKind::Simanca && n >= 3)
        fit.note = "power-law density-of-states model assumed beyond the balanced cases (experimental)";
    return fit;
}

/// Verifies the coherent-map pullback identity: the metric induced by
/// P(t) = log sum |s_j|^2 equals m * (metric of Phi) plus the metric
/// contribution of log eps. P and log eps are differentiated numerically and
/// independently; the Phi side uses the exact derivatives. Returns the worst
/// absolute mismatch of the two radial metric components.
inline double coherent_pullback_check(const QuantizationSetup& s, double t) {
    if (!(t > 0.0))
        throw domain_error("coherent_pullback_check: t must be positive");
    auto logS = [&](double tv) {
        // fresh summation of sum_J t^J * multiplicity / norm^2 (no weight)
        const bool simanca = s.potential.kind() == PotentialKind::Simanca;
        if (s.potential.kind() != PotentialKind::Flat && !simanca)
            throw no_closed_form_error("coherent_pullback_check: closed-form potentials only");
        const double x = s.m * tv;
        // term_k = m^{n+k} t^{min_order+k} ratio_k / k!   (Flat: min_order 0, ratio 1)
        double total = 0.0;
        double term = std::pow(static_cast<double>(s.m), s.n) * (simanca ? std::pow(tv, s.m) : 1.0);
        for (long k = 0;; ++k) {
            const double r = simanca ? detail::epsilon_series_ratio(s.n, s.m, k) : 1.0;
            total += term * r;
            term *= x / static_cast<double>(k + 1);
            if (k > 8 && term * detail::binom_bound(s.n, s.m) < 1e-16 * total)
                break;
        }
        return std::log(total);
    };
    auto logeps = [&](double tv) { return std::log(epsilon(s, tv).value); };
    auto pair_of = [&](auto&& f) {
        const double h = 1e-3 * std::max(1.0, t);
        auto stencil = [&](double hh) {
            const double d1 = (f(t - 2 * hh) - 8 * f(t - hh) + 8 * f(t + hh) - f(t + 2 * hh)) / (12 * hh);
            const double d2 = (-f(t - 2 * hh) + 16 * f(t - hh) - 30 * f(t) + 16 * f(t + hh) - f(t + 2 * hh))
                              / (12 * hh * hh);
            return std::pair<double, double>{d1, d1 + t * d2};
        };
        auto [a1, a2] = stencil(h);
        auto [b1, b2] = stencil(0.5 * h);
        return std::pair<double, double>{(16 * b1 - a1) / 15, (16 * b2 - a2) / 15};
    };
    auto [s1, s2] = pair_of(logS);
    auto [e1, e2] = pair_of(logeps);
    const double p1 = s.potential(t, 1), p2 = s.potential(t, 2);
    const double m1 = s.m * p1, m2 = s.m * (p1 + t * p2);
    return std::max(std::fabs(s1 - m1 - e1), std::fabs(s2 - m2 - e2));
}

/// Truncated embedding-potential series sum_{1<=j+k<=N} ((j+k)/(j!k!)) a^j b^k,
/// converging to (a+b) e^{a+b}.
inline double embedding_series_check(double a, double b, int N) {
    if (N < 1 || N > 160)
        throw domain_error("embedding_series_check: N must be in 1..160");
    if (!(a >= 0.0) || !(b >= 0.0))
        throw domain_error("embedding_series_check: a, b must be nonnegative");
    double total = 0.0;
    for (int J = 1; J <= N; ++J) {
        double inner = 0.0;
        for (int j = 0; j <= J; ++j)
            inner += std::pow(a, j) * std::pow(b, J - j) / (factorial(j) * factorial(J - j));
        total += J * inner;
    }
    return total;
}

} // namespace kquant
