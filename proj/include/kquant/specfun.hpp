#pragma once

#include <cmath>
#include <numbers>

#include "kquant/errors.hpp"
#include "kquant/quadrature.hpp"

namespace kquant {

namespace detail {

// Lanczos approximation, g = 7, 9 terms (Godfrey coefficients).
// Relative error below 1e-14 on the positive real axis.
inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_coef[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline double lanczos_gamma(double x) {
    // valid for x >= 0.5; callers shift smaller arguments up by recurrence
    double acc = lanczos_coef[0];
    for (int i = 1; i < 9; ++i)
        acc += lanczos_coef[i] / (x - 1.0 + i);
    const double t = x - 0.5 + lanczos_g;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x - 0.5) * std::exp(-t) * acc;
}

inline constexpr double factorial_table[21] = {
    1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0,
    3628800.0, 39916800.0, 479001600.0, 6227020800.0, 87178291200.0,
    1307674368000.0, 20922789888000.0, 355687428096000.0, 6402373705728000.0,
    121645100408832000.0, 2432902008176640000.0,
};

} // namespace detail

/// Gamma function for positive real arguments.
/// Integer arguments up to 21 hit an exact factorial table.
inline double gamma_fn(double x) {
    if (!(x > 0.0))
        throw domain_error("gamma_fn: argument must be positive");
    if (x == std::floor(x) && x <= 21.0)
        return detail::factorial_table[static_cast<int>(x) - 1];
    if (x < 0.5)
        return detail::lanczos_gamma(x + 1.0) / x;
    return detail::lanczos_gamma(x);
}

/// Factorial with exact table fast path.
inline double factorial(int n) {
    if (n < 0)
        throw domain_error("factorial: negative argument");
    if (n <= 20)
        return detail::factorial_table[n];
    return std::exp(std::lgamma(n + 1.0));
}

/// Truncated Kummer function 1F1(1-n; b; z) for integer n >= 1: the finite sum
///   sum_{s=0}^{n-1} [(1-n)_s / (b)_s] z^s / s!,
/// evaluated as a running product of factor ratios, so that b = 1-n (the
/// degenerate-looking a = b case) automatically yields the partial exponential
/// sum. Throws if some Pochhammer factor (b)_s vanishes for s <= n-1.
inline double kummer_truncated(int n, double b, double z) {
    if (n < 1)
        throw domain_error("kummer_truncated: n must be >= 1");
    const double a = 1.0 - n;
    double total = 1.0, term = 1.0;
    for (int s = 1; s <= n - 1; ++s) {
        const double den = b + (s - 1);
        if (den == 0.0)
            throw degenerate_parameter_error("kummer_truncated: (b)_s vanishes before the sum ends");
        term *= (a + (s - 1)) / den * z / s;
        total += term;
    }
    return total;
}

/// Convergent Kummer series 1F1(a; b; z) for general real parameters,
/// b not a nonpositive integer. Used only to cross-check closed forms.
inline double kummer_series(double a, double b, double z, int max_terms = 500) {
    if (b <= 0.0 && b == std::floor(b))
        throw degenerate_parameter_error("kummer_series: b is a nonpositive integer");
    double total = 1.0, term = 1.0;
    for (int s = 1; s < max_terms; ++s) {
        term *= (a + (s - 1)) / (b + (s - 1)) * z / s;
        total += term;
        if (std::fabs(term) < 1e-18 * std::fabs(total))
            return total;
    }
    return total;
}

/// Tricomi U(a, b, z) for a > 0, z > 0 through its integral representation
///   U(a,b,z) = 1/Gamma(a) * int_0^inf e^{-z t} t^{a-1} (1+t)^{b-a-1} dt.
/// Quadrature oracle only; the closed-form route goes through kummer_truncated.
inline SpecialValue tricomi_u_integral(double a, double b, double z, double rel_tol = 1e-11) {
    if (!(a > 0.0) || !(z > 0.0))
        throw domain_error("tricomi_u_integral: requires a > 0 and z > 0");
    const double c = b - a - 1.0;
    double head, head_err;
    if (a < 1.0) {
        // substitute t = u^{1/a} to remove the endpoint singularity
        auto fs = [&](double u) {
            if (u <= 0.0)
                return 0.0;
            const double t = std::pow(u, 1.0 / a);
            return std::exp(-z * t + c * std::log1p(t)) / a;
        };
        SpecialValue v = integrate(fs, 0.0, 1.0, 0.2 * rel_tol);
        head = v.value;
        head_err = v.abs_error_bound;
    } else {
        auto f = [&](double t) {
            if (t <= 0.0)
                return 0.0;
            return std::exp(-z * t + (a - 1.0) * std::log(t) + c * std::log1p(t));
        };
        SpecialValue v = integrate(f, 0.0, 1.0, 0.2 * rel_tol);
        head = v.value;
        head_err = v.abs_error_bound;
    }
    auto log_f = [&](double t) { return -z * t + (a - 1.0) * std::log(t) + c * std::log1p(t); };
    SpecialValue tail = integrate_to_infinity(log_f, 1.0, 0.2 * rel_tol);
    const double g = gamma_fn(a);
    return {(head + tail.value) / g, (head_err + tail.abs_error_bound) / g};
}

/// int_0^{pi/2} cos^{2j+1} sin^{2k+1} = j! k! / (2 (j+k+1)!).
inline double angular_beta_integral(int j, int k) {
    if (j < 0 || k < 0)
        throw domain_error("angular_beta_integral: indices must be nonnegative");
    if (j + k + 2 <= 21.0)
        return factorial(j) * factorial(k) / (2.0 * factorial(j + k + 1));
    return 0.5 * std::exp(std::lgamma(j + 1.0) + std::lgamma(k + 1.0) - std::lgamma(j + k + 2.0));
}

/// int_0^inf r^s e^{-m r^2} dr = Gamma((s+1)/2) / (2 m^{(s+1)/2}).
inline double radial_gaussian_moment(double s, double m) {
    if (!(s >= 0.0) || !(m > 0.0))
        throw domain_error("radial_gaussian_moment: requires s >= 0 and m > 0");
    const double half = 0.5 * (s + 1.0);
    return gamma_fn(half) / (2.0 * std::pow(m, half));
}

} // namespace kquant
