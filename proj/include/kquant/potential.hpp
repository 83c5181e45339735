#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "kquant/errors.hpp"

namespace kquant {

enum class PotentialKind { Flat, Simanca, EguchiHanson, Custom };

inline const char* to_string(PotentialKind k) {
    switch (k) {
        case PotentialKind::Flat: return "flat";
        case PotentialKind::Simanca: return "simanca";
        case PotentialKind::EguchiHanson: return "eguchi-hanson";
        default: return "custom";
    }
}

/// A radial Kaehler potential Phi(t), t = |z|^2, with hand-derived closed-form
/// derivatives up to order 4 and the coefficient c of its log t pole
/// (Phi = smooth + c log t). The pole coefficient is kept separate so the
/// quantization weight e^{-m Phi} = t^{-m c} e^{-m smooth} can be assembled
/// without cancellation near t = 0.
///
/// Built-ins:
///   Flat           Phi = t,                                     c = 0
///   Simanca        Phi = t + log t,                             c = 1
///   EguchiHanson   Phi = s + log t - log(1+s), s = sqrt(t^2+1), c = 1
class RadialPotential {
public:
    using Supplier = std::function<double(double, int)>;

    RadialPotential(PotentialKind kind, Supplier d, double log_coefficient)
        : kind_(kind), derivative_(std::move(d)), log_coefficient_(log_coefficient) {}

    PotentialKind kind() const { return kind_; }
    double log_coefficient() const { return log_coefficient_; }

    /// Phi^{(order)}(t), order 0..4, t > 0.
    double operator()(double t, int order) const {
        if (!(t > 0.0))
            throw domain_error("RadialPotential: t must be positive");
        if (order < 0 || order > 4)
            throw domain_error("RadialPotential: derivative order must be 0..4");
        return derivative_(t, order);
    }

    /// Phi(t) - c log t, finite down to t -> 0+ for the built-ins.
    double smooth_part(double t) const { return (*this)(t, 0) - log_coefficient_ * std::log(t); }

    static RadialPotential flat() {
        return RadialPotential(PotentialKind::Flat,
                               [](double t, int order) {
                                   switch (order) {
                                       case 0: return t;
                                       case 1: return 1.0;
                                       default: return 0.0;
                                   }
                               },
                               0.0);
    }

    static RadialPotential simanca() {
        return RadialPotential(PotentialKind::Simanca,
                               [](double t, int order) {
                                   switch (order) {
                                       case 0: return t + std::log(t);
                                       case 1: return 1.0 + 1.0 / t;
                                       case 2: return -1.0 / (t * t);
                                       case 3: return 2.0 / (t * t * t);
                                       default: return -6.0 / (t * t * t * t);
                                   }
                               },
                               1.0);
    }

    static RadialPotential eguchi_hanson() {
        return RadialPotential(PotentialKind::EguchiHanson,
                               [](double t, int order) {
                                   const double s = std::sqrt(t * t + 1.0);
                                   switch (order) {
                                       case 0: return s + std::log(t) - std::log1p(s);
                                       case 1: return t / (1.0 + s) + 1.0 / t;
                                       case 2: return 1.0 / (s * (1.0 + s)) - 1.0 / (t * t);
                                       case 3:
                                           return -t * (1.0 + 2.0 * s) / (s * s * s * (1.0 + s) * (1.0 + s))
                                                  + 2.0 / (t * t * t);
                                       default:
                                           return 3.0 * (2.0 * s * s * s - 2.0 * s - 1.0)
                                                      / (std::pow(s, 5) * (1.0 + s) * (1.0 + s))
                                                  - 6.0 / (t * t * t * t);
                                   }
                               },
                               1.0);
    }

    /// Custom potentials must supply all five orders themselves; no symbolic
    /// differentiation is attempted.
    static RadialPotential custom(Supplier d, double log_coefficient) {
        return RadialPotential(PotentialKind::Custom, std::move(d), log_coefficient);
    }

    static RadialPotential by_name(const std::string& name) {
        if (name == "flat") return flat();
        if (name == "simanca") return simanca();
        if (name == "eguchi-hanson" || name == "eh") return eguchi_hanson();
        throw domain_error("unknown potential kind: " + name);
    }

private:
    PotentialKind kind_;
    Supplier derivative_;
    double log_coefficient_;
};

/// Evaluation facade used by the CLI and tests.
inline double potential_value(const RadialPotential& p, double t, int order) {
    return p(t, order);
}

} // namespace kquant
