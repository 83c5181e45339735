#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "kquant/errors.hpp"
#include "kquant/quantization.hpp"

namespace kquant {

/// Calabi diastasis value; d may be +infinity (cut-locus pairs), in which
/// case exp_neg_d is exactly 0.
struct DiastasisValue {
    double d = 0.0;
    double exp_neg_d = 1.0;
};

using CVec = std::vector<std::complex<double>>;

namespace detail {

inline std::complex<double> herm_inner(const CVec& x, const CVec& y) {
    // <x,y> = sum x_i conj(y_i)
    std::complex<double> s = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
        s += x[i] * std::conj(y[i]);
    return s;
}

} // namespace detail

/// Diastasis through the sesquianalytic extension Phi(<x,y>).
/// Flat: D = |x|^2 + |y|^2 - 2 Re<x,y> = |x-y|^2.
/// Simanca: only Re log<x,y> = log|<x,y>| enters, so no branch choice is
/// needed; <x,y> = 0 is the cut-locus case with D = +infinity.
inline DiastasisValue diastasis_eval(const RadialPotential& p, const CVec& x, const CVec& y) {
    if (x.size() != y.size() || x.empty())
        throw domain_error("diastasis_eval: dimension mismatch");
    const double nx2 = detail::herm_inner(x, x).real();
    const double ny2 = detail::herm_inner(y, y).real();
    if (nx2 == 0.0 || ny2 == 0.0)
        throw domain_error("diastasis_eval: points must be nonzero");
    const std::complex<double> ip = detail::herm_inner(x, y);
    if (p.kind() == PotentialKind::Flat) {
        const double d = nx2 + ny2 - 2.0 * ip.real();
        return {d, std::exp(-d)};
    }
    if (p.kind() != PotentialKind::Simanca)
        throw domain_error("diastasis_eval: no sesquianalytic extension available for this potential");
    const double a2 = std::norm(ip);
    if (a2 == 0.0)
        return {std::numeric_limits<double>::infinity(), 0.0};
    const double d = nx2 + ny2 - 2.0 * ip.real() + std::log(nx2 * ny2 / a2);
    return {d, std::exp(-d)};
}

/// exp(-D) computed through the explicit projective embedding
/// (coordinates sqrt(J/(j!k!)) z1^j z2^k) and the Fubini-Study diastasis
/// -log(|<u,v>|^2/(|u|^2 |v|^2)); the truncation degree grows until the
/// dropped tail is below 1e-12 of each inner product. n = 2 only; used to
/// witness the hereditary identity against the closed form.
inline double simanca_embedding_expnegd(const CVec& x, const CVec& y) {
    if (x.size() != 2 || y.size() != 2)
        throw domain_error("simanca_embedding_expnegd: two complex coordinates expected");
    auto series = [](std::complex<double> w) {
        // sum_{J>=1} J w^J / J!  (= w e^w), truncated with relative tail 1e-14
        std::complex<double> total = 0.0;
        std::complex<double> term = w; // J = 1 term: 1 * w / 1!
        const double aw = std::abs(w);
        for (int J = 1; J <= 400; ++J) {
            total += static_cast<double>(J) * term;
            term *= w / static_cast<double>(J + 1);
            if (static_cast<double>(J + 1) * std::abs(term) < 1e-14 * std::abs(total) && J > aw)
                break;
        }
        return total;
    };
    const std::complex<double> ixy = series(detail::herm_inner(x, y));
    const double ixx = series(detail::herm_inner(x, x)).real();
    const double iyy = series(detail::herm_inner(y, y)).real();
    return std::norm(ixy) / (ixx * iyy);
}

struct BerezinReport {
    double cond1_max_deviation = 0.0;
    bool cond1_pass = false;
    double cond2_max_exp_neg_d = 0.0;
    bool cond2_bounds_pass = false;    // exp(-D) in [0, 1] on all pairs
    bool cond2_equality_pass = false;  // exp(-D) = 1 only at coincident pairs
    bool pass() const { return cond1_pass && cond2_bounds_pass && cond2_equality_pass; }
};

/// The two sufficient conditions for a Berezin quantization: constancy of the
/// epsilon function (delegated to balanced_check) and global e^{-D} <= 1 with
/// equality only on the diagonal.
inline BerezinReport berezin_condition_check(const QuantizationSetup& s,
                                             const std::vector<std::pair<CVec, CVec>>& sample_pairs,
                                             const std::vector<double>& t_grid,
                                             double cond1_tol = 1e-9) {
    if (sample_pairs.empty())
        throw domain_error("berezin_condition_check: no sample pairs");
    BerezinReport rep;
    rep.cond1_max_deviation = balanced_check(s, t_grid).max_rel_deviation;
    rep.cond1_pass = rep.cond1_max_deviation <= cond1_tol;
    rep.cond2_bounds_pass = true;
    rep.cond2_equality_pass = true;
    for (const auto& [x, y] : sample_pairs) {
        const DiastasisValue dv = diastasis_eval(s.potential, x, y);
        rep.cond2_max_exp_neg_d = std::max(rep.cond2_max_exp_neg_d, dv.exp_neg_d);
        if (!(dv.exp_neg_d >= 0.0 && dv.exp_neg_d <= 1.0 + 1e-14))
            rep.cond2_bounds_pass = false;
        double sep = 0.0;
        for (size_t i = 0; i < x.size(); ++i)
            sep = std::max(sep, std::abs(x[i] - y[i]));
        if (dv.exp_neg_d >= 1.0 - 1e-12 && sep > 1e-12)
            rep.cond2_equality_pass = false;
    }
    return rep;
}

/// Deterministic sample pairs in the annulus lo <= |z| <= hi (used by the CLI
/// and the acceptance suite; fixed seed keeps runs reproducible).
inline std::vector<std::pair<CVec, CVec>> random_annulus_pairs(int n, int count, double lo, double hi,
                                                               unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ur(lo / std::sqrt(static_cast<double>(n)),
                                              hi / std::sqrt(static_cast<double>(n)));
    std::uniform_real_distribution<double> uph(0.0, 2.0 * 3.14159265358979323846);
    auto draw = [&]() {
        CVec z(n);
        for (auto& zi : z)
            zi = std::polar(ur(rng), uph(rng));
        return z;
    };
    std::vector<std::pair<CVec, CVec>> pairs;
    pairs.reserve(count);
    for (int i = 0; i < count; ++i)
        pairs.emplace_back(draw(), draw());
    return pairs;
}

} // namespace kquant
