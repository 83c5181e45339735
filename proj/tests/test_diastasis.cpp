#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "kquant/diastasis.hpp"

using namespace kquant;
using Cx = std::complex<double>;

namespace {

CVec random_point(std::mt19937& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> ur(lo / std::sqrt(static_cast<double>(n)),
                                              hi / std::sqrt(static_cast<double>(n)));
    std::uniform_real_distribution<double> uph(0.0, 6.283185307179586);
    CVec z(n);
    for (auto& zi : z)
        zi = std::polar(ur(rng), uph(rng));
    return z;
}

} // namespace

TEST_CASE("diastasis closed forms") {
    const auto flat = RadialPotential::flat();
    const auto sim = RadialPotential::simanca();

    SECTION("flat: squared distance") {
        DiastasisValue d = diastasis_eval(flat, {Cx(1, 0), Cx(0, 0)}, {Cx(0, 0), Cx(1, 0)});
        CHECK(d.d == Catch::Approx(2.0).epsilon(1e-14));
        CHECK(d.exp_neg_d == Catch::Approx(std::exp(-2.0)).epsilon(1e-14));
    }
    SECTION("diagonal vanishing") {
        DiastasisValue d = diastasis_eval(sim, {Cx(2, 0), Cx(1, 0)}, {Cx(2, 0), Cx(1, 0)});
        CHECK(std::fabs(d.d) < 1e-13);
        CHECK(d.exp_neg_d == Catch::Approx(1.0).epsilon(1e-13));
    }
    SECTION("cut locus: orthogonal points blow up") {
        DiastasisValue d = diastasis_eval(sim, {Cx(1, 0), Cx(0, 0)}, {Cx(0, 0), Cx(1, 0)});
        CHECK(std::isinf(d.d));
        CHECK(d.exp_neg_d == 0.0);
    }
    CHECK_THROWS_AS(diastasis_eval(sim, {Cx(0, 0), Cx(0, 0)}, {Cx(1, 0), Cx(0, 0)}), domain_error);
    CHECK_THROWS_AS(diastasis_eval(RadialPotential::eguchi_hanson(), {Cx(1, 0)}, {Cx(1, 0)}), domain_error);
}

TEST_CASE("diastasis properties on random pairs") {
    std::mt19937 rng(12345);
    const auto sim = RadialPotential::simanca();
    const auto flat = RadialPotential::flat();
    SECTION("symmetry and bounds, 500 pairs") {
        for (int i = 0; i < 500; ++i) {
            const CVec x = random_point(rng, 2, 0.1, 5.0);
            const CVec y = random_point(rng, 2, 0.1, 5.0);
            for (const auto& p : {flat, sim}) {
                DiastasisValue a = diastasis_eval(p, x, y);
                DiastasisValue b = diastasis_eval(p, y, x);
                CHECK(a.exp_neg_d == Catch::Approx(b.exp_neg_d).margin(1e-15));
                CHECK(a.exp_neg_d >= 0.0);
                CHECK(a.exp_neg_d <= 1.0 + 1e-14);
            }
        }
    }
    SECTION("equality only at coincidence: perturbed pairs stay below 1") {
        for (int i = 0; i < 50; ++i) {
            CVec x = random_point(rng, 2, 0.5, 3.0);
            CVec y = x;
            y[i % 2] += Cx(1e-3, 0);
            DiastasisValue d = diastasis_eval(sim, x, y);
            CHECK(d.exp_neg_d < 1.0 - 1e-8);
        }
    }
    SECTION("hereditary identity against the truncated embedding, 50 pairs") {
        for (int i = 0; i < 50; ++i) {
            const CVec x = random_point(rng, 2, 0.2, 2.0);
            const CVec y = random_point(rng, 2, 0.2, 2.0);
            const double closed = diastasis_eval(sim, x, y).exp_neg_d;
            const double embedded = simanca_embedding_expnegd(x, y);
            CHECK(std::fabs(closed - embedded) <= 1e-8);
        }
    }
}

TEST_CASE("Berezin sufficient conditions") {
    std::vector<double> grid;
    for (int i = 0; i < 40; ++i)
        grid.push_back(0.01 * std::pow(2500.0, i / 39.0));

    SECTION("Simanca n=2 passes both conditions for m = 1..5") {
        for (int m = 1; m <= 5; ++m) {
            QuantizationSetup s(2, m, RadialPotential::simanca());
            auto pairs = random_annulus_pairs(2, 200, 0.1, 5.0, 99 + m);
            BerezinReport rep = berezin_condition_check(s, pairs, grid);
            CHECK(rep.cond1_pass);
            CHECK(rep.cond2_bounds_pass);
            CHECK(rep.cond2_equality_pass);
            CHECK(rep.pass());
        }
    }
    SECTION("Simanca n=3 fails condition 1") {
        QuantizationSetup s(3, 1, RadialPotential::simanca());
        auto pairs = random_annulus_pairs(3, 20, 0.1, 5.0, 7);
        BerezinReport rep = berezin_condition_check(s, pairs, grid);
        CHECK_FALSE(rep.cond1_pass);
        CHECK(rep.cond1_max_deviation > 1e-3);
    }
    SECTION("flat n=2 passes") {
        QuantizationSetup s(2, 1, RadialPotential::flat());
        auto pairs = random_annulus_pairs(2, 100, 0.1, 5.0, 21);
        CHECK(berezin_condition_check(s, pairs, grid).pass());
    }
    QuantizationSetup s(2, 1, RadialPotential::simanca());
    CHECK_THROWS_AS(berezin_condition_check(s, {}, grid), domain_error);
}
