#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "kquant/blowup.hpp"

using namespace kquant;
using Cx = std::complex<double>;

TEST_CASE("chart potentials") {
    CHECK(chart_pullback_potential(1, {Cx(1, 0), Cx(0, 0)}) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(chart_pullback_potential(1, {Cx(0, 0), Cx(5, 0)}) == Catch::Approx(std::log(26.0)).epsilon(1e-15));
    CHECK(chart_pullback_potential(2, {Cx(1, 0), Cx(1, 0)}) == Catch::Approx(2.0 + std::log(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(chart_pullback_potential(3, {Cx(1, 0), Cx(0, 0)}), domain_error);

    SECTION("chart potential minus the Simanca potential is pluriharmonic") {
        // on the overlap the chart-1 potential equals t + log t - log|w1|^2
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        for (int i = 0; i < 50; ++i) {
            Cx w1(u(rng), u(rng)), w2(u(rng), u(rng));
            if (std::abs(w1) < 0.1 || std::abs(w2) < 0.1)
                continue;
            const double t = std::norm(w1) * (1.0 + std::norm(w2));
            const double expect = t + std::log(t) - std::log(std::norm(w1));
            CHECK(chart_pullback_potential(1, {w1, w2}) == Catch::Approx(expect).epsilon(1e-13));
        }
    }
}

TEST_CASE("chart transition consistency") {
    CHECK(chart_transition_check({Cx(1, 0), Cx(1, 0)}) <= 1e-8);
    CHECK(chart_transition_check({Cx(2, 0), Cx(0.5, 0)}) <= 1e-8);
    CHECK(chart_transition_check({Cx(0.7, 0.2), Cx(-0.4, 1.1)}) <= 1e-8);
    CHECK_THROWS_AS(chart_transition_check({Cx(1, 0), Cx(0, 0)}), domain_error);
    CHECK_THROWS_AS(chart_transition_check({Cx(0, 0), Cx(1, 0)}), domain_error);

    SECTION("random overlap points") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(0.3, 1.7);
        std::uniform_real_distribution<double> ph(0.0, 6.283185307179586);
        for (int i = 0; i < 20; ++i) {
            const Cx w1 = std::polar(u(rng), ph(rng));
            const Cx w2 = std::polar(u(rng), ph(rng));
            CHECK(chart_transition_check({w1, w2}) <= 1e-8);
        }
    }
}

TEST_CASE("exceptional divisor slice") {
    auto rep = divisor_slice_smoothness(1.0, 20);
    CHECK(rep.max_abs_value <= 2.0);  // |w1|^2 on [-1,1]
    CHECK(rep.max_abs_d1 <= 3.0);
    CHECK(rep.max_abs_d2 <= 3.0);     // second derivative of x^2 is 2
    CHECK(std::isfinite(rep.max_abs_d2));
}
