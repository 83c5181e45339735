#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kquant/potential.hpp"

using namespace kquant;

namespace {

// central-difference oracle for the derivative ladder
double fd_next(const RadialPotential& p, double t, int order, double h) {
    return (p(t - 2 * h, order) - 8 * p(t - h, order) + 8 * p(t + h, order) - p(t + 2 * h, order)) / (12 * h);
}

} // namespace

TEST_CASE("built-in potential values") {
    const auto sim = RadialPotential::simanca();
    CHECK(potential_value(sim, 1.0, 0) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(potential_value(sim, 2.0, 1) == Catch::Approx(1.5).epsilon(1e-15));
    const auto eh = RadialPotential::eguchi_hanson();
    // sqrt(2) - log(1 + sqrt(2))
    CHECK(potential_value(eh, 1.0, 0) == Catch::Approx(0.5328399753535520).epsilon(1e-14));
    const auto flat = RadialPotential::flat();
    CHECK(flat(3.7, 0) == 3.7);
    CHECK(flat(3.7, 1) == 1.0);
    CHECK(flat(3.7, 2) == 0.0);

    CHECK(flat.log_coefficient() == 0.0);
    CHECK(sim.log_coefficient() == 1.0);
    CHECK(eh.log_coefficient() == 1.0);

    CHECK_THROWS_AS(sim(0.0, 0), domain_error);
    CHECK_THROWS_AS(sim(-1.0, 1), domain_error);
    CHECK_THROWS_AS(sim(1.0, 5), domain_error);
}

TEST_CASE("derivative ladder consistency") {
    // finite differences of Phi^(i) match Phi^(i+1) on a log-spaced grid
    for (const auto& p : {RadialPotential::flat(), RadialPotential::simanca(), RadialPotential::eguchi_hanson()}) {
        for (int i = 0; i < 50; ++i) {
            const double t = 0.1 * std::pow(100.0, i / 49.0);
            for (int order = 0; order <= 3; ++order) {
                const double h = 1e-3 * t;
                const double a = fd_next(p, t, order, h);
                const double b = fd_next(p, t, order, h / 2);
                const double fd = (16 * b - a) / 15;
                const double exact = p(t, order + 1);
                CHECK(std::fabs(fd - exact) <= 1e-6 * std::max(1.0, std::fabs(exact)));
            }
        }
    }
}

TEST_CASE("log pole separation") {
    // Phi - c log t stays bounded down to t -> 0+
    for (const auto& p : {RadialPotential::simanca(), RadialPotential::eguchi_hanson()}) {
        for (double t = 1.0; t >= 1e-8; t *= 0.1)
            CHECK(std::fabs(p.smooth_part(t)) < 10.0);
    }
    const auto flat = RadialPotential::flat();
    for (double t = 1.0; t >= 1e-8; t *= 0.1)
        CHECK(std::fabs(flat(t, 0)) <= 1.0);
}

TEST_CASE("custom potential passthrough") {
    auto p = RadialPotential::custom(
        [](double t, int order) {
            switch (order) {
                case 0: return 2.0 * t;
                case 1: return 2.0;
                default: return 0.0;
            }
        },
        0.0);
    CHECK(p.kind() == PotentialKind::Custom);
    CHECK(p(5.0, 0) == 10.0);
    CHECK(p(5.0, 1) == 2.0);
    CHECK_THROWS_AS(RadialPotential::by_name("nope"), domain_error);
    CHECK(RadialPotential::by_name("eh").kind() == PotentialKind::EguchiHanson);
}
