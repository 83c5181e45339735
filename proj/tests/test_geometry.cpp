#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "kquant/geometry.hpp"

using namespace kquant;
using Cx = std::complex<double>;

namespace {

void check_field(double exact, double oracle, double rel = 1e-6, double abs_at_zero = 1e-8) {
    if (std::fabs(exact) < 1e-9)
        CHECK(std::fabs(oracle - exact) <= abs_at_zero);
    else
        CHECK(std::fabs(oracle - exact) <= rel * std::fabs(exact));
}

} // namespace

TEST_CASE("metric tensor at explicit points") {
    const auto sim = RadialPotential::simanca();
    SECTION("Simanca n=3 at (1,0,0) is diag(1,2,2)") {
        auto g = metric_at(sim, 3, {Cx(1, 0), Cx(0, 0), Cx(0, 0)});
        CHECK(std::abs(g(0, 0) - Cx(1, 0)) < 1e-15);
        CHECK(std::abs(g(1, 1) - Cx(2, 0)) < 1e-15);
        CHECK(std::abs(g(2, 2) - Cx(2, 0)) < 1e-15);
        CHECK(std::abs(g(0, 1)) < 1e-15);
        CHECK(g.is_positive_definite());
    }
    SECTION("flat metric is the identity") {
        auto g = metric_at(RadialPotential::flat(), 2, {Cx(3, 0), Cx(4, 0)});
        CHECK(std::abs(g(0, 0) - Cx(1, 0)) < 1e-15);
        CHECK(std::abs(g(1, 1) - Cx(1, 0)) < 1e-15);
        CHECK(std::abs(g(0, 1)) < 1e-15);
    }
    SECTION("Simanca n=2 at (1,1)") {
        // Phi' delta_ij + Phi'' zbar_i z_j at t = 2: diagonal picks up the
        // Phi''|z_i|^2 part, 3/2 - 1/4 = 5/4
        auto g = metric_at(sim, 2, {Cx(1, 0), Cx(1, 0)});
        CHECK(std::abs(g(0, 0) - Cx(1.25, 0)) < 1e-15);
        CHECK(std::abs(g(1, 1) - Cx(1.25, 0)) < 1e-15);
        CHECK(std::abs(g(0, 1) - Cx(-0.25, 0)) < 1e-15);
        CHECK(std::abs(g(1, 0) - Cx(-0.25, 0)) < 1e-15);
        CHECK(g.is_positive_definite());
    }
    CHECK_THROWS_AS(metric_at(sim, 2, {Cx(0, 0), Cx(0, 0)}), domain_error);

    SECTION("unitary invariance of det and trace") {
        // rotate (r, 0) by a phase-twisted Givens rotation
        const double r = 1.3, th = 0.73;
        const Cx a = std::polar(std::cos(th), 0.4), b = std::polar(std::sin(th), -1.1);
        std::vector<Cx> z{a * r, b * r};
        auto g_rot = metric_at(sim, 2, z);
        auto g_ax = metric_at(sim, 2, {Cx(r, 0), Cx(0, 0)});
        CHECK(g_rot.determinant().real() == Catch::Approx(g_ax.determinant().real()).epsilon(1e-12));
        const double tr_rot = (g_rot(0, 0) + g_rot(1, 1)).real();
        const double tr_ax = (g_ax(0, 0) + g_ax(1, 1)).real();
        CHECK(tr_rot == Catch::Approx(tr_ax).epsilon(1e-12));
        CHECK(g_rot.is_positive_definite());
    }

    SECTION("radial determinant identity") {
        for (const auto& p : {RadialPotential::flat(), RadialPotential::simanca(), RadialPotential::eguchi_hanson()})
            for (int n : {1, 2, 3, 4})
                for (double r : {0.3, 1.0, 2.7}) {
                    std::vector<Cx> z(n, Cx(0, 0));
                    z[0] = Cx(r / std::sqrt(2.0), r / std::sqrt(2.0)); // off-axis point
                    const double t = r * r;
                    const double p1 = p(t, 1), p2 = p(t, 2);
                    const double expect = std::pow(p1, n - 1) * (p1 + t * p2);
                    CHECK(metric_at(p, n, z).determinant().real()
                          == Catch::Approx(expect).epsilon(1e-12));
                }
    }
}

TEST_CASE("scalar curvature closed forms") {
    const auto sim = RadialPotential::simanca();
    CHECK(std::fabs(scalar_curvature_at(sim, 2, 1.7)) < 1e-14);
    // Ric = -dd log det g contracts to (n-1)(n-2)/(1+t)^2 for the Simanca family
    for (int n = 1; n <= 5; ++n)
        for (int i = 0; i < 20; ++i) {
            const double r = 0.05 * std::pow(400.0, i / 19.0);
            const double t = r * r;
            const double expect = (n - 1) * (n - 2) / ((1 + t) * (1 + t));
            CHECK(std::fabs(scalar_curvature_at(sim, n, r) - expect) < 1e-9);
        }
    CHECK(std::fabs(scalar_curvature_at(RadialPotential::flat(), 4, 2.0)) < 1e-14);
    // Eguchi-Hanson is Ricci flat: rho vanishes at every radius
    for (double r : {0.3, 0.7, 1.0, 1.9, 4.0})
        CHECK(std::fabs(scalar_curvature_at(RadialPotential::eguchi_hanson(), 2, r)) < 1e-10);
    CHECK_THROWS_AS(scalar_curvature_at(sim, 2, 0.0), domain_error);
}

TEST_CASE("curvature invariants") {
    SECTION("flat space vanishes identically") {
        auto rep = curvature_invariants_at(RadialPotential::flat(), 3, 1.0);
        CHECK(rep.rho == 0.0);
        CHECK(rep.norm_R_sq == 0.0);
        CHECK(rep.norm_Ric_sq == 0.0);
        CHECK(std::fabs(rep.laplacian_rho) < 1e-14);
        CHECK(rep.a1 == 0.0);
        CHECK(std::fabs(rep.a2) < 1e-14);
    }
    SECTION("Simanca n=2: scalar flat with |R|^2 = 4|Ric|^2, a1 = a2 = 0") {
        const auto sim = RadialPotential::simanca();
        for (double r : {0.5, 1.0, 2.0}) {
            auto rep = curvature_invariants_at(sim, 2, r);
            const double t = r * r;
            CHECK(std::fabs(rep.rho) < 1e-13);
            CHECK(std::fabs(rep.laplacian_rho) < 1e-9);
            CHECK(rep.norm_R_sq == Catch::Approx(8.0 / std::pow(1 + t, 4)).epsilon(1e-12));
            CHECK(rep.norm_Ric_sq == Catch::Approx(2.0 / std::pow(1 + t, 4)).epsilon(1e-12));
            CHECK(std::fabs(rep.norm_R_sq - 4.0 * rep.norm_Ric_sq) < 1e-13);
            CHECK(std::fabs(rep.a1) < 1e-13);
            CHECK(std::fabs(rep.a2) < 1e-9);
        }
    }
    SECTION("Eguchi-Hanson n=2: Ricci flat with |R|^2(r=1) = 3, a2 = 1/8") {
        auto rep = curvature_invariants_at(RadialPotential::eguchi_hanson(), 2, 1.0);
        CHECK(std::fabs(rep.rho) < 1e-13);
        CHECK(std::fabs(rep.norm_Ric_sq) < 1e-13);
        CHECK(rep.norm_R_sq == Catch::Approx(3.0).epsilon(1e-12));
        CHECK(rep.a2 == Catch::Approx(0.125).epsilon(1e-10));
        CHECK(rep.a2 > 0.0);
    }
    SECTION("report invariants") {
        for (double r : {0.6, 1.2}) {
            auto rep = curvature_invariants_at(RadialPotential::simanca(), 3, r);
            CHECK(rep.a1 == 0.5 * rep.rho);
            CHECK(rep.a2
                  == rep.laplacian_rho / 3.0
                         + (rep.norm_R_sq - 4.0 * rep.norm_Ric_sq + 3.0 * rep.rho * rep.rho) / 24.0);
            CHECK(rep.norm_R_sq >= 0.0);
            CHECK(rep.norm_Ric_sq >= 0.0);
        }
    }
}

TEST_CASE("finite-difference oracle agrees with the exact path") {
    // spot checks here; the full 3x3x3 grid runs in the acceptance suite
    const auto sim = RadialPotential::simanca();
    SECTION("flat") {
        auto e = curvature_invariants_at(RadialPotential::flat(), 2, 1.0);
        auto o = curvature_fd_oracle(RadialPotential::flat(), 2, 1.0);
        check_field(e.rho, o.rho);
        check_field(e.norm_R_sq, o.norm_R_sq);
        check_field(e.norm_Ric_sq, o.norm_Ric_sq);
        check_field(e.laplacian_rho, o.laplacian_rho);
    }
    SECTION("Simanca n=3 r=1: rho = +1/2 from both routes") {
        auto e = curvature_invariants_at(sim, 3, 1.0);
        auto o = curvature_fd_oracle(sim, 3, 1.0);
        CHECK(e.rho == Catch::Approx(0.5).epsilon(1e-12));
        check_field(e.rho, o.rho);
        check_field(e.norm_R_sq, o.norm_R_sq);
        check_field(e.norm_Ric_sq, o.norm_Ric_sq);
        check_field(e.laplacian_rho, o.laplacian_rho);
        check_field(e.a2, o.a2);
    }
    SECTION("Simanca n=2: the scalar-flat cancellation survives the oracle") {
        auto o = curvature_fd_oracle(sim, 2, 1.0);
        CHECK(std::fabs(o.rho) < 1e-8);
        CHECK(std::fabs(o.norm_R_sq - 4.0 * o.norm_Ric_sq) < 1e-6);
    }
    CHECK_THROWS_AS(curvature_fd_oracle(sim, 2, 0.0), domain_error);
}
