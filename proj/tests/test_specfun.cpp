#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlse/specfun.hpp"
#include "oracles.hpp"

using nlse::EllipticModulus;
using nlse::erf_family;
using nlse::jacobi_elliptic;

TEST_CASE("jacobi triple at the trivial points") {
    for (const double m : {0.0, 0.3, 0.77, 1.0}) {
        const auto j = jacobi_elliptic(0.0, EllipticModulus(m));
        CHECK(j.sn == doctest::Approx(0.0).epsilon(0).scale(1));
        CHECK(j.cn == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(j.dn == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("degenerate moduli reduce to circular and hyperbolic functions") {
    for (const double u : {-3.0, -0.7, 0.4, 1.9, 6.0}) {
        const auto j0 = jacobi_elliptic(u, EllipticModulus(0.0));
        CHECK(std::abs(j0.sn - std::sin(u)) < 1e-14);
        CHECK(std::abs(j0.cn - std::cos(u)) < 1e-14);
        CHECK(std::abs(j0.dn - 1.0) < 1e-14);
        const auto j1 = jacobi_elliptic(u, EllipticModulus(1.0));
        CHECK(std::abs(j1.sn - std::tanh(u)) < 1e-14);
        CHECK(std::abs(j1.cn - 1.0 / std::cosh(u)) < 1e-14);
        CHECK(std::abs(j1.dn - 1.0 / std::cosh(u)) < 1e-14);
    }
}

TEST_CASE("frozen reference values (30-digit AGM)") {
    const auto j = jacobi_elliptic(1.0, EllipticModulus(0.5));
    CHECK(std::abs(j.sn - 0.803001824895643887639397342819) < 1e-12);
    CHECK(std::abs(j.cn - 0.595976567672140674021059874802) < 1e-12);
    CHECK(std::abs(j.dn - 0.823161001631596269446631646938) < 1e-12);

    const auto j2 = jacobi_elliptic(3.7, EllipticModulus(0.95));
    CHECK(std::abs(j2.sn - 0.981049672118950502371468435055) < 1e-12);
    CHECK(std::abs(j2.cn - (-0.193756395598441377783143711476)) < 1e-12);
    CHECK(std::abs(j2.dn - 0.292684922388453024306205844948) < 1e-12);

    CHECK(std::abs(nlse::elliptic_k(EllipticModulus(0.5)) - 1.8540746773013719184338503472) <
          1e-13);
}

TEST_CASE("pythagorean identities over random samples") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> udist(-20.0, 20.0);
    std::uniform_real_distribution<double> mdist(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double u = udist(rng);
        const double m = mdist(rng);
        const auto j = jacobi_elliptic(u, EllipticModulus(m));
        CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-12);
        CHECK(std::abs(j.dn * j.dn + m * j.sn * j.sn - 1.0) < 1e-12);
    }
}

TEST_CASE("agreement with an independently coded AGM oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> udist(-8.0, 8.0);
    std::uniform_real_distribution<double> mdist(0.02, 0.98);
    for (int i = 0; i < 500; ++i) {
        const double u = udist(rng);
        const double m = mdist(rng);
        const auto j = jacobi_elliptic(u, EllipticModulus(m));
        const auto ref = oracle::jacobi_agm(u, m);
        CHECK(std::abs(j.sn - ref.sn) < 1e-12);
        CHECK(std::abs(j.cn - ref.cn) < 1e-12);
        CHECK(std::abs(j.dn - ref.dn) < 1e-12);
    }
}

TEST_CASE("sn solves its defining ODE (RK4 oracle)") {
    // sn' = cn dn, cn' = -sn dn, dn' = -m sn cn from (0, 1, 1).
    const double m = 0.65;
    const oracle::OdeFn<3> f = [m](double, const std::array<double, 3>& y) {
        return std::array<double, 3>{y[1] * y[2], -y[0] * y[2], -m * y[0] * y[1]};
    };
    for (const double u : {0.5, 1.3, 2.9, 5.0}) {
        const auto y = oracle::rk4_integrate<3>(f, {0.0, 1.0, 1.0}, 0.0, u, 20000);
        const auto j = jacobi_elliptic(u, EllipticModulus(m));
        CHECK(std::abs(j.sn - y[0]) < 1e-10);
        CHECK(std::abs(j.cn - y[1]) < 1e-10);
        CHECK(std::abs(j.dn - y[2]) < 1e-10);
    }
}

TEST_CASE("periodicity sn(u + 4K) = sn(u)") {
    for (const double m : {0.1, 0.5, 0.9, 0.3897435897435896}) {
        const double k4 = 4.0 * nlse::elliptic_k(EllipticModulus(m));
        for (const double u : {-2.0, 0.3, 1.7, 3.1}) {
            const auto a = jacobi_elliptic(u, EllipticModulus(m));
            const auto b = jacobi_elliptic(u + k4, EllipticModulus(m));
            CHECK(std::abs(a.sn - b.sn) < 1e-10);
            CHECK(std::abs(a.cn - b.cn) < 1e-10);
        }
    }
}

TEST_CASE("modulus domain handling") {
    CHECK_THROWS_AS(jacobi_elliptic(1.0, EllipticModulus(1.5)), std::domain_error);
    CHECK_THROWS_AS(jacobi_elliptic(1.0, EllipticModulus(-0.2)), std::domain_error);
    CHECK_THROWS_AS(jacobi_elliptic(std::numeric_limits<double>::quiet_NaN(),
                                    EllipticModulus(0.5)),
                    std::domain_error);
    // tiny excursions from root arithmetic are clamped
    CHECK(EllipticModulus(1.0 + 5e-13).m == 1.0);
    CHECK(EllipticModulus(-5e-13).m == 0.0);
}

TEST_CASE("erf and erfi are odd and pinned at the frozen references") {
    const auto e0 = erf_family(0.0);
    CHECK(e0.erf == 0.0);
    CHECK(e0.erfi == 0.0);

    const auto e1 = erf_family(1.0);
    CHECK(std::abs(e1.erf - 0.842700792949714869341220635083) < 1e-14);
    CHECK(std::abs(e1.erfi - 1.65042575879754287602533772956) < 1e-13);
    CHECK(!e1.erfi_overflow);

    const auto e25 = erf_family(2.5);
    CHECK(std::abs(e25.erfi - 130.395755013246926813731530832) < 1e-10 * 130.0);

    for (const double x : {0.3, 1.7, 4.2, 9.0}) {
        const auto p = erf_family(x);
        const auto n = erf_family(-x);
        CHECK(p.erf + n.erf == 0.0);
        CHECK(p.erfi + n.erfi == 0.0);
    }
}

TEST_CASE("erf asymptote and erfi overflow cap") {
    CHECK(std::abs(erf_family(10.0).erf - 1.0) < 1e-15);
    const auto big = erf_family(30.0);
    CHECK(big.erfi_overflow);
    CHECK(big.erfi == std::numeric_limits<double>::max());
    const auto nbig = erf_family(-30.0);
    CHECK(nbig.erfi == -std::numeric_limits<double>::max());
}

TEST_CASE("erf/erfi match adaptive quadrature of the defining integrals") {
    const double two_over_sqrt_pi = 2.0 / std::sqrt(M_PI);
    for (const double x : {0.25, 0.5, 1.0, 2.0, 3.5, 5.5, 7.0}) {
        const auto pair = erf_family(x);
        const double erf_ref = two_over_sqrt_pi *
                               oracle::simpson_adaptive([](double s) { return std::exp(-s * s); },
                                                        0.0, x, 1e-15);
        const double erfi_ref = two_over_sqrt_pi *
                                oracle::simpson_adaptive([](double s) { return std::exp(s * s); },
                                                         0.0, x, 1e-15);
        CHECK(std::abs(pair.erf - erf_ref) < 1e-12);
        CHECK(std::abs(pair.erfi - erfi_ref) < 1e-12 * std::max(1.0, std::abs(erfi_ref)));
    }
}
