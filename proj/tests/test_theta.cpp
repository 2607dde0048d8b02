#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lw/errors.hpp"
#include "lw/theta.hpp"

#include <cmath>
#include <complex>
#include <random>

using lw::theta3;
using cplx = std::complex<double>;

TEST_CASE("known values") {
    CHECK(theta3(cplx{0.0, 0.0}, 0.0).value.real() == 1.0);
    CHECK(theta3(cplx{0.0, 0.0}, 0.5).value.real() ==
          doctest::Approx(2.1289368272118772).epsilon(1e-14));
    CHECK(theta3(cplx{0.0, 0.0}, std::exp(-0.25)).value.real() ==
          doctest::Approx(3.5449077018110321).epsilon(1e-14));
}

TEST_CASE("matches a direct partial sum") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uz(-3.0, 3.0), uy(-0.6, 0.6),
        uq(0.05, 0.8);
    for (int trial = 0; trial < 40; ++trial) {
        const cplx z{uz(rng), uy(rng)};
        const double q = uq(rng);
        cplx ref{1.0, 0.0};
        for (int n = 1; n <= 80; ++n)
            ref += 2.0 * std::pow(q, static_cast<double>(n) * n) *
                   std::cos(2.0 * static_cast<double>(n) * z);
        const cplx got = theta3(z, q).value;
        CHECK(std::abs(got - ref) < 1e-12 * (1.0 + std::abs(ref)));
    }
}

TEST_CASE("even in z, bitwise") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uz(-4.0, 4.0), uy(-1.0, 1.0),
        uq(0.0, 0.9);
    for (int trial = 0; trial < 50; ++trial) {
        const cplx z{uz(rng), uy(rng)};
        const double q = uq(rng);
        const cplx a = theta3(z, q).value;
        const cplx b = theta3(-z, q).value;
        CHECK(a.real() == b.real());
        CHECK(a.imag() == b.imag());
    }
}

TEST_CASE("periodic in z with period pi") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uz(-2.0, 2.0), uy(-0.5, 0.5),
        uq(0.1, 0.8);
    for (int trial = 0; trial < 30; ++trial) {
        const cplx z{uz(rng), uy(rng)};
        const double q = uq(rng);
        const cplx a = theta3(z, q).value;
        const cplx b = theta3(z + std::acos(-1.0), q).value;
        CHECK(std::abs(a - b) < 1e-12 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("real and positive on the real axis") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uz(-10.0, 10.0), uq(0.0, 0.95);
    for (int trial = 0; trial < 60; ++trial) {
        const auto r = theta3(cplx{uz(rng), 0.0}, uq(rng));
        CHECK(r.value.imag() == 0.0);
        CHECK(r.value.real() > 0.0);
    }
}

TEST_CASE("reported tail bound is honest") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> uz(-2.0, 2.0), uy(-1.5, 1.5),
        uq(0.3, 0.9);
    for (int trial = 0; trial < 30; ++trial) {
        const cplx z{uz(rng), uy(rng)};
        const double q = uq(rng);
        const auto coarse = theta3(z, q, 1e-8);
        const auto fine = theta3(z, q, 1e-15);
        CHECK(std::abs(coarse.value - fine.value) <=
              coarse.tail_bound + 1e-13 * std::abs(fine.value));
        CHECK(coarse.tail_bound <= 1e-8 * std::max(1.0, std::abs(coarse.value)));
        CHECK(coarse.terms_used >= 2);
        CHECK(fine.terms_used >= coarse.terms_used);
    }
}

TEST_CASE("large imaginary arguments avoid intermediate overflow") {
    // climb the quasi-period ladder: theta3(z_low + i k lam) =
    // q^{-k^2} e^{-2 i k z_low} theta3(z_low) for q = exp(-lam)
    const double lam = 1.2;
    const double q = std::exp(-lam);
    const int steps = 17;
    const cplx z_low{0.3, 0.2};
    const cplx z{z_low.real(), z_low.imag() + steps * lam};
    const cplx direct = theta3(z, q).value;
    CHECK(std::isfinite(direct.real()));
    CHECK(std::isfinite(direct.imag()));
    const cplx expected = std::exp(lam * steps * steps) *
                          std::exp(cplx{0.0, -2.0 * steps} * z_low) *
                          theta3(z_low, q).value;
    CHECK(std::abs(direct - expected) / std::abs(expected) < 1e-9);
}

TEST_CASE("rejections") {
    CHECK_THROWS_AS(theta3(cplx{0.0, 0.0}, 1.0), lw::SpecError);
    CHECK_THROWS_AS(theta3(cplx{0.0, 0.0}, -0.1), lw::SpecError);
    CHECK_THROWS_AS(theta3(cplx{0.0, 0.0}, 1.5), lw::SpecError);
    CHECK_THROWS_AS(theta3(cplx{0.0, 0.0}, 0.5, -1e-3), lw::SpecError);
    // nome so close to 1 the series cannot finish within the term cap
    CHECK_THROWS_AS(theta3(cplx{0.3, 0.0}, 1.0 - 1e-12), lw::NumericsError);
    // peak term magnitude far beyond double range
    CHECK_THROWS_AS(theta3(cplx{0.0, 60.0}, std::exp(-0.1)), lw::NumericsError);
}
