#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lw/errors.hpp"
#include "lw/oracles.hpp"
#include "lw/state.hpp"
#include "lw/theta.hpp"
#include "lw/wigner.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace lw;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

const std::vector<double> kProbeK = {-kPi,  -2.4, -1.1, -0.5, 0.0,
                                     0.333, 1.0,  2.2,  3.0};

PureState pair_state(int n1, int n2, cplx c2) {
    const std::vector<PureState> parts{make_delta(n1), make_delta(n2)};
    const std::vector<cplx> c{{1.0, 0.0}, c2};
    return superpose(parts, c);
}

double grid_dev(const WignerGrid& g, auto&& oracle) {
    double dev = 0.0;
    for (int m = g.m_min(); m <= g.m_max(); ++m)
        for (int j = 0; j < g.n_k(); ++j)
            dev = std::max(dev, std::fabs(oracle(PhasePoint(m, g.k_at(j))) -
                                          g.value(m, j)));
    return dev;
}

} // namespace

TEST_CASE("single-site closed form") {
    for (double k : kProbeK) {
        CHECK(oracle_delta(0, {0, k}) == doctest::Approx(1.0 / kTwoPi).epsilon(1e-15));
        CHECK(oracle_delta(0, {1, k}) == 0.0);
        CHECK(oracle_delta(0, {-1, k}) == 0.0);
        CHECK(oracle_delta(3, {6, k}) == doctest::Approx(1.0 / kTwoPi).epsilon(1e-15));
        CHECK(oracle_delta(3, {5, k}) == 0.0);
    }
}

TEST_CASE("gaussian closed form against the grid") {
    for (const GaussianParams p :
         {GaussianParams{0, 2.0, 0.0}, GaussianParams{3, 2.0, kPi / 3.0}}) {
        const WignerGrid g = wigner_grid(to_density(make_gaussian(p)), 128);
        CHECK(grid_dev(g, [&](const PhasePoint& pt) {
                  return oracle_gaussian(p, pt);
              }) < 1e-10);
    }
}

TEST_CASE("gaussian closed form properties") {
    // peak value is exactly the positive cap
    CHECK(oracle_gaussian({0, 1.3, 0.0}, {0, 0.0}) ==
          doctest::Approx(1.0 / kTwoPi).epsilon(1e-14));

    // center shift moves the pattern two rows per site
    const GaussianParams base{0, 1.1, 0.7}, moved{4, 1.1, 0.7};
    for (double k : kProbeK)
        for (int m : {-3, -1, 0, 2, 5})
            CHECK(oracle_gaussian(moved, {m + 8, k}) ==
                  doctest::Approx(oracle_gaussian(base, {m, k})).epsilon(1e-13));

    // the theta factor overflows when the row is far outside the packet
    CHECK_THROWS_AS(oracle_gaussian({0, 0.25, 0.0}, {40, 0.0}), NumericsError);
    CHECK_THROWS_AS(oracle_gaussian({0, -1.0, 0.0}, {0, 0.0}), SpecError);
}

TEST_CASE("two-site closed form") {
    // widely separated pair: strips at m = +-8, fringe on the center row
    for (double k : kProbeK) {
        CHECK(oracle_two_delta(4, -4, {1.0, 0.0}, {0, k}) ==
              doctest::Approx(std::cos(8.0 * k) / kTwoPi).epsilon(1e-14));
        CHECK(oracle_two_delta(4, -4, {1.0, 0.0}, {8, k}) ==
              doctest::Approx(1.0 / (2.0 * kTwoPi)).epsilon(1e-14));
        CHECK(oracle_two_delta(4, -4, {1.0, 0.0}, {-8, k}) ==
              doctest::Approx(1.0 / (2.0 * kTwoPi)).epsilon(1e-14));
        CHECK(oracle_two_delta(4, -4, {1.0, 0.0}, {1, k}) == 0.0);
        CHECK(oracle_two_delta(4, -4, {1.0, 0.0}, {2, k}) == 0.0);
    }
    CHECK(oracle_two_delta(4, -4, {1.0, 0.0}, {0, 0.0}) ==
          doctest::Approx(1.0 / kTwoPi).epsilon(1e-14));

    const cplx alpha = std::polar(0.6, 1.1);
    const WignerGrid g = wigner_grid(to_density(pair_state(0, 5, alpha)), 64);
    CHECK(grid_dev(g, [&](const PhasePoint& pt) {
              return oracle_two_delta(0, 5, alpha, pt);
          }) < 1e-12);

    CHECK_THROWS_AS(oracle_two_delta(3, 3, cplx{1.0, 0.0}, {0, 0.0}), SpecError);
}

TEST_CASE("two-site filtered negativity closed form") {
    CHECK(oracle_eta_two_delta({1.0, 0.0}) ==
          doctest::Approx(0.63661977236758138).epsilon(1e-15));
    CHECK(oracle_eta_two_delta(std::polar(1.0, 2.3)) ==
          doctest::Approx(2.0 / kPi).epsilon(1e-15));
    CHECK(oracle_eta_two_delta({0.0, 0.0}) == 0.0);
    CHECK(oracle_eta_two_delta({2.0, 0.0}) ==
          doctest::Approx(8.0 / (5.0 * kPi)).epsilon(1e-15));
    CHECK(oracle_eta_two_delta({0.0, 0.5}) ==
          doctest::Approx(8.0 / (5.0 * kPi)).epsilon(1e-15));
}

TEST_CASE("symmetric pair of packets against the grid") {
    const int n0 = 6;
    const double st = 1.5;
    const std::vector<PureState> parts{make_gaussian({n0, st, 0.0}),
                                       make_gaussian({-n0, st, 0.0})};
    const std::vector<cplx> c{{1.0, 0.0}, {1.0, 0.0}};
    const WignerGrid g = wigner_grid(to_density(superpose(parts, c)), 128);
    CHECK(grid_dev(g, [&](const PhasePoint& pt) {
              return oracle_two_gaussian_symmetric(n0, st, pt);
          }) < 1e-9);

    // degenerate centers collapse to the single packet
    for (double k : kProbeK)
        for (int m : {-2, -1, 0, 1, 3})
            CHECK(oracle_two_gaussian_symmetric(0, 1.2, {m, k}) ==
                  doctest::Approx(oracle_gaussian({0, 1.2, 0.0}, {m, k}))
                      .epsilon(1e-14));
}

TEST_CASE("narrow packets approach the two-site pattern") {
    // centers +-1; compare on the support rows as the width shrinks
    double prev_even = 1e300, prev_odd = 1e300;
    for (double st : {0.5, 0.35, 0.25}) {
        double dev_even = 0.0, dev_odd = 0.0;
        for (double k : kProbeK) {
            for (int m : {-2, 0, 2})
                dev_even = std::max(
                    dev_even,
                    std::fabs(oracle_two_gaussian_symmetric(1, st, {m, k}) -
                              oracle_two_delta(1, -1, {1.0, 0.0}, {m, k})));
            for (int m : {-1, 1})
                dev_odd = std::max(
                    dev_odd, std::fabs(oracle_two_gaussian_symmetric(1, st, {m, k})));
        }
        CHECK(dev_even < prev_even);
        CHECK(dev_odd < prev_odd);
        prev_even = dev_even;
        prev_odd = dev_odd;
    }
    CHECK(prev_even < 1e-6);
    CHECK(prev_odd < 1e-3);
}

TEST_CASE("general two-packet transform") {
    // reduces to the symmetric special case
    const TwoGaussianParams sym{5, -5, 1.4, 1.4, 0.0, 0.0, {1.0, 0.0}};
    for (double k : kProbeK)
        for (int m : {-10, -3, 0, 1, 7, 10})
            CHECK(oracle_two_gaussian(sym, {m, k}) ==
                  doctest::Approx(oracle_two_gaussian_symmetric(5, 1.4, {m, k}))
                      .epsilon(1e-12));

    // zero weight on the second component leaves the first packet
    const TwoGaussianParams off{2, -1, 1.1, 0.8, 0.5, -0.9, {0.0, 0.0}};
    for (double k : kProbeK)
        for (int m : {0, 3, 4, 5})
            CHECK(oracle_two_gaussian(off, {m, k}) ==
                  doctest::Approx(oracle_gaussian({2, 1.1, 0.5}, {m, k}))
                      .epsilon(1e-13));

    // swapping the labels conjugates the crossed term; unit weight keeps the
    // normalizing sum symmetric under the swap
    const TwoGaussianParams pc{2, -1, 1.1, 0.8, 0.5, -0.9, {1.0, 0.0}};
    const TwoGaussianParams swapped{-1, 2, 0.8, 1.1, -0.9, 0.5, {1.0, 0.0}};
    for (double k : kProbeK)
        for (int m : {-2, 0, 1, 4}) {
            const cplx a = oracle_two_gaussian_cross(pc, {m, k});
            const cplx b = oracle_two_gaussian_cross(swapped, {m, k});
            CHECK(std::abs(b - std::conj(a)) < 1e-14);
        }

    // full assembly against the numerical transform of the same state;
    // the closed form weighs unit-peak profiles, so rescale alpha by the
    // per-profile norms before superposing normalized states
    const TwoGaussianParams p{2, -1, 1.1, 0.8, 0.5, -0.9, std::polar(0.7, 0.6)};
    const double c1 = std::sqrt(theta3({0.0, 0.0}, std::exp(-1.0 / (1.1 * 1.1))).value.real());
    const double c2 = std::sqrt(theta3({0.0, 0.0}, std::exp(-1.0 / (0.8 * 0.8))).value.real());
    const std::vector<PureState> parts{make_gaussian({2, 1.1, 0.5}),
                                       make_gaussian({-1, 0.8, -0.9})};
    const std::vector<cplx> coeffs{{1.0, 0.0}, p.alpha * c2 / c1};
    const WignerGrid g = wigner_grid(to_density(superpose(parts, coeffs)), 128);
    CHECK(grid_dev(g, [&](const PhasePoint& pt) {
              return oracle_two_gaussian(p, pt);
          }) < 1e-9);
}

TEST_CASE("half-zone shift alternates row signs in every closed form") {
    for (double k : {-2.0, -0.4, 0.9}) {
        for (int m : {-3, -2, 0, 1, 4}) {
            const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
            CHECK(oracle_gaussian({1, 1.3, 0.4}, {m, k + kPi}) ==
                  doctest::Approx(sgn * oracle_gaussian({1, 1.3, 0.4}, {m, k}))
                      .epsilon(1e-12));
            CHECK(oracle_two_delta(2, -1, {0.4, 0.3}, {m, k + kPi}) ==
                  doctest::Approx(sgn * oracle_two_delta(2, -1, {0.4, 0.3}, {m, k}))
                      .epsilon(1e-12));
            CHECK(oracle_two_gaussian_symmetric(2, 0.9, {m, k + kPi}) ==
                  doctest::Approx(sgn * oracle_two_gaussian_symmetric(2, 0.9, {m, k}))
                      .epsilon(1e-12));
        }
    }
}
