#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "hltasep/contour.hpp"
#include "hltasep/exact.hpp"
#include "hltasep/moment_integrals.hpp"
#include "hltasep/monte_carlo.hpp"

using namespace hltasep;

namespace {

ContourSpec circle(std::vector<double> radii, int nodes = 64) {
    ContourSpec s;
    s.radii = std::move(radii);
    s.nodes = nodes;
    return s;
}

}  // namespace

TEST(CircleIntegral, SingleResidues) {
    const auto a = circle_integral([](std::span<const cplx> z) { return std::exp(z[0]) / z[0]; }, circle({1.0}));
    EXPECT_NEAR(a.value, 1.0, 1e-14);
    EXPECT_TRUE(a.converged);
    EXPECT_LT(a.imag_residual, 1e-14);

    const auto b = circle_integral([](std::span<const cplx> z) { return 1.0 / (z[0] * z[0]); }, circle({1.0}));
    EXPECT_NEAR(b.value, 0.0, 1e-14);

    const double t = 0.5, tau = 1.0;
    const auto c = circle_integral(
        [&](std::span<const cplx> z) { return std::exp(tau * z[0]) * (1.0 + z[0] / t) / (z[0] * z[0]); }, circle({1.0}));
    EXPECT_NEAR(c.value, 1.0 + tau / t, 1e-13);
}

TEST(CircleIntegral, NestedTwoVariables) {
    // inner w circle inside z circle: residue at w = 0 leaves 1/z
    const auto r = circle_integral([](std::span<const cplx> v) { return 1.0 / (v[1] * (v[0] - v[1])); },
                                   circle({1.0, 0.4}));
    EXPECT_NEAR(r.value, 1.0, 1e-13);
    // swapping the radii puts the pole at w = z inside as well
    const auto s = circle_integral([](std::span<const cplx> v) { return 1.0 / (v[1] * (v[0] - v[1])); },
                                   circle({0.4, 1.0}));
    EXPECT_NEAR(s.value, 0.0, 1e-13);
}

TEST(CircleIntegral, ProductFormMatchesGrid) {
    ProductIntegrand f;
    f.dims = 2;
    f.single = [](int v, cplx z) { return std::exp(z) / std::pow(z, v + 2); };
    f.pair = [](int, int, cplx a, cplx b) { return a - b; };
    const auto spec = circle({1.5, 0.7}, 32);
    const auto p = product_integral(f, spec);
    const auto g = circle_integral(
        [](std::span<const cplx> z) { return std::exp(z[0]) / std::pow(z[0], 2) * std::exp(z[1]) / std::pow(z[1], 3) * (z[0] - z[1]); },
        spec);
    EXPECT_NEAR(p.value, g.value, 1e-14);
    // [z^0 e^z] [w^2 e^w] - [z^1 e^z][w^1 e^w]
    EXPECT_NEAR(p.value, 0.5 - 1.0, 1e-13);
}

TEST(CircleIntegral, ConvergenceFlag) {
    EXPECT_TRUE(richardson_converged(1.0, 1e-6, 1e-4));
    EXPECT_FALSE(richardson_converged(1.0, 1e-5, 2e-5));
    EXPECT_TRUE(richardson_converged(1.0, 1e-13, 1e-13));
    // a pole near the contour converges slowly
    const auto r = circle_integral([](std::span<const cplx> z) { return 1.0 / (z[0] * (1.02 - z[0])); }, circle({1.0}, 16));
    EXPECT_FALSE(r.converged);
}

TEST(CircleIntegral, SpecValidation) {
    EXPECT_THROW(circle({-1.0}).validate(), std::invalid_argument);
    EXPECT_THROW(circle({1.0}, 6).validate(), std::invalid_argument);
    EXPECT_THROW(circle({}).validate(), std::invalid_argument);
}

TEST(Moments, SingleGroupAnchors) {
    EXPECT_NEAR(t_moment_integral({1}, 0.5, 1.0).value, 3.0, 1e-12);
    EXPECT_NEAR(t_moment_integral({2}, 0.5, 1.0).value, 5.0, 1e-12);
    EXPECT_DOUBLE_EQ(t_moment_exact(2, 0.5, 1.0), 5.0);
}

TEST(Moments, SingleGroupGrid) {
    for (double t : {0.3, 0.5, 0.7})
        for (double tau : {0.5, 1.0, 2.0})
            for (int r = 1; r <= 3; ++r) {
                const auto q = t_moment_integral({r}, t, tau);
                const double exact = t_moment_exact(r, t, tau);
                EXPECT_NEAR(q.value, exact, 1e-8 * std::max(1.0, exact)) << t << " " << tau << " " << r;
                EXPECT_LT(q.imag_residual, 1e-8 * std::max(1.0, exact));
            }
}

TEST(Moments, TwoGroupsMatchMonteCarlo) {
    const double t = 0.5, tau = 1.0;
    const auto q = t_moment_integral({1, 1}, t, tau);
    const auto mc = moment_mc({1, 1}, t, tau, 50000, 4242);
    EXPECT_NEAR(mc.estimate, q.value, 3.0 * mc.std_error);
}

TEST(Moments, RadiusIndependence) {
    const std::vector<int> r{2, 1};
    const double t = 0.6, tau = 0.8;
    const auto base = default_moment_contour(r, t, tau);
    const double v = t_moment_integral(r, t, tau, base).value;
    for (double f : {0.9, 1.1}) {
        auto s = base;
        for (auto& x : s.radii) x *= f;
        EXPECT_NEAR(t_moment_integral(r, t, tau, s).value, v, 1e-9 * std::abs(v));
    }
}

TEST(Moments, NestingViolationRejected) {
    auto s = default_moment_contour({1, 1}, 0.5, 1.0);
    std::swap(s.radii[0], s.radii[1]);
    EXPECT_THROW(t_moment_integral({1, 1}, 0.5, 1.0, s), std::invalid_argument);
    EXPECT_THROW(t_moment_integral({3, 2}, 0.5, 1.0), std::invalid_argument);
    EXPECT_THROW(t_moment_integral({1}, 1.5, 1.0), std::domain_error);
}

TEST(Moments, VarianceShrinksAsTGoesToOne) {
    double prev = INFINITY;
    for (double t : {0.9, 0.99}) {
        for (int r = 1; r <= 2; ++r) {
            const double m1 = t_moment_integral({r}, t, 1.0).value;
            const double m2 = t_moment_integral({r, r}, t, 1.0).value;
            const double gap = std::abs(m2 - m1 * m1);
            if (r == 1) {
                EXPECT_LT(gap, prev);
                prev = gap;
            }
            EXPECT_GE(m2 - m1 * m1, -1e-9);
        }
    }
    EXPECT_LT(prev, 0.05);
}

TEST(FixedT, SingleResidueAnchor) {
    EXPECT_NEAR(fixed_t_limit_integral({1}, 0.5).value, 2.0, 1e-12);
}

TEST(FixedT, StableUnderDoubling) {
    const auto a = fixed_t_limit_integral({2}, 0.5, default_fixed_t_contour({2}, 0.5, 64));
    const auto b = fixed_t_limit_integral({2}, 0.5, default_fixed_t_contour({2}, 0.5, 128));
    EXPECT_NEAR(a.value, b.value, 1e-10);
}

TEST(FixedT, LargeTauLimitRate) {
    // tau^{-r} moment / limit = 1 + r t / tau + O(tau^{-2})
    const double t = 0.5;
    for (int r = 1; r <= 2; ++r) {
        const double lim = fixed_t_limit_integral({r}, t).value;
        double prev = INFINITY;
        for (double tau : {10.0, 100.0}) {
            const double ratio = t_moment_integral({r}, t, tau).value / std::pow(tau, r) / lim;
            EXPECT_LT(std::abs(ratio - 1.0), prev);
            prev = std::abs(ratio - 1.0);
            EXPECT_NEAR((ratio - 1.0) * tau, r * t, 2.0 * r * r / tau);
        }
    }
}

TEST(FixedT, LargeTauWithinTwoPercentAtSmallT) {
    const double t = 0.1;
    const double lim = fixed_t_limit_integral({1}, t).value;
    EXPECT_NEAR(t_moment_integral({1}, t, 10.0).value / 10.0 / lim, 1.0, 0.02);
    EXPECT_NEAR(t_moment_integral({1}, t, 100.0).value / 100.0 / lim, 1.0, 0.002);
}

TEST(FiniteTauCov, Anchors) {
    const double tau = 1.0;
    EXPECT_NEAR(finite_tau_cov(1, 1, tau).value, (tau * tau / 2 + tau) / ((tau + 1) * (tau + 1)), 1e-10);
    EXPECT_NEAR(finite_tau_cov(1, 1, 100.0).value, 0.5, 0.005);
    EXPECT_THROW(finite_tau_cov(1, 2, 1.0), std::invalid_argument);
    EXPECT_THROW(finite_tau_cov(5, 1, 1.0), std::invalid_argument);
}

TEST(FiniteTauCov, LargeTauApproachesStationaryTable) {
    const auto table = stationary_cov_table(3);
    for (int r = 1; r <= 3; ++r)
        for (int s = 1; s <= r; ++s) EXPECT_NEAR(cov_X(r, s, 200.0).value, table.value(r, s), 0.02) << r << s;
}

TEST(FiniteTauCov, MonteCarloVariance) {
    const auto mc = fluctuation_variance_mc(0.02, 1.0, 20000, 77);
    EXPECT_NEAR(mc.estimate, 0.375, 3.0 * mc.std_error);
}

TEST(DQuadrature, MatchesExact) {
    for (auto [r, s] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}, {3, 3}, {4, 2}}) {
        const auto q = D_quadrature(r, s);
        EXPECT_NEAR(q.value, D_exact(r, s).convert_to<double>(), 1e-8) << r << "," << s;
        EXPECT_TRUE(q.converged);
    }
    EXPECT_NEAR(D_quadrature(1, 1).value, 0.5, 1e-12);
    EXPECT_NEAR(D_quadrature(1, 2).value - D_quadrature(2, 1).value, 1.0, 1e-12);
    auto bad = default_D_contour(1, 1);
    std::swap(bad.radii[0], bad.radii[1]);
    EXPECT_THROW(D_quadrature(1, 1, bad), std::invalid_argument);
}
