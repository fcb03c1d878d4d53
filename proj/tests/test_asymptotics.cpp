#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hltasep/asymptotics.hpp"

using namespace hltasep;

TEST(Profile, Anchors) {
    EXPECT_NEAR(c_profile(1, 1.0), std::log(2.0), 1e-15);
    EXPECT_NEAR(c_profile(2, 1.0), std::log(1.25), 1e-15);
    for (int k = 1; k <= 6; ++k) EXPECT_DOUBLE_EQ(c_profile(k, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(exp_neg_c(0, 3.0), 0.0);
    EXPECT_NEAR(exp_neg_c(1, 1.0), 0.5, 1e-15);
}

TEST(Profile, PositiveAndDecreasingInK) {
    for (double tau : {0.1, 1.0, 5.0, 50.0}) {
        double prev = INFINITY;
        for (int k = 1; k <= 10; ++k) {
            const double c = c_profile(k, tau);
            EXPECT_GT(c, 0.0);
            EXPECT_LT(c, prev);
            prev = c;
        }
    }
}

TEST(Profile, TelescopingSum) {
    for (double tau : {0.3, 2.0, 40.0, 700.0}) {
        double s = 0.0;
        for (int k = 1; k <= 12; ++k) {
            s += c_profile(k, tau);
            EXPECT_NEAR(s, log_exp_partial_sum(k, tau), 1e-12 * std::max(1.0, s));
        }
    }
    // S_k(tau) ~ tau^k / k! for large tau, so c_k ~ log(tau / k)
    EXPECT_NEAR(c_profile(3, 1e6), std::log(1e6 / 3.0), 1e-5);
}

TEST(Profile, SolvesOde) {
    EXPECT_LT(c_ode_residual(4, 5.0, 50, 1e-4), 1e-6);
}

TEST(Lln, PackedAtTimeZero) {
    const auto rows = lln_experiment(3, 0.0, {0.1}, 50, 1);
    for (const auto& r : rows) EXPECT_NEAR(r.mean, -0.1 * r.k, 1e-12);
}

TEST(Lln, GapShrinks) {
    const auto rows = lln_experiment(1, 1.0, {0.1, 0.05, 0.02}, 4000, 31);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_GT(std::abs(rows[0].gap), std::abs(rows[2].gap));
    EXPECT_LT(std::abs(rows[2].gap), 0.05);
    EXPECT_DOUBLE_EQ(rows[0].limit, c_profile(1, 1.0));
    EXPECT_THROW(lln_experiment(1, 1.0, {0.02, 0.1}, 10, 1), std::invalid_argument);
}

TEST(BulkCov, ClosedFormAndSymmetry) {
    EXPECT_NEAR(bulk_cov(0.0, 0.0), std::sqrt(std::numbers::pi) / 4.0, 1e-10);
    EXPECT_NEAR(bulk_cov(1.3, -0.4), bulk_cov(-0.4, 1.3), 1e-15);
    for (double d : {0.5, 1.0, 2.5})
        for (double a : {-1.0, 0.0, 3.0}) EXPECT_NEAR(bulk_cov(a, a + d), bulk_cov(0.0, d), 1e-12);
    // Watson: d^3 cov(0, d) -> Gamma(3) = 2
    EXPECT_NEAR(std::pow(30.0, 3) * bulk_cov(0.0, 30.0), 2.0, 0.04);
}

TEST(Bulk, DiagonalConvergence) {
    const auto rows = bulk_convergence({25, 100, 400, 1600}, 0.0, 0.0);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].gap, rows[i - 1].gap);
    EXPECT_LT(rows.back().gap, 0.05);
    EXPECT_EQ(rows.back().r, 1600);
    const double slope = log_log_slope(rows);
    RecordProperty("diagonal_slope", std::to_string(slope));
    EXPECT_LE(slope, -0.3);
}

TEST(Bulk, OffDiagonal) {
    const auto rows = bulk_convergence({1600}, 1.0, 0.0);
    EXPECT_EQ(rows[0].r, 1640);
    EXPECT_EQ(rows[0].s, 1600);
    EXPECT_LT(rows[0].gap, 0.10);
}

TEST(Bulk, RoundingVariantsAgree) {
    const auto f = bulk_convergence({400}, 0.53, 0.27, Rounding::Floor);
    const auto c = bulk_convergence({400}, 0.53, 0.27, Rounding::Ceil);
    EXPECT_NE(f[0].r, c[0].r);
    EXPECT_LT(std::abs(f[0].scaled - c[0].scaled), f[0].limit * 0.05);
    EXPECT_THROW(bulk_convergence({100}, 0.0, 1.0), std::invalid_argument);
}
