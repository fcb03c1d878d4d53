#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hltasep/asymptotics.hpp"
#include "hltasep/exact.hpp"
#include "hltasep/sde.hpp"

using namespace hltasep;

namespace {

SDEConfig z_config(int n, double horizon, long long paths, std::uint64_t seed) {
    SDEConfig c;
    c.system = SDESystem::Z;
    c.n = n;
    c.horizon = horizon;
    c.paths = paths;
    c.seed = seed;
    return c;
}

}  // namespace

TEST(Sde, CoefficientsOfBothSystems) {
    Eigen::MatrixXd M;
    Eigen::VectorXd sigma;
    sde_coefficients(SDESystem::Z, 3, 0.0, M, sigma);
    EXPECT_DOUBLE_EQ(M(1, 0), 1.0);
    EXPECT_DOUBLE_EQ(M(2, 1), 2.0);
    EXPECT_DOUBLE_EQ(M(2, 2), -3.0);
    EXPECT_DOUBLE_EQ(M(0, 2), 0.0);
    EXPECT_DOUBLE_EQ(sigma(1), 1.0);
    sde_coefficients(SDESystem::X, 2, 1.0, M, sigma);
    EXPECT_NEAR(M(0, 0), -0.5, 1e-15);
    EXPECT_NEAR(M(1, 0), 0.5, 1e-15);
    EXPECT_NEAR(M(1, 1), -0.8, 1e-15);
    EXPECT_NEAR(sigma(0), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(sigma(1), std::sqrt(0.3), 1e-15);
}

TEST(Sde, ZeroNoiseStaysAtRest) {
    auto c = z_config(4, 1.0, 10, 3);
    c.noise = false;
    const auto e = em_integrate(c);
    EXPECT_DOUBLE_EQ(e.terminal.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Sde, OrnsteinUhlenbeckVariance) {
    auto c = z_config(1, 5.0, 10000, 11);
    const auto e = em_integrate(c);
    EXPECT_NEAR(e.covariance(0, 0), 0.5, 3.0 * e.cov_std_error(0, 0) + 2.0 * c.dt);
}

TEST(Sde, RelaxationFromZero) {
    auto c = z_config(1, 2.0, 10000, 12);
    c.checkpoints = {0.25, 0.5, 1.0};
    const auto e = em_integrate(c);
    ASSERT_EQ(e.checkpoint_cov.size(), 3u);
    double prev = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double T = e.checkpoint_times[i];
        const double v = e.checkpoint_cov[i](0, 0);
        EXPECT_GT(v, prev);
        prev = v;
        const double target = (1.0 - std::exp(-2.0 * T)) / 2.0;
        EXPECT_NEAR(v, target, 3.0 * std::sqrt(2.0 / c.paths) * target + 2.0 * c.dt);
    }
    EXPECT_GT(e.covariance(0, 0), prev);
}

TEST(Sde, SeedDeterminismAndTriangularStructure) {
    const auto table = stationary_cov_table(4).matrix();
    const auto a = em_integrate(z_config(2, 0.5, 300, 5), table);
    const auto b = em_integrate(z_config(2, 0.5, 300, 5), table);
    const auto big = em_integrate(z_config(4, 0.5, 300, 5), table);
    EXPECT_EQ(a.terminal, b.terminal);
    EXPECT_EQ(a.terminal, big.terminal.leftCols(2));
    const auto other = em_integrate(z_config(2, 0.5, 300, 6), table);
    EXPECT_NE(a.terminal, other.terminal);
}

TEST(Sde, InitialCovarianceChecks) {
    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 2.0, 2.0, 1.0;
    EXPECT_THROW(em_integrate(z_config(2, 0.1, 10, 1), bad), std::invalid_argument);
    EXPECT_THROW(em_integrate(z_config(3, 0.1, 10, 1), Eigen::MatrixXd::Identity(2, 2)), std::invalid_argument);
    auto c = z_config(3, 0.1, 10, 1);
    c.dt = 0.05;
    EXPECT_TRUE(em_integrate(c).stiffness_warning);
    EXPECT_FALSE(em_integrate(z_config(3, 0.1, 10, 1)).stiffness_warning);
}

TEST(Sde, EulerBiasHalvesWithStep) {
    // EM stationary variance of the OU chain is 1/(2 - dt)
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(1, 1);
    const double b2 = em_covariance_recursion(1, 2e-3, 20000, zero)(0, 0) - 0.5;
    const double b1 = em_covariance_recursion(1, 1e-3, 40000, zero)(0, 0) - 0.5;
    EXPECT_NEAR(b2, 1.0 / (2.0 - 2e-3) - 0.5, 1e-12);
    EXPECT_NEAR(b2 / b1, 2.0, 0.01);
    // stationary table is not exactly EM-stationary; the drift is O(dt)
    const Eigen::MatrixXd A = stationary_cov_table(3).matrix();
    const double drift = (em_covariance_recursion(3, 1e-3, 2000, A) - A).cwiseAbs().maxCoeff();
    EXPECT_LT(drift, 3e-3);
}

TEST(Sde, StationarityReports) {
    const auto one = stationarity_test(1, 2.0, 1e-3, 10000, 21);
    EXPECT_TRUE(one.within_allowance);
    EXPECT_NEAR(one.target(0, 0), 0.5, 0.0);
    const auto three = stationarity_test(3, 1.0, 1e-3, 4000, 22);
    EXPECT_TRUE(three.within_allowance);
    EXPECT_LT(three.max_gap, 0.05);
    EXPECT_THROW(stationarity_test(9, 1.0, 1e-3, 10, 1), std::invalid_argument);
}

TEST(Sde, XSystemReachesStationaryTable) {
    SDEConfig c;
    c.system = SDESystem::X;
    c.n = 3;
    c.tau0 = 0.5;
    c.horizon = 20.0;
    c.dt = 1e-2;
    c.paths = 10000;
    c.seed = 8;
    const auto e = em_integrate(c);
    const Eigen::MatrixXd A = stationary_cov_table(3).matrix();
    EXPECT_LT((e.covariance - A).cwiseAbs().maxCoeff(), 0.03);
    const auto ode = x_cov_ode_integrate(3, 0.5, 20.0, 1e-3);
    EXPECT_LT((ode.final_value() - A).cwiseAbs().maxCoeff(), 0.03);
}

TEST(CovOde, ScalarClosedForm) {
    const auto tr = cov_ode_integrate(1, 2.0, 1e-4, std::nullopt, 8);
    ASSERT_GE(tr.times.size(), 2u);
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        EXPECT_NEAR(tr.values[i](0, 0), (1.0 - std::exp(-2.0 * tr.times[i])) / 2.0, 1e-6);
    EXPECT_DOUBLE_EQ(tr.times.back(), 2.0);
}

TEST(CovOde, RelaxesToTable) {
    const Eigen::MatrixXd A = stationary_cov_table(4).matrix();
    EXPECT_LT((cov_ode_integrate(4, 10.0, 1e-3).final_value() - A).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(CovOde, TableIsFixedPoint) {
    const Eigen::MatrixXd A = stationary_cov_table(8).matrix();
    EXPECT_LT((cov_ode_integrate(8, 1.0, 1e-3, A).final_value() - A).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Gaussian, FactorAndClipping) {
    Eigen::MatrixXd cov(2, 2);
    cov << 2.0, 0.6, 0.6, 1.0;
    const auto f = gaussian_factor(cov);
    EXPECT_FALSE(f.clipped);
    EXPECT_LT((f.L * f.L.transpose() - cov).cwiseAbs().maxCoeff(), 1e-14);
    Eigen::MatrixXd singular(2, 2);
    singular << 1.0, 1.0 + 1e-13, 1.0 + 1e-13, 1.0;
    const auto g = gaussian_factor(singular);
    EXPECT_TRUE(g.clipped);
    EXPECT_LT((g.L * g.L.transpose() - singular).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(YProcess, MarginalVariances) {
    const YProcessSampler s(12);
    const auto A = stationary_cov_table_float(12).matrix();
    const long long count = 10000;
    const Eigen::MatrixXd draws = s.sample(count, 2024);
    ASSERT_EQ(draws.rows(), 12);
    ASSERT_EQ(draws.cols(), count);
    for (int k : {1, 5, 10}) {
        const double v = draws.row(k - 1).squaredNorm() / count;
        EXPECT_NEAR(v, A(k - 1, k - 1), 3.0 * std::sqrt(2.0 / count) * A(k - 1, k - 1)) << k;
    }
    // interpolation at k + 1/2
    const int k = 5;
    double acc = 0.0;
    for (long long j = 0; j < count; ++j) {
        const double y = 0.5 * (draws(k - 1, j) + draws(k, j));
        acc += y * y;
    }
    const double target = (A(k - 1, k - 1) + 2 * A(k, k - 1) + A(k, k)) / 4.0;
    EXPECT_NEAR(acc / count, target, 3.0 * std::sqrt(2.0 / count) * target);
}

TEST(YProcess, PathInterpolation) {
    const auto p = sample_Y_path(10, 3);
    ASSERT_EQ(p.values.size(), 11u);
    EXPECT_DOUBLE_EQ(p.values[0], 0.0);
    EXPECT_DOUBLE_EQ(p.at(4.5), 0.5 * (p.values[4] + p.values[5]));
    EXPECT_DOUBLE_EQ(p.at(7.0), p.values[7]);
    EXPECT_EQ(YProcessSampler(10).path(3).values, p.values);
    EXPECT_THROW(YProcessSampler(2001), std::invalid_argument);
}

TEST(YProcess, BulkScaling) {
    const int T = 1600;
    const YProcessSampler s(T);
    const double exact = std::sqrt(static_cast<double>(T)) * s.covariance()(T - 1, T - 1);
    EXPECT_NEAR(exact, std::sqrt(std::numbers::pi) / 4.0, 0.1 * std::sqrt(std::numbers::pi) / 4.0);
    const long long count = 2000;
    const Eigen::MatrixXd draws = s.sample(count, 99);
    const double v = std::sqrt(static_cast<double>(T)) * draws.row(T - 1).squaredNorm() / count;
    EXPECT_NEAR(v, std::sqrt(std::numbers::pi) / 4.0, 0.1 * std::sqrt(std::numbers::pi) / 4.0);
}
