#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace hltasep {

enum class SDESystem { Z, X };

struct SDEConfig {
    SDESystem system = SDESystem::Z;
    int n = 1;
    double dt = 1e-3;
    double horizon = 1.0;  // end time: T for the Z system, final tau for the X system
    double tau0 = 0.5;     // X system start time
    long long paths = 10000;
    std::uint64_t seed = 1;
    bool noise = true;
    std::vector<double> checkpoints;  // extra times at which the ensemble covariance is recorded
};

struct SDEEnsemble {
    Eigen::MatrixXd terminal;    // paths x n
    Eigen::MatrixXd covariance;  // n x n
    Eigen::MatrixXd cov_std_error;
    std::vector<double> checkpoint_times;
    std::vector<Eigen::MatrixXd> checkpoint_cov;
    bool stiffness_warning = false;  // dt * n > 0.1
};

// Drift and diffusion at time `time`: dX = M X dt + diag(sigma) dW.
void sde_coefficients(SDESystem system, int n, double time, Eigen::MatrixXd& M, Eigen::VectorXd& sigma);

// Euler-Maruyama ensemble. Each (path, component) pair owns an RNG stream, so the first k
// components do not change when n grows. init_cov may be larger than n (leading block used).
SDEEnsemble em_integrate(const SDEConfig& config, const std::optional<Eigen::MatrixXd>& init_cov = std::nullopt);

// Sample covariance and entrywise standard errors of rows of X.
void sample_covariance(const Eigen::MatrixXd& X, Eigen::MatrixXd& cov, Eigen::MatrixXd& std_error);

// Exact covariance of the Euler-Maruyama chain for the Z system after `steps` steps.
Eigen::MatrixXd em_covariance_recursion(int n, double dt, long long steps, const Eigen::MatrixXd& A0);

struct StationarityReport {
    Eigen::MatrixXd target;
    Eigen::MatrixXd estimate;
    Eigen::MatrixXd gap;        // |estimate - target|
    Eigen::MatrixXd allowance;  // 3 standard errors + Euler-Maruyama bias
    double max_gap = 0.0;
    bool within_allowance = true;
};

// Start the Z system from the exact stationary table and integrate to T0.
StationarityReport stationarity_test(int n, double T0, double dt, long long paths, std::uint64_t seed);

struct CovarianceTrajectory {
    std::vector<double> times;
    std::vector<Eigen::MatrixXd> values;
    const Eigen::MatrixXd& final_value() const { return values.back(); }
};

// RK4 for dA/dT = M A + A M^T + diag(sigma^2), recorded `samples` times evenly (plus the end).
CovarianceTrajectory cov_ode_integrate(int n, double T, double dt,
                                       const std::optional<Eigen::MatrixXd>& A0 = std::nullopt, int samples = 1);
CovarianceTrajectory x_cov_ode_integrate(int n, double tau0, double tau1, double dt,
                                         const std::optional<Eigen::MatrixXd>& A0 = std::nullopt, int samples = 1);

// Symmetric square-root factor: Cholesky, or eigenvalue clipping at 0 when that fails.
struct GaussianFactor {
    Eigen::MatrixXd L;
    bool clipped = false;
};
GaussianFactor gaussian_factor(const Eigen::MatrixXd& cov);

// Piecewise-linear path with Y_0 = 0 and Y_k = zeta_k.
struct YPath {
    std::vector<double> values;  // index 0..Tmax
    double at(double T) const;
};

class YProcessSampler {
public:
    explicit YProcessSampler(int tmax);
    int tmax() const { return tmax_; }
    bool clipped() const { return factor_.clipped; }
    const Eigen::MatrixXd& covariance() const { return cov_; }
    // Columns are independent draws of (zeta_1..zeta_Tmax); draw j uses stream (seed, j).
    Eigen::MatrixXd sample(long long count, std::uint64_t seed) const;
    YPath path(std::uint64_t seed, long long draw = 0) const;

private:
    int tmax_;
    Eigen::MatrixXd cov_;
    GaussianFactor factor_;
};

YPath sample_Y_path(int tmax, std::uint64_t seed);

}  // namespace hltasep
