#include "hltasep/sde.hpp"

#include <cmath>
#include <stdexcept>

#include "hltasep/asymptotics.hpp"
#include "hltasep/exact.hpp"
#include "hltasep/parallel.hpp"
#include "hltasep/rng.hpp"

namespace hltasep {

namespace {
constexpr std::uint64_t kTagSDE = 0x5344;
constexpr std::uint64_t kTagY = 0x5950;
}  // namespace

void sde_coefficients(SDESystem system, int n, double time, Eigen::MatrixXd& M, Eigen::VectorXd& sigma) {
    M = Eigen::MatrixXd::Zero(n, n);
    sigma = Eigen::VectorXd::Zero(n);
    if (system == SDESystem::Z) {
        for (int k = 1; k <= n; ++k) {
            M(k - 1, k - 1) = -k;
            if (k > 1) M(k - 1, k - 2) = k - 1;
            sigma(k - 1) = 1.0;
        }
        return;
    }
    double prev = 0.0;  // e^{-c_0} = 0
    for (int k = 1; k <= n; ++k) {
        const double cur = exp_neg_c(k, time);
        M(k - 1, k - 1) = -cur;
        if (k > 1) M(k - 1, k - 2) = prev;
        sigma(k - 1) = std::sqrt(std::max(0.0, cur - prev));
        prev = cur;
    }
}

GaussianFactor gaussian_factor(const Eigen::MatrixXd& cov) {
    GaussianFactor f;
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() == Eigen::Success) {
        f.L = llt.matrixL();
        return f;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
    if (eig.eigenvalues().minCoeff() < -1e-10 * scale)
        throw std::invalid_argument("covariance is not positive semidefinite");
    f.L = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    f.clipped = true;
    return f;
}

void sample_covariance(const Eigen::MatrixXd& X, Eigen::MatrixXd& cov, Eigen::MatrixXd& std_error) {
    const double N = static_cast<double>(X.rows());
    const Eigen::RowVectorXd mean = X.colwise().mean();
    const Eigen::MatrixXd C = X.rowwise() - mean;
    cov = C.transpose() * C / (N - 1.0);
    const int n = static_cast<int>(X.cols());
    std_error = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b <= a; ++b) {
            const Eigen::VectorXd prod = C.col(a).cwiseProduct(C.col(b));
            const double v = (prod.array() - prod.mean()).square().sum() / (N - 1.0);
            std_error(a, b) = std_error(b, a) = std::sqrt(v / N);
        }
}

SDEEnsemble em_integrate(const SDEConfig& config, const std::optional<Eigen::MatrixXd>& init_cov) {
    const int n = config.n;
    if (n < 1) throw std::invalid_argument("SDE dimension must be positive");
    if (!(config.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (config.paths < 2) throw std::invalid_argument("need at least two paths");
    const double start = config.system == SDESystem::X ? config.tau0 : 0.0;
    if (config.system == SDESystem::X && !(config.tau0 > 0.0)) throw std::invalid_argument("X system needs tau0 > 0");
    if (config.horizon < start) throw std::invalid_argument("horizon precedes the start time");
    const long long steps = std::llround((config.horizon - start) / config.dt);

    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n, n);
    if (init_cov) {
        if (init_cov->rows() < n || init_cov->cols() < n) throw std::invalid_argument("initial covariance too small");
        F = gaussian_factor(init_cov->topLeftCorner(n, n)).L;
    }

    // Coefficients per step, shared by all paths.
    std::vector<Eigen::MatrixXd> drift;
    std::vector<Eigen::VectorXd> diff;
    const bool constant = config.system == SDESystem::Z;
    const long long tables = constant ? 1 : steps;
    drift.resize(tables);
    diff.resize(tables);
    for (long long i = 0; i < tables; ++i) sde_coefficients(config.system, n, start + i * config.dt, drift[i], diff[i]);

    std::vector<long long> checkpoint_steps;
    for (double c : config.checkpoints) {
        if (c < start || c > config.horizon) throw std::invalid_argument("checkpoint outside the time window");
        checkpoint_steps.push_back(std::llround((c - start) / config.dt));
    }
    const std::size_t cps = checkpoint_steps.size();

    SDEEnsemble out;
    out.stiffness_warning = config.dt * n > 0.1;
    out.terminal.resize(config.paths, n);
    std::vector<Eigen::MatrixXd> at_checkpoints(cps, Eigen::MatrixXd(config.paths, n));
    const double sqdt = std::sqrt(config.dt);

    parallel_for(static_cast<std::size_t>(config.paths), [&](std::size_t p) {
        std::vector<Rng> rngs;
        rngs.reserve(n);
        for (int k = 0; k < n; ++k) rngs.emplace_back(stream_seed(config.seed, kTagSDE, p), k);
        Eigen::VectorXd xi(n);
        for (int k = 0; k < n; ++k) xi(k) = rngs[k].normal();
        Eigen::VectorXd x = F * xi;
        Eigen::VectorXd next(n);
        auto record = [&](long long step) {
            for (std::size_t c = 0; c < cps; ++c)
                if (checkpoint_steps[c] == step) at_checkpoints[c].row(p) = x.transpose();
        };
        record(0);
        for (long long i = 0; i < steps; ++i) {
            const auto& M = drift[constant ? 0 : i];
            const auto& s = diff[constant ? 0 : i];
            for (int k = 0; k < n; ++k) {
                // bidiagonal drift
                double d = M(k, k) * x(k);
                if (k > 0) d += M(k, k - 1) * x(k - 1);
                const double dw = rngs[k].normal();
                next(k) = x(k) + d * config.dt + (config.noise ? s(k) * sqdt * dw : 0.0);
            }
            x.swap(next);
            record(i + 1);
        }
        out.terminal.row(p) = x.transpose();
    });
    sample_covariance(out.terminal, out.covariance, out.cov_std_error);
    for (std::size_t c = 0; c < cps; ++c) {
        Eigen::MatrixXd cov, se;
        sample_covariance(at_checkpoints[c], cov, se);
        out.checkpoint_times.push_back(config.checkpoints[c]);
        out.checkpoint_cov.push_back(cov);
    }
    return out;
}

Eigen::MatrixXd em_covariance_recursion(int n, double dt, long long steps, const Eigen::MatrixXd& A0) {
    Eigen::MatrixXd M;
    Eigen::VectorXd sigma;
    sde_coefficients(SDESystem::Z, n, 0.0, M, sigma);
    const Eigen::MatrixXd Phi = Eigen::MatrixXd::Identity(n, n) + dt * M;
    const Eigen::MatrixXd Q = dt * sigma.array().square().matrix().asDiagonal();
    Eigen::MatrixXd A = A0.topLeftCorner(n, n);
    for (long long i = 0; i < steps; ++i) A = Phi * A * Phi.transpose() + Q;
    return A;
}

StationarityReport stationarity_test(int n, double T0, double dt, long long paths, std::uint64_t seed) {
    if (n < 1 || n > 8) throw std::invalid_argument("stationarity_test supports 1 <= n <= 8");
    StationarityReport rep;
    rep.target = stationary_cov_table(n).matrix();
    SDEConfig cfg;
    cfg.system = SDESystem::Z;
    cfg.n = n;
    cfg.dt = dt;
    cfg.horizon = T0;
    cfg.paths = paths;
    cfg.seed = seed;
    const auto ens = em_integrate(cfg, rep.target);
    rep.estimate = ens.covariance;
    rep.gap = (rep.estimate - rep.target).cwiseAbs();
    const Eigen::MatrixXd bias =
        (em_covariance_recursion(n, dt, std::llround(T0 / dt), rep.target) - rep.target).cwiseAbs();
    rep.allowance = 3.0 * ens.cov_std_error + bias;
    rep.max_gap = rep.gap.maxCoeff();
    rep.within_allowance = (rep.gap.array() <= rep.allowance.array()).all();
    return rep;
}

namespace {

template <class Coeffs>
CovarianceTrajectory rk4_cov(int n, double start, double end, double dt, const std::optional<Eigen::MatrixXd>& A0,
                             int samples, Coeffs coeffs) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (samples < 1) samples = 1;
    const long long steps = std::max<long long>(1, std::llround((end - start) / dt));
    const double h = (end - start) / steps;
    Eigen::MatrixXd A = A0 ? Eigen::MatrixXd(A0->topLeftCorner(n, n)) : Eigen::MatrixXd::Zero(n, n);
    auto rhs = [&](double time, const Eigen::MatrixXd& X) {
        Eigen::MatrixXd M;
        Eigen::VectorXd sigma;
        coeffs(time, M, sigma);
        Eigen::MatrixXd out = M * X + X * M.transpose();
        out.diagonal() += sigma.array().square().matrix();
        return out;
    };
    const long long stride = std::max<long long>(1, steps / samples);
    CovarianceTrajectory traj;
    traj.times.push_back(start);
    traj.values.push_back(A);
    for (long long i = 0; i < steps; ++i) {
        const double time = start + i * h;
        const Eigen::MatrixXd k1 = rhs(time, A);
        const Eigen::MatrixXd k2 = rhs(time + h / 2, A + h / 2 * k1);
        const Eigen::MatrixXd k3 = rhs(time + h / 2, A + h / 2 * k2);
        const Eigen::MatrixXd k4 = rhs(time + h, A + h * k3);
        A += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        if ((i + 1) % stride == 0 || i + 1 == steps) {
            traj.times.push_back(start + (i + 1) * h);
            traj.values.push_back(A);
        }
    }
    return traj;
}

}  // namespace

CovarianceTrajectory cov_ode_integrate(int n, double T, double dt, const std::optional<Eigen::MatrixXd>& A0,
                                       int samples) {
    return rk4_cov(n, 0.0, T, dt, A0, samples, [n](double time, Eigen::MatrixXd& M, Eigen::VectorXd& s) {
        sde_coefficients(SDESystem::Z, n, time, M, s);
    });
}

CovarianceTrajectory x_cov_ode_integrate(int n, double tau0, double tau1, double dt,
                                         const std::optional<Eigen::MatrixXd>& A0, int samples) {
    if (!(tau0 > 0.0)) throw std::invalid_argument("X system needs tau0 > 0");
    return rk4_cov(n, tau0, tau1, dt, A0, samples, [n](double time, Eigen::MatrixXd& M, Eigen::VectorXd& s) {
        sde_coefficients(SDESystem::X, n, time, M, s);
    });
}

double YPath::at(double T) const {
    if (T < 0.0 || T > static_cast<double>(values.size() - 1)) throw std::out_of_range("time outside the path");
    const auto k = static_cast<std::size_t>(std::floor(T));
    if (k + 1 >= values.size()) return values.back();
    const double frac = T - static_cast<double>(k);
    return (1.0 - frac) * values[k] + frac * values[k + 1];
}

YProcessSampler::YProcessSampler(int tmax) : tmax_(tmax) {
    if (tmax < 1 || tmax > 2000) throw std::invalid_argument("sampler supports 1 <= Tmax <= 2000");
    cov_ = stationary_cov_table_float(tmax).matrix();
    factor_ = gaussian_factor(cov_);
}

Eigen::MatrixXd YProcessSampler::sample(long long count, std::uint64_t seed) const {
    Eigen::MatrixXd xi(tmax_, count);
    for (long long j = 0; j < count; ++j) {
        Rng rng(seed, kTagY, static_cast<std::uint64_t>(j));
        for (int i = 0; i < tmax_; ++i) xi(i, j) = rng.normal();
    }
    if (factor_.clipped) return factor_.L * xi;
    return factor_.L.triangularView<Eigen::Lower>() * xi;
}

YPath YProcessSampler::path(std::uint64_t seed, long long draw) const {
    Eigen::VectorXd xi(tmax_);
    Rng rng(seed, kTagY, static_cast<std::uint64_t>(draw));
    for (int i = 0; i < tmax_; ++i) xi(i) = rng.normal();
    const Eigen::VectorXd zeta = factor_.L * xi;
    YPath p;
    p.values.assign(tmax_ + 1, 0.0);
    for (int i = 0; i < tmax_; ++i) p.values[i + 1] = zeta(i);
    return p;
}

YPath sample_Y_path(int tmax, std::uint64_t seed) { return YProcessSampler(tmax).path(seed); }

}  // namespace hltasep
