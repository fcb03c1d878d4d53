#include "hltasep/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hltasep/exact.hpp"
#include "hltasep/monte_carlo.hpp"

namespace hltasep {

double log_exp_partial_sum(int k, double tau) {
    if (k < 0) throw std::invalid_argument("k must be nonnegative");
    if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
    if (tau == 0.0) return 0.0;
    const double lt = std::log(tau);
    double top = -INFINITY;
    for (int j = 0; j <= k; ++j) top = std::max(top, j * lt - std::lgamma(j + 1.0));
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += std::exp(j * lt - std::lgamma(j + 1.0) - top);
    return top + std::log(acc);
}

double c_profile(int k, double tau) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
    if (tau == 0.0) return 0.0;
    // log(S_k / S_{k-1}) = log1p(tau^k/k! / S_{k-1})
    const double last = k * std::log(tau) - std::lgamma(k + 1.0);
    return std::log1p(std::exp(last - log_exp_partial_sum(k - 1, tau)));
}

double exp_neg_c(int k, double tau) {
    if (k == 0) return 0.0;
    return std::exp(-c_profile(k, tau));
}

std::vector<LLNRow> lln_experiment(int k_max, double tau, const std::vector<double>& eps_list,
                                   long long replicas, std::uint64_t seed) {
    if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
    if (replicas < 2) throw std::invalid_argument("need at least two replicas");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw std::domain_error("epsilon must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw std::invalid_argument("epsilon list must decrease");
    }
    std::vector<LLNRow> rows;
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        const double eps = eps_list[e];
        const auto samples = ttasep_position_samples(k_max, std::exp(-eps), tau / eps, replicas, seed + e);
        for (int k = 1; k <= k_max; ++k) {
            std::vector<double> scaled(samples.size());
            for (std::size_t i = 0; i < samples.size(); ++i) scaled[i] = eps * static_cast<double>(samples[i][k - 1]);
            const auto est = summarize(scaled, seed);
            const double limit = c_profile(k, tau);
            rows.push_back({eps, k, est.estimate, est.std_error, limit, est.estimate - limit});
        }
    }
    return rows;
}

double c_ode_residual(int k_max, double tau_max, int points, double step) {
    double worst = 0.0;
    for (int p = 1; p <= points; ++p) {
        const double tau = tau_max * p / points;
        for (int k = 1; k <= k_max; ++k) {
            const double deriv = (c_profile(k, tau + step) - c_profile(k, tau - step)) / (2.0 * step);
            const double rhs = exp_neg_c(k, tau) - exp_neg_c(k - 1, tau);
            worst = std::max(worst, std::abs(deriv - rhs));
        }
    }
    return worst;
}

double bulk_cov(double a, double b) {
    const double d = std::abs(b - a);
    auto f = [d](double y) { return y * y * std::exp(-y * y - d * y); };
    double err = 0.0;
    const double body = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 10.0, 15, 1e-14, &err);
    // tail beyond y = 10 is below e^{-100}
    return body;
}

std::vector<BulkRow> bulk_convergence(const std::vector<int>& k_list, double a, double b, Rounding rounding) {
    if (a < b) throw std::invalid_argument("bulk_convergence needs a >= b");
    const double limit = bulk_cov(a, b);
    std::vector<BulkRow> rows;
    for (int k : k_list) {
        if (k < 1) throw std::invalid_argument("k must be positive");
        const double root = std::sqrt(static_cast<double>(k));
        auto shift = [&](double c) {
            const double x = c * root;
            return static_cast<int>(rounding == Rounding::Floor ? std::floor(x) : std::ceil(x));
        };
        const int r = k + shift(a), s = k + shift(b);
        if (s < 1) throw std::invalid_argument("shifted index below 1");
        const double scaled = root * D_float(r, s);
        rows.push_back({k, r, s, scaled, limit, std::abs(scaled - limit) / limit});
    }
    return rows;
}

double log_log_slope(const std::vector<BulkRow>& rows) {
    if (rows.size() < 2) throw std::invalid_argument("need at least two rows");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rows.size());
    for (const auto& row : rows) {
        const double x = std::log(static_cast<double>(row.k)), y = std::log(row.gap);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace hltasep
