#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace hltasep {

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    long long replicas = 0;
    std::uint64_t seed = 0;
    bool noisy = false;  // std_error / |estimate| above 5%
};

MonteCarloEstimate summarize(const std::vector<double>& samples, std::uint64_t seed);

// E[t^{-sum_m sum_{j<=r_m} lambda'_j(tau)}] for the Hall-Littlewood process from the empty
// partition with infinitely many rows. Requires replicas >= 1000.
MonteCarloEstimate moment_mc(const std::vector<int>& r_list, double t, double tau, long long replicas,
                             std::uint64_t seed);

// samples[i][k-1] = lambda'_k(tau) of replica i, k = 1..k_max.
std::vector<std::vector<long long>> hl_conjugate_samples(int k_max, double t, double tau,
                                                         std::optional<int> n, long long replicas,
                                                         std::uint64_t seed);
// samples[i][k-1] = x_k(horizon) of replica i started packed.
std::vector<std::vector<long long>> ttasep_position_samples(int k_max, double t, double horizon,
                                                            long long replicas, std::uint64_t seed);

// Var of eps^{1/2} lambda'_1(tau) at t = e^{-eps}, i.e. the variance of the first fluctuation field.
MonteCarloEstimate fluctuation_variance_mc(double eps, double tau, long long replicas, std::uint64_t seed);

using Pmf = std::map<long long, double>;
Pmf empirical_pmf(const std::vector<long long>& samples);
double tv_distance(const Pmf& a, const Pmf& b);

// Chi-square goodness of fit of integer samples to Poisson(mean), bins with expected count >= 5.
double poisson_chi_square_pvalue(const std::vector<long long>& samples, double mean);

}  // namespace hltasep
