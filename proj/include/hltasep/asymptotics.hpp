#pragma once

#include <cstdint>
#include <vector>

namespace hltasep {

// log S_k(tau) with S_k = sum_{j=0}^k tau^j / j!, in log space.
double log_exp_partial_sum(int k, double tau);
// c_k(tau) = log S_k - log S_{k-1}.
double c_profile(int k, double tau);
// e^{-c_k(tau)} = S_{k-1}/S_k, with e^{-c_0} = 0.
double exp_neg_c(int k, double tau);

struct LLNRow {
    double eps;
    int k;
    double mean;   // mean of eps * x_k(tau/eps)
    double std_error;
    double limit;  // c_k(tau)
    double gap;    // mean - limit
};

std::vector<LLNRow> lln_experiment(int k_max, double tau, const std::vector<double>& eps_list,
                                   long long replicas, std::uint64_t seed);

// max over k <= k_max and a uniform grid of `points` times in (0, tau_max] of
// |central difference of c_k - (e^{-c_k} - e^{-c_{k-1}})|.
double c_ode_residual(int k_max, double tau_max, int points, double step);

// \int_0^inf y^2 exp(-y^2 - |b-a| y) dy
double bulk_cov(double a, double b);

enum class Rounding { Floor, Ceil };

struct BulkRow {
    int k;
    int r;
    int s;
    double scaled;  // sqrt(k) D(r, s)
    double limit;
    double gap;     // |scaled - limit| / limit
};

// r = k + round(a sqrt k), s = k + round(b sqrt k), a >= b.
std::vector<BulkRow> bulk_convergence(const std::vector<int>& k_list, double a, double b,
                                      Rounding rounding = Rounding::Floor);

// Least-squares slope of log gap against log k.
double log_log_slope(const std::vector<BulkRow>& rows);

}  // namespace hltasep
