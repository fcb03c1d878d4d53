#pragma once

#include <optional>
#include <vector>

#include "hltasep/partition.hpp"

namespace hltasep {

struct HLParams {
    double t = 0.5;
    std::optional<int> n;  // row count; nullopt means infinitely many rows

    HLParams() = default;
    HLParams(double t_, std::optional<int> n_ = std::nullopt);
    double epsilon() const;
    // (1 - t^n)/(1 - t), i.e. 1/(1 - t) for infinitely many rows.
    double total_rate() const;
};

void require_t(double t);

// (q;q)_m = prod_{j=1..m} (1 - q^j).
double q_pochhammer(double q, int m);
// (q;q)_infinity, truncated once a factor is within 1e-16 of 1.
double q_pochhammer_inf(double q);

// psi_{mu/lambda} and phi_{mu/lambda} for lambda preceding mu. Throw if not interlacing.
double psi_coeff(const Partition& mu, const Partition& lambda, double t);
double phi_coeff(const Partition& mu, const Partition& lambda, double t);

// P_lambda(x; t) by symmetrization over all permutations. Small n only, distinct x.
double monomial_P(const Partition& lambda, const std::vector<double>& x, double t);

enum class HLKind { P, Q };

// Skew P or Q at finitely many alpha variables by summing over interlacing chains
// mu = l(0) < l(1) < ... < l(k) = lambda, one variable per step.
double skew_eval_alpha(const Partition& lambda, const Partition& mu, const std::vector<double>& x,
                       double t, HLKind which);
// Same with `count` copies of the single variable `alpha`.
double skew_eval_alpha_repeated(const Partition& lambda, const Partition& mu, double alpha,
                                int count, double t, HLKind which);

// P_lambda(u, ut, ..., ut^{n-1}); nullopt n for the infinite progression.
double principal_P(const Partition& lambda, double u, std::optional<int> n, double t);

// Q_{nu/mu} at the Plancherel specialization with parameter tau.
double planch_skew_Q(const Partition& nu, const Partition& mu, double tau, double t);
// Weighted count of one-box chains from mu to nu, product of phi along the chain.
double one_box_chain_phi_sum(const Partition& nu, const Partition& mu, double t);

}  // namespace hltasep
