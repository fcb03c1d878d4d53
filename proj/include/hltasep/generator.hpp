#pragma once

#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hltasep/partition.hpp"

namespace hltasep {

// Rate matrix over {lambda : |lambda| <= max_size, l(lambda) <= n}. The last row and
// column form an absorbing defect state collecting mass that leaves the truncation.
struct GeneratorMatrix {
    std::vector<Partition> states;
    std::map<Partition, int> index;
    Eigen::MatrixXd B;
    int defect() const { return static_cast<int>(states.size()); }
};

constexpr int kMaxGeneratorSize = 8;

GeneratorMatrix transition_matrix_B(std::optional<int> n, double t, int max_size);
// Same off-diagonal rates computed as phi_{nu/mu}/(1-t) * P_nu/P_mu at the principal specialization.
GeneratorMatrix transition_matrix_B_from_formula(std::optional<int> n, double t, int max_size);

// Scaling and squaring with a Taylor kernel; series tail below 1e-17 per squaring step.
Eigen::MatrixXd expm(const Eigen::MatrixXd& A);

struct TransitionCheck {
    Partition nu;
    double matrix_exp = 0.0;
    double formula = 0.0;
    double discrepancy = 0.0;
};

struct TransitionReport {
    std::vector<TransitionCheck> entries;
    double leaked_mass = 0.0;
    double max_discrepancy = 0.0;
    bool truncation_ok = true;  // leaked mass below 1e-8
};

// Both computations for every nu with |nu| <= max_size - 2.
TransitionReport transition_probs_exact(const Partition& mu, double tau, double t, std::optional<int> n,
                                        int max_size);
TransitionCheck transition_prob_exact(const Partition& mu, const Partition& nu, double tau, double t,
                                      std::optional<int> n, int max_size, double* leaked_mass = nullptr);

}  // namespace hltasep
