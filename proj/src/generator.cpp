#include "hltasep/generator.hpp"

#include <cmath>
#include <stdexcept>

#include "hltasep/dynamics.hpp"
#include "hltasep/hall_littlewood.hpp"

namespace hltasep {

namespace {

GeneratorMatrix empty_generator(std::optional<int> n, double t, int max_size) {
    require_t(t);
    if (max_size < 0 || max_size > kMaxGeneratorSize)
        throw std::invalid_argument("max_size must lie in [0, 8] (state explosion guard)");
    if (n && *n < 1) throw std::invalid_argument("row count n must be positive");
    GeneratorMatrix g;
    g.states = partitions_up_to(max_size, n ? *n : 1 << 30);
    for (std::size_t i = 0; i < g.states.size(); ++i) g.index[g.states[i]] = static_cast<int>(i);
    g.B = Eigen::MatrixXd::Zero(g.states.size() + 1, g.states.size() + 1);
    const double diag = -HLParams(t, n).total_rate();
    for (std::size_t i = 0; i < g.states.size(); ++i) g.B(i, i) = diag;
    return g;
}

// Partition obtained by growing the first row of a block.
Partition grow_block(const Partition& mu, const BlockRate& block) {
    auto parts = mu.parts();
    if (block.value == 0)
        parts.push_back(1);
    else
        ++parts[block.start - 1];
    return Partition(std::move(parts));
}

}  // namespace

GeneratorMatrix transition_matrix_B(std::optional<int> n, double t, int max_size) {
    GeneratorMatrix g = empty_generator(n, t, max_size);
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        for (const auto& block : hl_part_rates(g.states[i], t, n)) {
            const Partition nu = grow_block(g.states[i], block);
            auto it = g.index.find(nu);
            const int col = it == g.index.end() ? g.defect() : it->second;
            g.B(i, col) += block.rate;
        }
    }
    return g;
}

GeneratorMatrix transition_matrix_B_from_formula(std::optional<int> n, double t, int max_size) {
    GeneratorMatrix g = empty_generator(n, t, max_size);
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        const Partition& mu = g.states[i];
        const double pmu = principal_P(mu, 1.0, n, t);
        for (const auto& nu : add_one_box(mu, n ? *n : 1 << 30)) {
            const double rate = phi_coeff(nu, mu, t) / (1.0 - t) * principal_P(nu, 1.0, n, t) / pmu;
            auto it = g.index.find(nu);
            const int col = it == g.index.end() ? g.defect() : it->second;
            g.B(i, col) += rate;
        }
    }
    return g;
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("expm needs a square matrix");
    const double norm = A.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Eigen::MatrixXd X = A / std::ldexp(1.0, squarings);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(A.rows(), A.cols());
    Eigen::MatrixXd term = sum;
    for (int k = 1; k < 60; ++k) {
        term = term * X / static_cast<double>(k);
        sum += term;
        // remaining tail is bounded by a geometric series with ratio <= 0.5/(k+1)
        if (term.cwiseAbs().colwise().sum().maxCoeff() < 1e-17) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

TransitionReport transition_probs_exact(const Partition& mu, double tau, double t, std::optional<int> n,
                                        int max_size) {
    if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
    if (mu.size() > max_size - 2) throw std::invalid_argument("initial partition leaves no truncation headroom");
    const GeneratorMatrix g = transition_matrix_B(n, t, max_size);
    const Eigen::MatrixXd P = expm(tau * g.B);
    const int row = g.index.at(mu);
    const double pmu = principal_P(mu, 1.0, n, t);
    const double damp = std::exp(-tau * HLParams(t, n).total_rate());

    TransitionReport report;
    report.leaked_mass = P(row, g.defect());
    report.truncation_ok = report.leaked_mass < 1e-8;
    for (std::size_t j = 0; j < g.states.size(); ++j) {
        const Partition& nu = g.states[j];
        if (nu.size() > max_size - 2) continue;
        TransitionCheck c;
        c.nu = nu;
        c.matrix_exp = P(row, j);
        c.formula = planch_skew_Q(nu, mu, tau, t) * principal_P(nu, 1.0, n, t) / pmu * damp;
        c.discrepancy = std::abs(c.matrix_exp - c.formula);
        report.max_discrepancy = std::max(report.max_discrepancy, c.discrepancy);
        report.entries.push_back(std::move(c));
    }
    return report;
}

TransitionCheck transition_prob_exact(const Partition& mu, const Partition& nu, double tau, double t,
                                      std::optional<int> n, int max_size, double* leaked_mass) {
    if (nu.size() > max_size - 2) throw std::invalid_argument("target partition too close to the truncation");
    const auto report = transition_probs_exact(mu, tau, t, n, max_size);
    if (leaked_mass) *leaked_mass = report.leaked_mass;
    for (const auto& c : report.entries)
        if (c.nu == nu) return c;
    // nu not reachable within the row limit
    TransitionCheck c;
    c.nu = nu;
    return c;
}

}  // namespace hltasep
