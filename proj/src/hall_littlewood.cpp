#include "hltasep/hall_littlewood.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hltasep {

void require_t(double t) {
    if (!(t > 0.0 && t < 1.0)) throw std::domain_error("t must lie in (0,1), got " + std::to_string(t));
}

HLParams::HLParams(double t_, std::optional<int> n_) : t(t_), n(n_) {
    require_t(t);
    if (n && *n < 1) throw std::domain_error("row count n must be positive");
}

double HLParams::epsilon() const { return -std::log(t); }

double HLParams::total_rate() const {
    if (!n) return 1.0 / (1.0 - t);
    return -std::expm1(*n * std::log(t)) / (1.0 - t);
}

double q_pochhammer(double q, int m) {
    double prod = 1.0;
    double qj = 1.0;
    for (int j = 1; j <= m; ++j) {
        qj *= q;
        prod *= 1.0 - qj;
    }
    return prod;
}

double q_pochhammer_inf(double q) {
    double prod = 1.0;
    double qj = 1.0;
    for (;;) {
        qj *= q;
        if (qj < 1e-16) break;
        prod *= 1.0 - qj;
    }
    return prod;
}

namespace {

int mult_at(const std::vector<int>& m, int i) { return i < static_cast<int>(m.size()) ? m[i] : 0; }

double t_pow(double t, int k) { return std::pow(t, k); }

}  // namespace

double psi_coeff(const Partition& mu, const Partition& lambda, double t) {
    if (!interlaces(lambda, mu)) throw std::invalid_argument("psi_coeff: lambda must interlace mu");
    const auto ml = lambda.multiplicities();
    const auto mm = mu.multiplicities();
    const int top = std::max(lambda.empty() ? 0 : lambda.part(1), mu.empty() ? 0 : mu.part(1));
    double prod = 1.0;
    for (int i = 1; i <= top; ++i) {
        const int a = mult_at(ml, i);
        if (a == mult_at(mm, i) + 1) prod *= 1.0 - t_pow(t, a);
    }
    return prod;
}

double phi_coeff(const Partition& mu, const Partition& lambda, double t) {
    if (!interlaces(lambda, mu)) throw std::invalid_argument("phi_coeff: lambda must interlace mu");
    const auto ml = lambda.multiplicities();
    const auto mm = mu.multiplicities();
    const int top = std::max(lambda.empty() ? 0 : lambda.part(1), mu.empty() ? 0 : mu.part(1));
    double prod = 1.0;
    for (int i = 1; i <= top; ++i) {
        const int b = mult_at(mm, i);
        if (b == mult_at(ml, i) + 1) prod *= 1.0 - t_pow(t, b);
    }
    return prod;
}

double monomial_P(const Partition& lambda, const std::vector<double>& x, double t) {
    require_t(t);
    const int n = static_cast<int>(x.size());
    if (n < lambda.length()) return 0.0;
    if (n > 8) throw std::invalid_argument("monomial_P: brute force limited to 8 variables");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (x[i] == x[j]) throw std::invalid_argument("monomial_P: variables must be distinct");

    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 0);
    double total = 0.0;
    do {
        double term = 1.0;
        for (int i = 0; i < lambda.length(); ++i) term *= std::pow(x[w[i]], lambda.part(i + 1));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) term *= (x[w[i]] - t * x[w[j]]) / (x[w[i]] - x[w[j]]);
        total += term;
    } while (std::next_permutation(w.begin(), w.end()));

    // v_lambda includes the multiplicity of zero, n - l(lambda)
    auto v = [t](int m) { return q_pochhammer(t, m) / std::pow(1.0 - t, m); };
    double vl = v(n - lambda.length());
    const auto m = lambda.multiplicities();
    for (std::size_t i = 1; i < m.size(); ++i) vl *= v(m[i]);
    return total / vl;
}

namespace {

struct Transfer {
    int from;
    int to;
    int boxes;
    double coef;
};

// Interlacing transfers inside the interval [mu, lambda].
std::vector<Transfer> interval_transfers(const std::vector<Partition>& states, double t, HLKind which) {
    std::vector<Transfer> out;
    for (std::size_t a = 0; a < states.size(); ++a)
        for (std::size_t b = 0; b < states.size(); ++b) {
            if (!interlaces(states[a], states[b])) continue;
            const double c = which == HLKind::P ? psi_coeff(states[b], states[a], t)
                                                : phi_coeff(states[b], states[a], t);
            out.push_back({static_cast<int>(a), static_cast<int>(b),
                           states[b].size() - states[a].size(), c});
        }
    return out;
}

template <class VarAt>
double chain_sum(const Partition& lambda, const Partition& mu, int steps, double t, HLKind which,
                 VarAt var_at) {
    require_t(t);
    if (steps < 0) throw std::invalid_argument("negative variable count");
    if (!lambda.contains(mu)) return 0.0;
    if (steps == 0) return lambda == mu ? 1.0 : 0.0;
    const auto states = interval(mu, lambda);
    std::map<Partition, int> index;
    for (std::size_t i = 0; i < states.size(); ++i) index[states[i]] = static_cast<int>(i);
    const auto transfers = interval_transfers(states, t, which);

    std::vector<double> cur(states.size(), 0.0), next(states.size());
    cur[index.at(mu)] = 1.0;
    const int max_boxes = lambda.size() - mu.size();
    std::vector<double> powers(max_boxes + 1);
    for (int step = 0; step < steps; ++step) {
        const double xi = var_at(step);
        powers[0] = 1.0;
        for (int d = 1; d <= max_boxes; ++d) powers[d] = powers[d - 1] * xi;
        std::fill(next.begin(), next.end(), 0.0);
        for (const auto& tr : transfers)
            if (cur[tr.from] != 0.0) next[tr.to] += cur[tr.from] * tr.coef * powers[tr.boxes];
        std::swap(cur, next);
    }
    return cur[index.at(lambda)];
}

}  // namespace

double skew_eval_alpha(const Partition& lambda, const Partition& mu, const std::vector<double>& x,
                       double t, HLKind which) {
    return chain_sum(lambda, mu, static_cast<int>(x.size()), t, which,
                     [&x](int i) { return x[i]; });
}

double skew_eval_alpha_repeated(const Partition& lambda, const Partition& mu, double alpha,
                                int count, double t, HLKind which) {
    return chain_sum(lambda, mu, count, t, which, [alpha](int) { return alpha; });
}

double principal_P(const Partition& lambda, double u, std::optional<int> n, double t) {
    require_t(t);
    const int len = lambda.length();
    if (n && len > *n) return 0.0;
    double value = std::pow(u, lambda.size()) * std::pow(t, static_cast<double>(lambda.n_weight()));
    if (n) {
        // (t;t)_n / (t;t)_{n-l} without forming either
        for (int j = *n - len + 1; j <= *n; ++j) value *= 1.0 - std::pow(t, j);
    }
    const auto m = lambda.multiplicities();
    for (std::size_t i = 1; i < m.size(); ++i) value /= q_pochhammer(t, m[i]);
    return value;
}

double one_box_chain_phi_sum(const Partition& nu, const Partition& mu, double t) {
    require_t(t);
    if (!nu.contains(mu)) return 0.0;
    auto states = interval(mu, nu);
    std::sort(states.begin(), states.end(), [](const Partition& a, const Partition& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::map<Partition, double> weight;
    weight[mu] = 1.0;
    for (const auto& kappa : states) {
        auto it = weight.find(kappa);
        if (it == weight.end()) continue;
        for (const auto& next : add_one_box(kappa)) {
            if (!nu.contains(next)) continue;
            weight[next] += it->second * phi_coeff(next, kappa, t);
        }
    }
    auto it = weight.find(nu);
    return it == weight.end() ? 0.0 : it->second;
}

double planch_skew_Q(const Partition& nu, const Partition& mu, double tau, double t) {
    require_t(t);
    if (!nu.contains(mu)) return 0.0;
    const int d = nu.size() - mu.size();
    const double scale = std::exp(d * std::log(tau / (1.0 - t)) - std::lgamma(d + 1.0));
    if (d == 0) return 1.0;
    return scale * one_box_chain_phi_sum(nu, mu, t);
}

}  // namespace hltasep
