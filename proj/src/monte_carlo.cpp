#include "hltasep/monte_carlo.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/poisson.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "hltasep/dynamics.hpp"
#include "hltasep/parallel.hpp"
#include "hltasep/rng.hpp"

namespace hltasep {

namespace {
// stream tags keep the process families statistically independent for a shared seed
constexpr std::uint64_t kTagHL = 0x484c;
constexpr std::uint64_t kTagTasep = 0x7461;
}  // namespace

MonteCarloEstimate summarize(const std::vector<double>& samples, std::uint64_t seed) {
    MonteCarloEstimate est;
    est.seed = seed;
    est.replicas = static_cast<long long>(samples.size());
    if (samples.empty()) return est;
    const double n = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    est.estimate = mean;
    est.std_error = samples.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    est.noisy = est.std_error > 0.05 * std::abs(mean);
    return est;
}

MonteCarloEstimate moment_mc(const std::vector<int>& r_list, double t, double tau, long long replicas,
                             std::uint64_t seed) {
    if (replicas < 1000) throw std::invalid_argument("moment_mc needs at least 1000 replicas");
    if (r_list.empty()) throw std::invalid_argument("r_list must be nonempty");
    for (int r : r_list)
        if (r < 1) throw std::invalid_argument("r values must be positive");
    const HLParams params(t);
    std::vector<double> values(static_cast<std::size_t>(replicas));
    const double lt = std::log(t);
    parallel_for(values.size(), [&](std::size_t i) {
        Rng rng(seed, kTagHL, i);
        HLState s;
        advance_hl(s, params, tau, rng);
        long long exponent = 0;
        for (int r : r_list) exponent += s.conjugate_prefix(r);
        values[i] = std::exp(-lt * static_cast<double>(exponent));
    });
    return summarize(values, seed);
}

std::vector<std::vector<long long>> hl_conjugate_samples(int k_max, double t, double tau,
                                                         std::optional<int> n, long long replicas,
                                                         std::uint64_t seed) {
    const HLParams params(t, n);
    std::vector<std::vector<long long>> out(static_cast<std::size_t>(replicas));
    parallel_for(out.size(), [&](std::size_t i) {
        Rng rng(seed, kTagHL, i);
        HLState s;
        advance_hl(s, params, tau, rng);
        auto& row = out[i];
        row.assign(k_max, 0);
        for (int p : s.parts)
            for (int k = 1; k <= std::min(p, k_max); ++k) ++row[k - 1];
    });
    return out;
}

std::vector<std::vector<long long>> ttasep_position_samples(int k_max, double t, double horizon,
                                                            long long replicas, std::uint64_t seed) {
    std::vector<std::vector<long long>> out(static_cast<std::size_t>(replicas));
    parallel_for(out.size(), [&](std::size_t i) {
        Rng rng(seed, kTagTasep, i);
        ParticleConfig c;
        advance_ttasep(c, t, horizon, rng);
        auto& row = out[i];
        row.resize(k_max);
        for (int k = 1; k <= k_max; ++k) row[k - 1] = c.position(k);
    });
    return out;
}

MonteCarloEstimate fluctuation_variance_mc(double eps, double tau, long long replicas, std::uint64_t seed) {
    if (!(eps > 0.0)) throw std::domain_error("epsilon must be positive");
    if (replicas < 2) throw std::invalid_argument("need at least two replicas");
    const auto samples = hl_conjugate_samples(1, std::exp(-eps), tau, std::nullopt, replicas, seed);
    const double n = static_cast<double>(replicas);
    double mean = 0.0;
    for (const auto& s : samples) mean += static_cast<double>(s[0]);
    mean /= n;
    double m2 = 0.0, m4 = 0.0;
    for (const auto& s : samples) {
        const double d = static_cast<double>(s[0]) - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m4 /= n;
    MonteCarloEstimate est;
    est.seed = seed;
    est.replicas = replicas;
    est.estimate = eps * m2 * n / (n - 1.0);
    est.std_error = eps * std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
    est.noisy = est.std_error > 0.05 * std::abs(est.estimate);
    return est;
}

Pmf empirical_pmf(const std::vector<long long>& samples) {
    Pmf pmf;
    if (samples.empty()) return pmf;
    for (long long s : samples) pmf[s] += 1.0;
    for (auto& [k, v] : pmf) v /= static_cast<double>(samples.size());
    return pmf;
}

double tv_distance(const Pmf& a, const Pmf& b) {
    double total = 0.0;
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        total += std::abs(v - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto& [k, v] : b)
        if (!a.count(k)) total += v;
    return 0.5 * total;
}

double poisson_chi_square_pvalue(const std::vector<long long>& samples, double mean) {
    if (samples.empty() || !(mean > 0.0)) throw std::invalid_argument("need samples and a positive mean");
    const boost::math::poisson_distribution<double> law(mean);
    const double n = static_cast<double>(samples.size());
    // bins [lo_b, lo_{b+1}) with expected count >= 5, last bin open ended
    std::vector<long long> edges{0};
    double acc = 0.0;
    for (long long k = 0;; ++k) {
        acc += n * boost::math::pdf(law, static_cast<double>(k));
        const double rest = n * boost::math::cdf(boost::math::complement(law, static_cast<double>(k)));
        if (acc >= 5.0 && rest >= 5.0) {
            edges.push_back(k + 1);
            acc = 0.0;
        }
        if (rest < 5.0) break;
    }
    const std::size_t bins = edges.size();
    std::vector<double> observed(bins, 0.0), expected(bins, 0.0);
    for (long long s : samples) {
        std::size_t b = bins - 1;
        while (b > 0 && s < edges[b]) --b;
        observed[b] += 1.0;
    }
    for (std::size_t b = 0; b < bins; ++b) {
        const double lo_cdf = edges[b] == 0 ? 0.0 : boost::math::cdf(law, static_cast<double>(edges[b] - 1));
        const double hi_cdf = b + 1 < bins ? boost::math::cdf(law, static_cast<double>(edges[b + 1] - 1)) : 1.0;
        expected[b] = n * (hi_cdf - lo_cdf);
    }
    double chi2 = 0.0;
    for (std::size_t b = 0; b < bins; ++b) chi2 += (observed[b] - expected[b]) * (observed[b] - expected[b]) / expected[b];
    const double dof = static_cast<double>(bins) - 1.0;
    if (dof < 1.0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, chi2 / 2.0);
}

}  // namespace hltasep
