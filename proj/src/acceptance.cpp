#include "hltasep/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "hltasep/asymptotics.hpp"
#include "hltasep/exact.hpp"
#include "hltasep/generator.hpp"
#include "hltasep/moment_integrals.hpp"
#include "hltasep/monte_carlo.hpp"
#include "hltasep/sde.hpp"

namespace hltasep {

namespace {

// Pinned tolerances.
constexpr double kStdErrs = 3.0;
constexpr double kContourTol = 1e-8;
constexpr double kTvTol = 0.01;
constexpr double kTransitionTol = 1e-6;
constexpr double kLeakTol = 1e-8;
constexpr double kCovQuadTol = 1e-8;
constexpr double kLlnTol = 0.05;
constexpr double kOdeTol = 1e-6;
constexpr double kDriftTol = 0.02;
constexpr double kFixedPointTol = 1e-10;
constexpr double kBulkTol = 0.05;
constexpr double kTailTol = 0.02;
constexpr double kImagTol = 1e-8;

constexpr long long kReplicas = 100000;
constexpr long long kLlnReplicas = 10000;
constexpr long long kSdePaths = 10000;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Outcome {
    bool passed;
    std::string detail;
};

Outcome laplace_identity(std::uint64_t seed) {
    const double t = 0.5, tau = 1.0;
    bool ok = true;
    std::string d;
    for (int r : {1, 2}) {
        const double exact = t_moment_exact(r, t, tau);
        const auto mc = moment_mc({r}, t, tau, kReplicas, seed + r);
        const auto q = t_moment_integral({r}, t, tau);
        const bool mc_ok = std::abs(mc.estimate - exact) <= kStdErrs * mc.std_error;
        const bool q_ok = std::abs(q.value - exact) <= kContourTol;
        ok = ok && mc_ok && q_ok;
        d += "r=" + std::to_string(r) + " exact " + num(exact) + " mc " + num(mc.estimate) + "+-" + num(mc.std_error) +
             " contour err " + num(std::abs(q.value - exact)) + "; ";
    }
    return {ok, d};
}

Outcome equivalence(std::uint64_t seed) {
    const double t = 0.5, tau = 4.0;
    const auto x = ttasep_position_samples(1, t, tau, kReplicas, seed);
    const auto lam = hl_conjugate_samples(1, t, (1.0 - t) * tau, std::nullopt, kReplicas, seed + 1);
    std::vector<long long> a(x.size()), b(lam.size());
    for (std::size_t i = 0; i < x.size(); ++i) a[i] = x[i][0];
    for (std::size_t i = 0; i < lam.size(); ++i) b[i] = lam[i][0] - 1;
    const double tv = tv_distance(empirical_pmf(a), empirical_pmf(b));
    return {tv < kTvTol, "TV " + num(tv) + " (limit " + num(kTvTol) + ")"};
}

Outcome transition_formula(std::uint64_t) {
    const auto rep = transition_probs_exact(Partition(), 0.2, 0.5, 3, 8);
    double worst = 0.0;
    int checked = 0;
    for (const auto& e : rep.entries)
        if (e.nu.size() <= 4) {
            worst = std::max(worst, e.discrepancy);
            ++checked;
        }
    const bool ok = worst < kTransitionTol && rep.leaked_mass < kLeakTol;
    return {ok, std::to_string(checked) + " targets, max discrepancy " + num(worst) + ", leaked mass " +
                    num(rep.leaked_mass)};
}

Outcome exact_identities(std::uint64_t) {
    int failures = 0;
    std::string where;
    for (int r = 1; r <= 12; ++r)
        for (int s = 1; s <= r; ++s) {
            const Rational d = identity_defect(IdentityKind::Zero, r, s);
            if (d != 0) {
                ++failures;
                where += " zero(" + std::to_string(r) + "," + std::to_string(s) + ")=" + d.str();
            }
        }
    for (int r = 2; r <= 12; ++r) {
        const Rational d = identity_defect(IdentityKind::One, r);
        if (d != 0) {
            ++failures;
            where += " one(" + std::to_string(r) + ")=" + d.str();
        }
    }
    return {failures == 0, std::to_string(failures) + " nonzero defects" + where};
}

Outcome oracle_equality(std::uint64_t) {
    const auto rec = stationary_cov_table(12);
    const auto res = residue_cov_table(12);
    int mismatches = 0;
    for (int r = 1; r <= 12; ++r)
        for (int s = 1; s <= r; ++s)
            if (rec.exact(r, s) != res.exact(r, s)) ++mismatches;
    const bool anchors =
        rec.exact(1, 1) == Rational(1, 2) && rec.exact(2, 1) == Rational(1, 6) && rec.exact(2, 2) == Rational(1, 3);
    return {mismatches == 0 && anchors,
            std::to_string(mismatches) + " mismatches over 78 entries, anchors " + (anchors ? "ok" : "wrong")};
}

Outcome finite_tau(std::uint64_t seed) {
    const auto q = finite_tau_cov(1, 1, 1.0);
    const double quad_err = std::abs(q.value - 0.375);
    const auto mc = fluctuation_variance_mc(0.02, 1.0, kReplicas, seed);
    const bool mc_ok = std::abs(mc.estimate - 0.375) <= kStdErrs * mc.std_error;
    return {quad_err < kCovQuadTol && mc_ok,
            "quadrature err " + num(quad_err) + ", mc " + num(mc.estimate) + "+-" + num(mc.std_error)};
}

Outcome lln(std::uint64_t seed) {
    const auto rows = lln_experiment(2, 1.0, {0.1, 0.05, 0.02}, kLlnReplicas, seed);
    bool ok = true;
    std::string d;
    for (int k = 1; k <= 2; ++k) {
        double prev = INFINITY;
        d += "k=" + std::to_string(k) + " gaps";
        for (const auto& row : rows) {
            if (row.k != k) continue;
            const double g = std::abs(row.gap);
            ok = ok && g < prev;
            prev = g;
            d += " " + num(g);
        }
        ok = ok && prev < kLlnTol;
        d += "; ";
    }
    const double res = c_ode_residual(4, 5.0, 50, 1e-4);
    ok = ok && res < kOdeTol;
    return {ok, d + "ODE residual " + num(res)};
}

Outcome sde_stationarity(std::uint64_t seed) {
    const auto rep = stationarity_test(5, 2.0, 1e-3, kSdePaths, seed);
    const Eigen::MatrixXd A = stationary_cov_table(8).matrix();
    const auto traj = cov_ode_integrate(8, 1.0, 1e-3, A);
    const double fp = (traj.final_value() - A).cwiseAbs().maxCoeff();
    return {rep.max_gap < kDriftTol && fp < kFixedPointTol,
            "max drift " + num(rep.max_gap) + ", fixed-point residual " + num(fp)};
}

Outcome bulk(std::uint64_t) {
    const auto rows = bulk_convergence({25, 100, 400, 1600}, 0.0, 0.0);
    bool monotone = true;
    std::string d = "gaps";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && !(rows[i].gap < rows[i - 1].gap)) monotone = false;
        d += " " + num(rows[i].gap);
    }
    const double tail = std::pow(30.0, 3) * bulk_cov(0.0, 30.0);
    const bool tail_ok = std::abs(tail - 2.0) <= kTailTol * 2.0;
    return {monotone && rows.back().gap < kBulkTol && tail_ok, d + "; d^3 cov at 30 = " + num(tail)};
}

Outcome quadrature_health(std::uint64_t) {
    std::vector<std::pair<std::string, QuadratureResult>> evals;
    const double t = 0.5;
    for (const auto& r : std::vector<std::vector<int>>{{1}, {2}, {3}, {1, 1}, {2, 1}, {2, 2}}) {
        std::string tag;
        for (int v : r) tag += std::to_string(v);
        evals.emplace_back("moment" + tag, t_moment_integral(r, t, 1.0));
        evals.emplace_back("fixed" + tag, fixed_t_limit_integral(r, t));
    }
    for (const auto& rs : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 1}})
        evals.emplace_back("cov" + std::to_string(rs.first) + std::to_string(rs.second),
                           finite_tau_cov(rs.first, rs.second, 1.0));
    for (const auto& rs : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 3}})
        evals.emplace_back("D" + std::to_string(rs.first) + std::to_string(rs.second), D_quadrature(rs.first, rs.second));
    int bad = 0;
    std::string d;
    for (const auto& [name, q] : evals) {
        const bool imag_ok = q.imag_residual < kImagTol * std::max(1.0, std::abs(q.value));
        if (!q.converged || !imag_ok) {
            ++bad;
            d += " " + name + "(err " + num(q.richardson_error) + " vs " + num(q.coarse_error) + ", imag " +
                 num(q.imag_residual) + ")";
        }
    }
    return {bad == 0, std::to_string(evals.size()) + " evaluations at N=64, " + std::to_string(bad) + " unhealthy" + d};
}

struct Entry {
    const char* title;
    Outcome (*fn)(std::uint64_t);
};

const Entry kEntries[kCriterionCount] = {
    {"exact Laplace identity", laplace_identity},
    {"TASEP / Hall-Littlewood equivalence", equivalence},
    {"transition formula cross-check", transition_formula},
    {"exact residue identities", exact_identities},
    {"recursion equals residue table", oracle_equality},
    {"finite-tau covariance", finite_tau},
    {"law of large numbers", lln},
    {"SDE stationarity", sde_stationarity},
    {"bulk limit", bulk},
    {"quadrature health", quadrature_health},
};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
    if (id < 1 || id > kCriterionCount) throw std::invalid_argument("criterion id must be in 1..10");
    CriterionResult res;
    res.id = id;
    res.title = kEntries[id - 1].title;
    const auto start = std::chrono::steady_clock::now();
    try {
        const Outcome o = kEntries[id - 1].fn(seed);
        res.passed = o.passed;
        res.detail = o.detail;
    } catch (const std::exception& e) {
        res.passed = false;
        res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::vector<int>& ids) {
    std::vector<CriterionResult> out;
    if (ids.empty()) {
        for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, seed));
    } else {
        for (int id : ids) out.push_back(run_criterion(id, seed));
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    char secs[32];
    std::snprintf(secs, sizeof(secs), "%.2f", r.seconds);
    return "criterion " + std::to_string(r.id) + (r.passed ? " PASS " : " FAIL ") + r.title + ": " + r.detail + " (" +
           secs + " s)";
}

}  // namespace hltasep
