#include "hltasep/moment_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hltasep/hall_littlewood.hpp"

namespace hltasep {

namespace {

constexpr int kMaxGridVariables = 4;

std::vector<int> group_layout(const std::vector<int>& r_list) {
    if (r_list.empty()) throw std::invalid_argument("r_list must be nonempty");
    std::vector<int> groups;
    for (std::size_t m = 0; m < r_list.size(); ++m) {
        if (r_list[m] < 1) throw std::invalid_argument("r values must be positive");
        groups.insert(groups.end(), r_list[m], static_cast<int>(m) + 1);
    }
    if (static_cast<int>(groups.size()) > kMaxGridVariables)
        throw std::invalid_argument("at most 4 contour variables in total");
    return groups;
}

ContourSpec nested_spec(const std::vector<int>& r_list, double t, double first, int nodes) {
    ContourSpec spec;
    spec.groups = group_layout(r_list);
    spec.nodes = nodes;
    double radius = first;
    for (std::size_t m = 0; m < r_list.size(); ++m) {
        spec.radii.insert(spec.radii.end(), r_list[m], radius);
        radius *= 0.5 * t;
    }
    return spec;
}

// Nesting between groups: every radius of a later group below t times every radius of an earlier one.
void check_nesting(const std::vector<int>& r_list, double t, const ContourSpec& spec, double upper) {
    spec.validate();
    if (spec.groups != group_layout(r_list)) throw std::invalid_argument("contour groups do not match r_list");
    const int M = static_cast<int>(r_list.size());
    std::vector<double> lo(M, INFINITY), hi(M, 0.0);
    for (int v = 0; v < spec.dims(); ++v) {
        const int g = spec.groups[v] - 1;
        lo[g] = std::min(lo[g], spec.radii[v]);
        hi[g] = std::max(hi[g], spec.radii[v]);
        if (!(spec.radii[v] < upper)) throw std::invalid_argument("contour radius must be below 1/t");
    }
    for (int a = 0; a < M; ++a)
        for (int b = a + 1; b < M; ++b)
            if (!(hi[b] < t * lo[a]))
                throw std::invalid_argument("contour nesting violated between groups " + std::to_string(a + 1) +
                                            " and " + std::to_string(b + 1));
}

double group_prefactor(const std::vector<int>& r_list, double t_power_base) {
    double pref = 1.0;
    for (int r : r_list) {
        const int pairs = r * (r - 1) / 2;
        pref *= (pairs % 2 ? -1.0 : 1.0) / std::tgamma(r + 1.0);
        if (t_power_base > 0.0) pref /= std::pow(t_power_base, r);
    }
    return pref;
}

QuadratureResult scaled(QuadratureResult q, double factor) {
    q.value *= factor;
    q.imag_residual *= std::abs(factor);
    q.richardson_error *= std::abs(factor);
    q.coarse_error *= std::abs(factor);
    q.converged = richardson_converged(q.value, q.richardson_error, q.coarse_error);
    return q;
}

// Shared pair structure: squared Vandermonde inside a group, cross factor between groups.
cplx group_pair(const std::vector<int>& groups, double t, int a, int b, cplx za, cplx zb) {
    if (groups[a] == groups[b]) return (za - zb) * (za - zb);
    const cplx ratio = zb / za;
    return (1.0 - ratio) / (1.0 - ratio / t);
}

}  // namespace

ContourSpec default_moment_contour(const std::vector<int>& r_list, double t, double tau, int nodes) {
    require_t(t);
    return nested_spec(r_list, t, 0.9 / std::max(1.0, tau), nodes);
}

ContourSpec default_fixed_t_contour(const std::vector<int>& r_list, double t, int nodes) {
    require_t(t);
    return nested_spec(r_list, t, 1.0, nodes);
}

QuadratureResult t_moment_integral(const std::vector<int>& r_list, double t, double tau, const ContourSpec& spec) {
    require_t(t);
    if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
    check_nesting(r_list, t, spec, 1.0 / t);
    const auto groups = spec.groups;
    ProductIntegrand f;
    f.dims = spec.dims();
    f.single = [&](int v, cplx z) {
        const int r = r_list[groups[v] - 1];
        return std::exp(tau * z) * (1.0 + 1.0 / (t * z)) * std::pow(z, -r);
    };
    f.pair = [&](int a, int b, cplx za, cplx zb) { return group_pair(groups, t, a, b, za, zb); };
    return scaled(product_integral(f, spec), group_prefactor(r_list, 0.0));
}

QuadratureResult t_moment_integral(const std::vector<int>& r_list, double t, double tau) {
    return t_moment_integral(r_list, t, tau, default_moment_contour(r_list, t, tau));
}

double t_moment_exact(int r, double t, double tau) {
    require_t(t);
    double term = 1.0, sum = 1.0;
    for (int j = 1; j <= r; ++j) {
        term *= tau / (t * j);
        sum += term;
    }
    return sum;
}

QuadratureResult fixed_t_limit_integral(const std::vector<int>& r_list, double t, const ContourSpec& spec) {
    require_t(t);
    check_nesting(r_list, t, spec, INFINITY);
    const auto groups = spec.groups;
    ProductIntegrand f;
    f.dims = spec.dims();
    f.single = [&](int v, cplx w) {
        const int r = r_list[groups[v] - 1];
        return std::exp(w) * std::pow(w, -(r + 1));
    };
    f.pair = [&](int a, int b, cplx za, cplx zb) { return group_pair(groups, t, a, b, za, zb); };
    return scaled(product_integral(f, spec), group_prefactor(r_list, t));
}

QuadratureResult fixed_t_limit_integral(const std::vector<int>& r_list, double t) {
    return fixed_t_limit_integral(r_list, t, default_fixed_t_contour(r_list, t));
}

ContourSpec default_cov_contour(double tau, int nodes) {
    const double scale = 1.0 / std::max(1.0, tau);
    ContourSpec spec;
    spec.radii = {scale, 0.5 * scale};
    spec.nodes = nodes;
    return spec;
}

namespace {

// g_k(z_1) = \oint F_tau(z_1,...,z_k) dz_2...dz_k / (2 pi i)^{k-1} at every node z_1 of
// the circle, all k variables on that circle.
std::vector<cplx> marginal(int k, double tau, double radius, int N) {
    std::vector<cplx> nodes(N), single(N);
    for (int j = 0; j < N; ++j) {
        nodes[j] = circle_node(radius, j, N);
        single[j] = std::exp(tau * nodes[j]) * (1.0 + nodes[j]) * std::pow(nodes[j], -(k + 1));
    }
    std::vector<cplx> sq(static_cast<std::size_t>(N) * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) sq[a * N + b] = (nodes[a] - nodes[b]) * (nodes[a] - nodes[b]);

    std::vector<cplx> g(N);
    const int free_vars = k - 1;
    const double scale = std::pow(static_cast<double>(N), free_vars);
    for (int j1 = 0; j1 < N; ++j1) {
        if (free_vars == 0) {
            g[j1] = single[j1];
            continue;
        }
        std::vector<int> idx(free_vars, 0);
        cplx sum = 0.0;
        for (;;) {
            cplx val = single[j1];
            for (int v = 0; v < free_vars; ++v) {
                val *= single[idx[v]] * nodes[idx[v]] * sq[j1 * N + idx[v]];
                for (int u = 0; u < v; ++u) val *= sq[idx[u] * N + idx[v]];
            }
            sum += val;
            int v = 0;
            while (v < free_vars && ++idx[v] == N) idx[v++] = 0;
            if (v == free_vars) break;
        }
        g[j1] = sum / scale;
    }
    return g;
}

cplx cov_sum_at(int r, int s, double tau, double Rz, double Rw, int N) {
    const auto gr = marginal(r, tau, Rz, N);
    const auto gs = marginal(s, tau, Rw, N);
    cplx den_r = 0.0, den_s = 0.0, num = 0.0;
    std::vector<cplx> zs(N), ws(N);
    for (int j = 0; j < N; ++j) {
        zs[j] = circle_node(Rz, j, N);
        ws[j] = circle_node(Rw, j, N);
        den_r += gr[j] * zs[j];
        den_s += gs[j] * ws[j];
    }
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) num += ws[j] / (zs[i] - ws[j]) * gr[i] * zs[i] * gs[j] * ws[j];
    num /= static_cast<double>(N) * N;
    den_r /= static_cast<double>(N);
    den_s /= static_cast<double>(N);
    return static_cast<double>(r * s) * num / (den_r * den_s);
}

}  // namespace

QuadratureResult finite_tau_cov(int r, int s, double tau, const ContourSpec& spec) {
    if (s < 1 || r < s) throw std::invalid_argument("finite_tau_cov requires r >= s >= 1");
    if (r > kMaxGridVariables) throw std::invalid_argument("finite_tau_cov supports r <= 4");
    if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
    spec.validate();
    if (spec.dims() != 2) throw std::invalid_argument("covariance contour needs radii (R_z, R_w)");
    const double Rz = spec.radii[0], Rw = spec.radii[1];
    if (!(Rw < Rz)) throw std::invalid_argument("inner radius must be below outer radius");
    const int N = spec.nodes;
    return make_result(cov_sum_at(r, s, tau, Rz, Rw, N), cov_sum_at(r, s, tau, Rz, Rw, N / 2),
                       cov_sum_at(r, s, tau, Rz, Rw, N / 4), N);
}

QuadratureResult finite_tau_cov(int r, int s, double tau) {
    return finite_tau_cov(r, s, tau, default_cov_contour(tau));
}

QuadratureResult cov_X(int r, int s, double tau, int nodes) {
    if (r < 1 || s < 1) throw std::invalid_argument("cov_X indices start at 1");
    const ContourSpec spec = default_cov_contour(tau, nodes);
    QuadratureResult out;
    out.nodes = nodes;
    out.converged = true;
    const int terms[4][3] = {{r, s, 1}, {r - 1, s, -1}, {r, s - 1, -1}, {r - 1, s - 1, 1}};
    for (const auto& term : terms) {
        const int a = std::max(term[0], term[1]), b = std::min(term[0], term[1]);
        if (b == 0) continue;
        const auto q = finite_tau_cov(a, b, tau, spec);
        out.value += term[2] * q.value;
        out.imag_residual += q.imag_residual;
        out.richardson_error += q.richardson_error;
        out.coarse_error += q.coarse_error;
        out.converged = out.converged && q.converged;
    }
    return out;
}

ContourSpec default_D_contour(int r, int s, int nodes) {
    ContourSpec spec;
    const double Rz = std::max({2.0, static_cast<double>(r), 2.0 * s});
    spec.radii = {Rz, 0.5 * Rz};
    spec.nodes = nodes;
    return spec;
}

QuadratureResult D_quadrature(int r, int s, const ContourSpec& spec) {
    if (r < 1 || s < 1) throw std::invalid_argument("D(r,s) needs r, s >= 1");
    spec.validate();
    if (spec.dims() != 2) throw std::invalid_argument("D contour needs radii (R_z, R_w)");
    if (!(spec.radii[1] < spec.radii[0])) throw std::invalid_argument("inner radius must be below outer radius");
    const double fr = std::tgamma(r + 1.0), fs = std::tgamma(s + 1.0);
    ProductIntegrand f;
    f.dims = 2;
    f.single = [&](int v, cplx z) {
        if (v == 0) return fr * std::exp(z) * (1.0 - z / static_cast<double>(r)) * std::pow(z, -(r + 1));
        return fs * std::exp(z) * (1.0 - z / static_cast<double>(s)) * std::pow(z, -(s + 1));
    };
    f.pair = [](int, int, cplx z, cplx w) { return w / (z - w); };
    // (4 pi^2)^{-1} = -(2 pi i)^{-2}
    return scaled(product_integral(f, spec), -1.0);
}

QuadratureResult D_quadrature(int r, int s) { return D_quadrature(r, s, default_D_contour(r, s)); }

}  // namespace hltasep
