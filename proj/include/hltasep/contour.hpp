#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace hltasep {

using cplx = std::complex<double>;

// Circles centred at 0, one radius per variable, N nodes on every circle.
struct ContourSpec {
    std::vector<double> radii;
    std::vector<int> groups;  // group label per variable (1-based), may be empty
    int nodes = 64;

    int dims() const { return static_cast<int>(radii.size()); }
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double imag_residual = 0.0;
    int nodes = 0;
    double richardson_error = 0.0;  // |v_N - v_{N/2}|
    double coarse_error = 0.0;      // |v_{N/2} - v_{N/4}|
    bool converged = false;
};

// Error drop of at least 10x on doubling, or already at round-off.
bool richardson_converged(double value, double fine_error, double coarse_error);
QuadratureResult make_result(cplx fine, cplx half, cplx quarter, int nodes);

inline cplx circle_node(double radius, int j, int nodes) {
    return std::polar(radius, 2.0 * std::numbers::pi * j / nodes);
}

// prod_j (2 pi i)^{-1} \oint dz_j f(z) by the tensor trapezoid rule. The nested
// N/2 and N/4 rules reuse a subset of the nodes.
template <class F>
QuadratureResult circle_integral(F&& f, const ContourSpec& spec) {
    spec.validate();
    const int d = spec.dims();
    const int N = spec.nodes;
    std::vector<int> idx(d, 0);
    std::vector<cplx> z(d);
    cplx fine = 0.0, half = 0.0, quarter = 0.0;
    for (;;) {
        cplx jac = 1.0;
        bool even = true, by4 = true;
        for (int v = 0; v < d; ++v) {
            z[v] = circle_node(spec.radii[v], idx[v], N);
            jac *= z[v];
            even = even && idx[v] % 2 == 0;
            by4 = by4 && idx[v] % 4 == 0;
        }
        const cplx val = f(std::span<const cplx>(z)) * jac;
        fine += val;
        if (even) half += val;
        if (by4) quarter += val;
        int v = 0;
        while (v < d && ++idx[v] == N) idx[v++] = 0;
        if (v == d) break;
    }
    const double scale = std::pow(static_cast<double>(N), d);
    return make_result(fine / scale, half / (scale / std::pow(2.0, d)), quarter / (scale / std::pow(4.0, d)), N);
}

// Integrand of the form prod_v single(v, z_v) * prod_{a<b} pair(a, b, z_a, z_b); node tables
// are precomputed so the grid sweep is d complex products per point.
struct ProductIntegrand {
    int dims = 0;
    std::function<cplx(int, cplx)> single;
    std::function<cplx(int, int, cplx, cplx)> pair;  // may be empty
};

QuadratureResult product_integral(const ProductIntegrand& f, const ContourSpec& spec);

}  // namespace hltasep
