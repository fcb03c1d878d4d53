#include "hltasep/contour.hpp"

#include <algorithm>

namespace hltasep {

void ContourSpec::validate() const {
    if (radii.empty()) throw std::invalid_argument("contour spec needs at least one variable");
    if (nodes < 4 || (nodes & (nodes - 1)) != 0) throw std::invalid_argument("node count must be a power of two >= 4");
    for (double r : radii)
        if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("contour radii must be positive");
    if (!groups.empty() && groups.size() != radii.size())
        throw std::invalid_argument("one group label per variable");
}

bool richardson_converged(double value, double fine_error, double coarse_error) {
    const double floor = 1e-12 * std::max(1.0, std::abs(value));
    return fine_error <= floor || fine_error <= 0.1 * coarse_error;
}

QuadratureResult make_result(cplx fine, cplx half, cplx quarter, int nodes) {
    QuadratureResult r;
    r.value = fine.real();
    r.imag_residual = std::abs(fine.imag());
    r.nodes = nodes;
    r.richardson_error = std::abs(fine - half);
    r.coarse_error = std::abs(half - quarter);
    r.converged = richardson_converged(r.value, r.richardson_error, r.coarse_error);
    return r;
}

QuadratureResult product_integral(const ProductIntegrand& f, const ContourSpec& spec) {
    spec.validate();
    const int d = spec.dims();
    if (f.dims != d) throw std::invalid_argument("integrand and contour dimensions differ");
    const int N = spec.nodes;
    std::vector<std::vector<cplx>> nodes(d, std::vector<cplx>(N));
    std::vector<std::vector<cplx>> single(d, std::vector<cplx>(N));
    for (int v = 0; v < d; ++v)
        for (int j = 0; j < N; ++j) {
            nodes[v][j] = circle_node(spec.radii[v], j, N);
            single[v][j] = f.single(v, nodes[v][j]) * nodes[v][j];
        }
    // pair[b][a] table indexed ja * N + jb, for a < b
    std::vector<std::vector<std::vector<cplx>>> pair(d);
    if (f.pair) {
        for (int b = 0; b < d; ++b) {
            pair[b].resize(b);
            for (int a = 0; a < b; ++a) {
                auto& tab = pair[b][a];
                tab.resize(static_cast<std::size_t>(N) * N);
                for (int ja = 0; ja < N; ++ja)
                    for (int jb = 0; jb < N; ++jb) tab[ja * N + jb] = f.pair(a, b, nodes[a][ja], nodes[b][jb]);
            }
        }
    }

    cplx fine = 0.0, half = 0.0, quarter = 0.0;
    std::vector<int> idx(d, 0);
    std::vector<cplx> prefix(d + 1, 1.0);
    // odometer with the last variable fastest; prefix[v+1] holds the product over variables <= v
    auto refresh = [&](int from) {
        for (int v = from; v < d; ++v) {
            cplx p = prefix[v] * single[v][idx[v]];
            if (f.pair)
                for (int a = 0; a < v; ++a) p *= pair[v][a][idx[a] * N + idx[v]];
            prefix[v + 1] = p;
        }
    };
    refresh(0);
    for (;;) {
        const cplx val = prefix[d];
        fine += val;
        bool even = true, by4 = true;
        for (int v = 0; v < d; ++v) {
            even = even && idx[v] % 2 == 0;
            by4 = by4 && idx[v] % 4 == 0;
        }
        if (even) half += val;
        if (by4) quarter += val;
        int v = d - 1;
        while (v >= 0 && ++idx[v] == N) idx[v--] = 0;
        if (v < 0) break;
        refresh(v);
    }
    const double scale = std::pow(static_cast<double>(N), d);
    return make_result(fine / scale, half / (scale / std::pow(2.0, d)), quarter / (scale / std::pow(4.0, d)), N);
}

}  // namespace hltasep
