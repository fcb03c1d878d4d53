#include "hltasep/exact.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "hltasep/io.hpp"

namespace hltasep {

namespace {

Rational inv_factorial(int m) {
    BigInt f = 1;
    for (int j = 2; j <= m; ++j) f *= j;
    return Rational(BigInt(1), f);
}

Rational factorial(int m) {
    BigInt f = 1;
    for (int j = 2; j <= m; ++j) f *= j;
    return Rational(f);
}

}  // namespace

Rational D_exact(int r, int s) {
    if (r < 1 || s < 1) throw std::invalid_argument("D(r,s) needs r, s >= 1");
    Rational sum = 0;
    for (int n = 1; n <= s; ++n) {
        // [w^{s-n}] e^w (1 - w/s)
        Rational a = inv_factorial(s - n);
        if (n < s) a -= inv_factorial(s - n - 1) / s;
        // [z^{n+r}] e^z (1 - z/r)
        Rational b = inv_factorial(n + r) - inv_factorial(n + r - 1) / r;
        sum += a * b;
    }
    return -factorial(r) * factorial(s) * sum;
}

double D_float(int r, int s) {
    if (r < 1 || s < 1) throw std::invalid_argument("D(r,s) needs r, s >= 1");
    const double base = std::lgamma(static_cast<double>(r)) + std::lgamma(static_cast<double>(s));
    std::vector<double> logs(s);
    double top = -INFINITY;
    for (int n = 1; n <= s; ++n) {
        logs[n - 1] = 2.0 * std::log(static_cast<double>(n)) - std::lgamma(s - n + 1.0) - std::lgamma(n + r + 1.0);
        top = std::max(top, logs[n - 1]);
    }
    double acc = 0.0;
    for (double l : logs) acc += std::exp(l - top);
    return std::exp(base + top + std::log(acc));
}

Rational identity_defect(IdentityKind kind, int r, int s) {
    if (kind == IdentityKind::Zero) {
        if (s < 1 || r < s) throw std::invalid_argument("zero identity needs r >= s >= 1");
        Rational out = -Rational(r + s) * D_exact(r, s);
        if (r > 1) out += Rational(r - 1) * D_exact(r - 1, s);
        if (s > 1) out += Rational(s - 1) * D_exact(r, s - 1);
        return out;
    }
    if (r < 2) throw std::invalid_argument("one identity needs r >= 2");
    return D_exact(r - 1, r) - D_exact(r, r - 1) - Rational(1, r - 1);
}

Rational stationarity_residual(int r, int s) {
    if (r < 1 || s < 1) throw std::invalid_argument("indices start at 1");
    auto A = [](int a, int b) { return a >= b ? D_exact(a, b) : D_exact(b, a); };
    Rational out = r == s ? Rational(1) : Rational(0);
    if (r > 1) out += Rational(r - 1) * A(r - 1, s);
    if (s > 1) out += Rational(s - 1) * A(r, s - 1);
    out -= Rational(r + s) * A(r, s);
    return out;
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Residue: return "residue";
        case Provenance::Recursion: return "recursion";
        case Provenance::Quadrature: return "quadrature";
        case Provenance::MonteCarlo: return "montecarlo";
    }
    return "unknown";
}

CovarianceTable::CovarianceTable(int n, Provenance provenance, bool exact)
    : n_(n), provenance_(provenance), exact_(exact), values_(Eigen::MatrixXd::Zero(n, n)) {
    if (n < 1) throw std::invalid_argument("covariance table size must be positive");
    if (exact) exact_values_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, Rational(0));
}

namespace {
std::size_t tri(int r, int s) {
    if (r < s) std::swap(r, s);
    return static_cast<std::size_t>(r - 1) * r / 2 + (s - 1);
}
}  // namespace

const Rational& CovarianceTable::exact(int r, int s) const {
    if (!exact_) throw std::logic_error("table has no exact entries");
    return exact_values_.at(tri(r, s));
}

void CovarianceTable::set(int r, int s, double v) {
    values_(r - 1, s - 1) = v;
    values_(s - 1, r - 1) = v;
}

void CovarianceTable::set(int r, int s, const Rational& q) {
    if (!exact_) throw std::logic_error("table has no exact entries");
    exact_values_.at(tri(r, s)) = q;
    set(r, s, q.convert_to<double>());
}

bool CovarianceTable::positive_semidefinite(double tol) const {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(values_);
    if (ldlt.info() != Eigen::Success) return false;
    return ldlt.vectorD().minCoeff() >= -tol;
}

void CovarianceTable::write_csv(std::ostream& out) const {
    out << "r,s,numerator,denominator,double\n";
    for (int r = 1; r <= n_; ++r)
        for (int s = 1; s <= r; ++s) {
            out << r << ',' << s << ',';
            if (exact_) {
                const Rational& q = exact(r, s);
                out << numerator(q) << ',' << denominator(q);
            } else {
                out << ',';
            }
            out << ',' << format_double(value(r, s)) << '\n';
        }
}

std::string CovarianceTable::to_json() const {
    nlohmann::json j;
    j["size"] = n_;
    j["provenance"] = to_string(provenance_);
    auto entries = nlohmann::json::array();
    for (int r = 1; r <= n_; ++r)
        for (int s = 1; s <= r; ++s) {
            nlohmann::json e{{"r", r}, {"s", s}, {"double", value(r, s)}};
            if (exact_) {
                e["numerator"] = numerator(exact(r, s)).str();
                e["denominator"] = denominator(exact(r, s)).str();
            }
            entries.push_back(e);
        }
    j["entries"] = entries;
    return j.dump(2);
}

CovarianceTable stationary_cov_table(int nmax) {
    CovarianceTable table(nmax, Provenance::Recursion, true);
    table.set(1, 1, Rational(1, 2));
    for (int r = 2; r <= nmax; ++r) {
        for (int s = 1; s < r; ++s) {
            Rational v = Rational(r - 1) * table.exact(r - 1, s);
            if (s > 1) v += Rational(s - 1) * table.exact(r, s - 1);
            table.set(r, s, v / (r + s));
        }
        table.set(r, r, (1 + Rational(2 * (r - 1)) * table.exact(r, r - 1)) / (2 * r));
    }
    return table;
}

CovarianceTable stationary_cov_table_float(int nmax) {
    CovarianceTable table(nmax, Provenance::Recursion, false);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nmax, nmax);
    A(0, 0) = 0.5;
    for (int r = 2; r <= nmax; ++r) {
        for (int s = 1; s < r; ++s) {
            double v = (r - 1) * A(r - 2, s - 1);
            if (s > 1) v += (s - 1) * A(r - 1, s - 2);
            A(r - 1, s - 1) = v / (r + s);
        }
        A(r - 1, r - 1) = (1.0 + 2.0 * (r - 1) * A(r - 1, r - 2)) / (2.0 * r);
    }
    for (int r = 1; r <= nmax; ++r)
        for (int s = 1; s <= r; ++s) table.set(r, s, A(r - 1, s - 1));
    return table;
}

CovarianceTable residue_cov_table(int nmax) {
    CovarianceTable table(nmax, Provenance::Residue, true);
    for (int r = 1; r <= nmax; ++r)
        for (int s = 1; s <= r; ++s) table.set(r, s, D_exact(r, s));
    return table;
}

}  // namespace hltasep
