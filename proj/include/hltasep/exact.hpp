#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>

namespace hltasep {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// D(r,s) = -[z^-1 w^-1] of w/(z-w) r! s! e^{z+w} (1 - z/r)(1 - w/s) z^{-r-1} w^{-s-1},
// expanding w/(z-w) = sum_{n>=1} (w/z)^n; only n <= s contribute.
Rational D_exact(int r, int s);
// Same value from the positive closed form (r-1)!(s-1)! sum_n n^2 / ((s-n)! (n+r)!),
// summed in log space. Usable for r, s in the thousands.
double D_float(int r, int s);

enum class IdentityKind { Zero, One };

// Zero: (r-1)D(r-1,s) + (s-1)D(r,s-1) - (r+s)D(r,s), boundary terms dropped with their zero weight.
// One: D(r-1,r) - D(r,r-1) - 1/(r-1).
Rational identity_defect(IdentityKind kind, int r, int s = 1);
// Residual of the stationary equations 1(r=s) + (r-1)A_{r-1,s} + (s-1)A_{r,s-1} - (r+s)A_{r,s}
// with A_{r,s} = D(max, min).
Rational stationarity_residual(int r, int s);

enum class Provenance { Residue, Recursion, Quadrature, MonteCarlo };
std::string to_string(Provenance p);

class CovarianceTable {
public:
    CovarianceTable() = default;
    CovarianceTable(int n, Provenance provenance, bool exact);

    int size() const { return n_; }
    Provenance provenance() const { return provenance_; }
    bool has_exact() const { return exact_; }

    // 1-based, symmetric access
    double value(int r, int s) const { return values_(r - 1, s - 1); }
    const Rational& exact(int r, int s) const;
    void set(int r, int s, double v);
    void set(int r, int s, const Rational& q);
    const Eigen::MatrixXd& matrix() const { return values_; }

    // Symmetric factorization succeeds with pivots bounded below by -tol.
    bool positive_semidefinite(double tol = 1e-14) const;

    void write_csv(std::ostream& out) const;   // r,s,numerator,denominator,double
    std::string to_json() const;

private:
    int n_ = 0;
    Provenance provenance_ = Provenance::Recursion;
    bool exact_ = false;
    Eigen::MatrixXd values_;
    std::vector<Rational> exact_values_;  // lower triangle, row major
};

// Triangular fill of the stationary covariance equations in exact arithmetic.
CovarianceTable stationary_cov_table(int nmax);
// Same recursion in doubles, for sizes in the thousands.
CovarianceTable stationary_cov_table_float(int nmax);
// D_exact entrywise, r >= s.
CovarianceTable residue_cov_table(int nmax);

}  // namespace hltasep
