#pragma once

#include <vector>

#include "hltasep/contour.hpp"

namespace hltasep {

// Variables laid out group by group; group m holds r_m variables on one circle.
// Radii R_1 = 0.9 / max(1, tau), R_{m+1} = t R_m / 2.
ContourSpec default_moment_contour(const std::vector<int>& r_list, double t, double tau, int nodes = 64);
// Radii R_1 = 1, R_{m+1} = t R_m / 2.
ContourSpec default_fixed_t_contour(const std::vector<int>& r_list, double t, int nodes = 64);

// E[t^{-sum_m sum_{j<=r_m} lambda'_j(tau)}] as a nested contour integral.
QuadratureResult t_moment_integral(const std::vector<int>& r_list, double t, double tau, const ContourSpec& spec);
QuadratureResult t_moment_integral(const std::vector<int>& r_list, double t, double tau);
// One group: sum_{j=0}^r tau^j t^{-j}/j!.
double t_moment_exact(int r, double t, double tau);

// lim tau^{-sum r} E[...] as tau -> infinity at fixed t.
QuadratureResult fixed_t_limit_integral(const std::vector<int>& r_list, double t, const ContourSpec& spec);
QuadratureResult fixed_t_limit_integral(const std::vector<int>& r_list, double t);

// Radii (1, 0.5) / max(1, tau) for the (z, w) circles.
ContourSpec default_cov_contour(double tau, int nodes = 64);
// Cov(X^(1)+...+X^(r), X^(1)+...+X^(s)) at finite tau, r >= s >= 1, r <= 4.
QuadratureResult finite_tau_cov(int r, int s, double tau, const ContourSpec& spec);
QuadratureResult finite_tau_cov(int r, int s, double tau);
// Cov(X^(r), X^(s)) by differencing partial-sum covariances. Errors are summed.
QuadratureResult cov_X(int r, int s, double tau, int nodes = 64);

// (R_z, R_w) = (max(2, r, 2s), R_z / 2).
ContourSpec default_D_contour(int r, int s, int nodes = 64);
// D(r,s) by trapezoid quadrature on two circles, |w| < |z|.
QuadratureResult D_quadrature(int r, int s, const ContourSpec& spec);
QuadratureResult D_quadrature(int r, int s);

}  // namespace hltasep
