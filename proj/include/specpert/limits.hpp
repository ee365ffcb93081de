#pragma once

#include <span>
#include <vector>

#include "specpert/matrix.hpp"

namespace specpert {

/// Universal GAF 2-point scaling function
/// kappa(t) = ((sinh^2 t + t^2) cosh t - 2 t sinh t) / sinh^3 t, t >= 0.
/// Series branch near 0, asymptotic value 1 for large t.
double kappa(double t);

/// Permanent via Ryser's formula with Gray-code updates; k <= 12.
cplx permanent(const CMatrix& m);

/// r-point density of the zero process of one GAF with kernel exp(sigma u conj(v)):
/// perm(C - B A^{-1} B*) / det(pi A), rows/columns rescaled by
/// e^{-sigma |w_n|^2 / 2} to keep everything in range. r <= 8; points must be
/// pairwise distinct (NearSingularA when cond(A) > cond_limit).
double gaf_r_point_density(std::span<const cplx> points, double sigma,
                           double cond_limit = 1e12);

/// k-point density of the product-of-J-GAFs process: the multinomial
/// concatenation over compositions alpha of k and permutations of the points.
/// k <= 6, J <= 6. Factors whose point groups are too clustered to resolve
/// (NearSingularA) contribute 0; their true size is O(rho^{r(r-1)}), below
/// double precision exactly when this triggers.
double limit_k_density_V(std::span<const cplx> points, std::span<const double> sigmas);

/// K^{2,V}(r^2) = 1 + sum_j sigma_j^2/(sum sigma)^2 (kappa(sigma_j r^2/2) - 1).
double limit_2pt_correlation_V(double r2, std::span<const double> sigma_plus);

/// Ginibre curve 1 - exp(-sigma_sum r^2 / 2), sigma_sum = sum_i (sigma_+^i + sigma_-^i).
double ginibre_2pt_correlation(double r2, double sigma_sum);

/// 1-point density of the determinant process: sum_i (sigma_+^i + sigma_-^i) / (2 pi).
double limit_1_density_M(std::span<const double> sigma_plus,
                         std::span<const double> sigma_minus);

}  // namespace specpert
