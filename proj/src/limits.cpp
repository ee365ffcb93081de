#include "specpert/limits.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "specpert/errors.hpp"

namespace specpert {

double kappa(double t) {
  if (t < 0.0) throw SimError(Err::BadConfig, "kappa: t must be >= 0");
  if (t <= 0.05) {
    // kappa(t) = t - (2/9)t^3 + (2/45)t^5 - (4/525)t^7 + (2/1701)t^9 + O(t^11);
    // the closed form loses ~2eps/t^2 to cancellation here.
    const double t2 = t * t;
    return t * (1.0 + t2 * (-2.0 / 9.0 +
                            t2 * (2.0 / 45.0 + t2 * (-4.0 / 525.0 + t2 * (2.0 / 1701.0)))));
  }
  if (t >= 40.0) return 1.0;  // 1 - kappa ~ 4 t^2 e^{-2t}, below 1 ulp
  const double s = std::sinh(t);
  const double c = std::cosh(t);
  return ((s * s + t * t) * c - 2.0 * t * s) / (s * s * s);
}

cplx permanent(const CMatrix& m) {
  const int k = m.rows();
  if (k != m.cols()) throw SimError(Err::DimensionMismatch, "permanent: matrix not square");
  if (k > 12) throw SimError(Err::TooLarge, "permanent: Ryser limited to k <= 12");
  if (k == 0) return 1.0;

  // Ryser: perm(A) = (-1)^k sum_{S nonempty} (-1)^{|S|} prod_i sum_{j in S} a_ij,
  // walking subsets in Gray-code order so each step updates one column.
  std::vector<cplx> row_sums(k, 0.0);
  cplx total = 0.0;
  std::uint32_t gray = 0;
  int popcount = 0;
  const std::uint32_t limit = 1u << k;
  for (std::uint32_t g = 1; g < limit; ++g) {
    const std::uint32_t next_gray = g ^ (g >> 1);
    const std::uint32_t bit = gray ^ next_gray;
    const int j = std::countr_zero(bit);
    const bool added = next_gray & bit;
    popcount += added ? 1 : -1;
    for (int i = 0; i < k; ++i)
      row_sums[i] += added ? m(i, j) : -m(i, j);
    gray = next_gray;
    cplx prod = 1.0;
    for (int i = 0; i < k; ++i) prod *= row_sums[i];
    total += ((k - popcount) % 2 ? -1.0 : 1.0) * prod;
  }
  return total;
}

double gaf_r_point_density(std::span<const cplx> points, double sigma,
                           double cond_limit) {
  const int r = static_cast<int>(points.size());
  if (r < 1) throw SimError(Err::BadConfig, "gaf_r_point_density: need at least one point");
  if (r > 8) throw SimError(Err::TooLarge, "gaf_r_point_density: r <= 8");

  // Symmetrically rescaled kernel matrices: pull e^{sigma |w_n|^2/2} out of
  // row n and column n. The density is invariant under this scaling and all
  // entries stay O(1).
  CMatrix a(r, r), b(r, r), c(r, r);
  for (int n = 0; n < r; ++n)
    for (int m = 0; m < r; ++m) {
      const cplx cross = points[n] * std::conj(points[m]);
      const double re = 0.5 * (std::norm(points[n]) + std::norm(points[m]));
      const cplx scaled = std::exp(sigma * (cross - re));
      a(n, m) = scaled;
      b(n, m) = sigma * std::conj(points[m]) * scaled;
      c(n, m) = (sigma + sigma * sigma * cross) * scaled;
    }

  if (cond_1(a) > cond_limit)
    throw SimError(Err::NearSingularA, "gaf_r_point_density: points too close to resolve");

  const LuFactors lu = lu_factor(a);
  // M = C - B A^{-1} B*
  CMatrix bstar(r, r);
  for (int n = 0; n < r; ++n)
    for (int m = 0; m < r; ++m) bstar(n, m) = std::conj(b(m, n));
  std::vector<cplx> col(r);
  CMatrix ainv_bstar(r, r);
  for (int j = 0; j < r; ++j) {
    for (int i = 0; i < r; ++i) col[i] = bstar(i, j);
    lu_solve_inplace(lu, col);
    for (int i = 0; i < r; ++i) ainv_bstar(i, j) = col[i];
  }
  CMatrix m = c;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < r; ++k) s += b(i, k) * ainv_bstar(k, j);
      m(i, j) -= s;
    }

  const cplx det_a = lu_det(lu);  // Hermitian positive definite: real > 0
  const double denom = std::pow(std::numbers::pi, r) * det_a.real();
  return permanent(m).real() / denom;
}

namespace {

// Next composition of k into j parts, lexicographic; returns false when done.
bool next_composition(std::vector<int>& alpha, int k) {
  const int j = static_cast<int>(alpha.size());
  int i = j - 2;
  while (i >= 0 && alpha[i] == 0) --i;
  if (i < 0) return false;
  --alpha[i];
  int tail = 0;
  for (int l = i + 1; l < j; ++l) {
    tail += alpha[l];
    alpha[l] = 0;
  }
  alpha[i + 1] = tail + 1;
  return true;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

double limit_k_density_V(std::span<const cplx> points, std::span<const double> sigmas) {
  const int k = static_cast<int>(points.size());
  const int j_count = static_cast<int>(sigmas.size());
  if (k < 1 || j_count < 1)
    throw SimError(Err::BadConfig, "limit_k_density_V: empty input");
  if (k > 6 || j_count > 6)
    throw SimError(Err::TooLarge, "limit_k_density_V: k <= 6 and J <= 6");

  std::vector<int> perm_idx(k);
  for (int i = 0; i < k; ++i) perm_idx[i] = i;

  std::vector<int> alpha(j_count, 0);
  alpha[0] = k;

  double total = 0.0;
  do {
    double inv_alpha_fact = 1.0;
    for (int j = 0; j < j_count; ++j) inv_alpha_fact /= factorial(alpha[j]);

    std::vector<int> tau = perm_idx;
    std::vector<cplx> group;
    group.reserve(k);
    do {
      double prod = inv_alpha_fact;
      int offset = 0;
      for (int j = 0; j < j_count && prod != 0.0; ++j) {
        const int r = alpha[j];
        if (r == 0) continue;
        group.clear();
        for (int l = 0; l < r; ++l) group.push_back(points[tau[offset + l]]);
        offset += r;
        try {
          // Tighter resolvability cutoffs than the public entry point: a
          // clustered factor is O(rho^{r(r-1)}) against the O(rho^2) terms
          // that survive, but its round-off noise would dominate the sum.
          // Pair factors stay accurate far longer than triples and beyond.
          prod *= gaf_r_point_density(group, sigmas[j], r <= 2 ? 1e8 : 1e5);
        } catch (const SimError& e) {
          if (e.code() != Err::NearSingularA) throw;
          prod = 0.0;
        }
      }
      total += prod;
    } while (std::next_permutation(tau.begin(), tau.end()));
  } while (next_composition(alpha, k));

  return total;
}

double limit_2pt_correlation_V(double r2, std::span<const double> sigma_plus) {
  if (r2 < 0.0) throw SimError(Err::BadConfig, "limit_2pt_correlation_V: r2 must be >= 0");
  double sum = 0.0, sum_sq_kappa = 0.0;
  for (double s : sigma_plus) sum += s;
  for (double s : sigma_plus) sum_sq_kappa += s * s * (kappa(0.5 * s * r2) - 1.0);
  return 1.0 + sum_sq_kappa / (sum * sum);
}

double ginibre_2pt_correlation(double r2, double sigma_sum) {
  if (r2 < 0.0) throw SimError(Err::BadConfig, "ginibre_2pt_correlation: r2 must be >= 0");
  return 1.0 - std::exp(-0.5 * sigma_sum * r2);
}

double limit_1_density_M(std::span<const double> sigma_plus,
                         std::span<const double> sigma_minus) {
  double s = 0.0;
  for (double v : sigma_plus) s += v;
  for (double v : sigma_minus) s += v;
  return s / (2.0 * std::numbers::pi);
}

}  // namespace specpert
