#pragma once

#include <cstdint>
#include <vector>

#include "specpert/matrix.hpp"

namespace specpert {

/// One draw of the truncated GAF g_sigma(w) = sum_n alpha_n sigma^{n/2} w^n / sqrt(n!).
struct GafSample {
  double sigma;
  int truncation;             // N_t: highest retained power
  std::vector<cplx> coeffs;   // a_n = alpha_n sigma^{n/2}/sqrt(n!), n = 0..N_t
  double window_radius;       // R: truncation tail controlled inside |w| < R
  std::uint64_t seed;
};

/// Draws alpha_n ~ N_C(0,1) i.i.d.; N_t is the smallest truncation with
/// sum_{n > N_t} sigma^{n/2} R^n / sqrt(n!) <= 1e-3 * e^{sigma R^2 / 2}.
GafSample sample_gaf(double sigma, double r, std::uint64_t seed);

cplx gaf_eval(const GafSample& g, cplx w);
cplx gaf_eval_deriv(const GafSample& g, cplx w);

struct ZeroSet {
  std::vector<cplx> zeros;        // inside the open disk of radius window_radius
  std::vector<double> residuals;  // |f| at the returned zeros
};

/// Zeros of the truncated series inside |w| < R: balanced companion matrix
/// (already Hessenberg), QR eigenvalues, Newton polish on the series.
/// Zeros whose polished residual exceeds 1e-8 * e^{sigma |w|^2/2} are
/// discarded; polished zeros closer than 1e-6 are merged with multiplicity.
ZeroSet find_zeros(const GafSample& g);

/// The two limiting processes: zeros of a product of J independent GAFs, and
/// zeros of det(g^{i,j}) for a J x J matrix of independent GAFs.
struct LimitProcessSpec {
  enum class Kind { ProductV, DetM };
  Kind kind;
  int j_count;
  std::vector<double> sigmas;  // ProductV: J entries; DetM: J*J row-major sigma^{i,j}
  double window_radius;
  std::uint64_t seed;

  static LimitProcessSpec product_v(std::vector<double> sigmas, double r,
                                    std::uint64_t seed);
  /// sigma^{i,j} = (sigma_+^j + sigma_-^i)/2, the kernel convention of the
  /// determinant process (the transposed convention gives the same law).
  static LimitProcessSpec det_m(const std::vector<double>& sigma_plus,
                                const std::vector<double>& sigma_minus, double r,
                                std::uint64_t seed);
  static LimitProcessSpec det_m_matrix(std::vector<double> sigma_ij, int j_count,
                                       double r, std::uint64_t seed);
};

/// ProductV: multiset union of the factors' zero sets. DetM: zeros of the
/// determinant located by the argument principle on an adaptive cell grid,
/// then polished by Newton on the analytic determinant (Jacobi's formula).
/// Throws WindingMismatch if cell counts and the disk contour disagree after
/// two refinement retries.
ZeroSet sample_limit_process(const LimitProcessSpec& spec);

/// Zeros of the same process seen through the plane isometry tau(w) = alpha*w + beta
/// (|alpha| = 1): returns { tau(w) : f(w) = 0 } inside the disk of radius
/// spec.window_radius. Test harness for translation/rotation invariance.
ZeroSet translate_process(const LimitProcessSpec& spec, cplx alpha, cplx beta);

}  // namespace specpert
