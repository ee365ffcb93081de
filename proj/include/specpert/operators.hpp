#pragma once

#include <cstdint>
#include <vector>

#include "specpert/matrix.hpp"
#include "specpert/symbols.hpp"

namespace specpert {

enum class BasisKind { FourierTorus, ScaledHermite };

/// FourierTorus: modes -K..K (cutoff = K), dimension 2K+1, e^{ikx}/sqrt(2pi).
/// ScaledHermite: Hermite functions of x/sqrt(h) (cutoff = n_max),
/// dimension n_max+1.
struct BasisSpec {
  BasisKind kind;
  int cutoff;
  double h;

  int dimension() const {
    return kind == BasisKind::FourierTorus ? 2 * cutoff + 1 : cutoff + 1;
  }
  static BasisSpec fourier_torus(int k_cutoff, double h) {
    return {BasisKind::FourierTorus, k_cutoff, h};
  }
  static BasisSpec scaled_hermite(int n_max, double h) {
    return {BasisKind::ScaledHermite, n_max, h};
  }
};

struct OperatorMatrix {
  CMatrix entries;
  BasisSpec basis;
  double h;
};

/// Matrix of the unperturbed operator in the given basis.
/// TorusExp(q): diagonal (hk)^2 plus a single unit superdiagonal at offset q
/// (mode k couples to mode k-q); exactly triangular in mode order.
/// ComplexHO: h*(T + iX) with T, X the pentadiagonal matrices of -d^2/dy^2
/// and y^2 in the Hermite-function basis.
/// window_max_abs, when positive, is the largest |z| the caller intends to
/// study; CutoffTooSmall if the basis does not cover twice that energy.
OperatorMatrix build_unperturbed(const SymbolModel& model, const BasisSpec& basis,
                                 double h, double window_max_abs = 0.0);

enum class PerturbKind { RandomMatrix, RandomPotential };
enum class CoeffLaw { ComplexGaussian, UniformPhase };

struct PerturbationDraw {
  PerturbKind kind;
  CoeffLaw law;
  int size;                  // N: coeffs has N*N entries (RM) or N entries (RP)
  bool clamped;
  double clamp_bound;        // C/h when clamped, 0 otherwise
  std::uint64_t seed;
  std::vector<cplx> coeffs;  // RM: row-major q_{j,k}; RP: v_j, j = -(N-1)/2..(N-1)/2
};

/// Coefficients drawn i.i.d. from the law; clamping resamples any coefficient
/// with |alpha| > C/h, realizing the conditional law on the disc.
PerturbationDraw draw_perturbation(PerturbKind kind, CoeffLaw law, int n, double h,
                                   bool clamp, double clamp_c, std::uint64_t seed);

/// P + delta*(perturbation operator). RandomMatrix: P + (delta/N) Q in the
/// discretization basis. RandomPotential: multiplication by
/// V(x) = (1/N) sum_j v_j e^{ijx}/sqrt(2pi); Toeplitz on the torus,
/// Gauss-Hermite quadrature on the Hermite basis.
OperatorMatrix assemble_perturbed(const OperatorMatrix& p, const PerturbationDraw& draw,
                                  double delta);

/// Hilbert-Schmidt norm of M = Q/N for a RandomMatrix draw.
double hs_norm(const PerturbationDraw& draw);

/// Gauss-Hermite rule for integrals against plain functions:
/// integral f(y) dy ~= sum_p weights[p] * f(nodes[p]), with the e^{-y^2}
/// weight folded into the Christoffel weights.
struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
HermiteRule gauss_hermite_rule(int m);

/// Orthonormal Hermite functions phi_0..phi_{n_max} at y.
std::vector<double> hermite_functions(int n_max, double y);

}  // namespace specpert
