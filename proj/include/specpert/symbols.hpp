#pragma once

#include <cstdint>
#include <vector>

#include "specpert/matrix.hpp"

namespace specpert {

enum class SymbolKind { ComplexHarmonicOscillator, TorusExp };
enum class DomainKind { RealLine, Torus };

/// Classical symbol p0(x,xi). Built-in models:
///   ComplexHarmonicOscillator:  xi^2 + i x^2 on the real line
///   TorusExp(q):                xi^2 + e^{-iqx} on the torus of period 2pi
struct SymbolModel {
  SymbolKind kind = SymbolKind::ComplexHarmonicOscillator;
  int q = 0;

  static SymbolModel complex_ho() { return {SymbolKind::ComplexHarmonicOscillator, 0}; }
  static SymbolModel torus_exp(int q) { return {SymbolKind::TorusExp, q}; }

  DomainKind domain() const {
    return kind == SymbolKind::TorusExp ? DomainKind::Torus : DomainKind::RealLine;
  }
};

struct PhasePoint {
  double x = 0.0;
  double xi = 0.0;
};

/// Normalizes x to [0, 2pi) for torus models, identity otherwise.
PhasePoint reduce_point(const SymbolModel& model, PhasePoint rho);

struct ShellPoint {
  PhasePoint rho;
  int sign;        // +1 iff bracket < 0
  double bracket;  // {Re p0, Im p0}(rho)
  double sigma;    // 1/|bracket|
};

struct EnergyShell {
  cplx z;
  int j_count = 0;  // J: number of points of each sign
  std::vector<ShellPoint> points;

  std::vector<double> sigmas_plus() const;
  std::vector<double> sigmas_minus() const;
  /// sum_j (sigma_+^j + sigma_-^j), the local Weyl density (per 2*pi*h).
  double density_sum() const;
};

cplx eval_symbol(const SymbolModel& model, PhasePoint rho);
cplx symbol_dx(const SymbolModel& model, PhasePoint rho);
cplx symbol_dxi(const SymbolModel& model, PhasePoint rho);

/// {Re p0, Im p0}(rho) with the convention {p,q} = dp/dxi dq/dx - dq/dxi dp/dx,
/// closed form per model.
double poisson_bracket(const SymbolModel& model, PhasePoint rho);

/// Central finite-difference evaluation of {f, g} for cross-checks.
double poisson_bracket_fd(const SymbolModel& model, PhasePoint rho, double step = 1e-6);

/// All 2J solutions of p0(rho) = z with signs and classical densities.
/// Closed-form branches for the built-in models. Throws NoSolution if z lies
/// outside the classical spectrum, ShellDegenerate if any bracket magnitude
/// falls below degeneracy_tol.
EnergyShell solve_energy_shell(const SymbolModel& model, cplx z,
                               double degeneracy_tol = 1e-8);

struct PhaseBox {
  double x_lo, x_hi, xi_lo, xi_hi;
};

/// Newton continuation from a coarse grid of seeds over `box`; duplicate
/// roots merged below merge_tol. Extensibility fallback, cross-checked
/// against the closed forms in the tests.
EnergyShell solve_energy_shell_newton(const SymbolModel& model, cplx z,
                                      const PhaseBox& box, int grid = 64,
                                      double merge_tol = 1e-6,
                                      double degeneracy_tol = 1e-8);

/// Axis-aligned rectangle in the energy plane.
struct Rect {
  double re_lo, re_hi, im_lo, im_hi;
  double area() const { return (re_hi - re_lo) * (im_hi - im_lo); }
};

struct VolumeEstimate {
  double quadrature;   // integral of the push-forward density over the rectangle
  double monte_carlo;  // rejection sampling over a bounding phase-space box
  double mc_stderr;
};

/// Symplectic volume of p0^{-1}(gamma), computed both ways; returns the
/// quadrature value after checking the two routes agree within 3 MC sigma
/// (InconsistentVolume otherwise).
VolumeEstimate phase_space_volume_detail(const SymbolModel& model, const Rect& gamma,
                                         std::uint64_t mc_seed = 12345,
                                         int mc_samples = 200000);
double phase_space_volume(const SymbolModel& model, const Rect& gamma);

}  // namespace specpert
