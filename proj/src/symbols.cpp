#include "specpert/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specpert/errors.hpp"
#include "specpert/rng.hpp"

namespace specpert {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PhasePoint reduce_point(const SymbolModel& model, PhasePoint rho) {
  if (model.domain() == DomainKind::Torus) {
    rho.x = std::fmod(rho.x, kTwoPi);
    if (rho.x < 0.0) rho.x += kTwoPi;
  }
  return rho;
}

cplx eval_symbol(const SymbolModel& model, PhasePoint rho) {
  switch (model.kind) {
    case SymbolKind::ComplexHarmonicOscillator:
      return {rho.xi * rho.xi, rho.x * rho.x};
    case SymbolKind::TorusExp: {
      const double a = model.q * rho.x;
      return cplx(rho.xi * rho.xi, 0.0) + cplx(std::cos(a), -std::sin(a));
    }
  }
  return 0.0;
}

cplx symbol_dx(const SymbolModel& model, PhasePoint rho) {
  switch (model.kind) {
    case SymbolKind::ComplexHarmonicOscillator:
      return {0.0, 2.0 * rho.x};
    case SymbolKind::TorusExp: {
      const double a = model.q * rho.x;
      // d/dx e^{-iqx} = -iq e^{-iqx}
      return cplx(0.0, -static_cast<double>(model.q)) * cplx(std::cos(a), -std::sin(a));
    }
  }
  return 0.0;
}

cplx symbol_dxi(const SymbolModel& model, PhasePoint rho) {
  return {2.0 * rho.xi, 0.0};
}

double poisson_bracket(const SymbolModel& model, PhasePoint rho) {
  switch (model.kind) {
    case SymbolKind::ComplexHarmonicOscillator:
      return 4.0 * rho.x * rho.xi;
    case SymbolKind::TorusExp:
      return -2.0 * model.q * rho.xi * std::cos(model.q * rho.x);
  }
  return 0.0;
}

double poisson_bracket_fd(const SymbolModel& model, PhasePoint rho, double step) {
  const auto re = [&](PhasePoint p) { return eval_symbol(model, p).real(); };
  const auto im = [&](PhasePoint p) { return eval_symbol(model, p).imag(); };
  const PhasePoint xp{rho.x + step, rho.xi}, xm{rho.x - step, rho.xi};
  const PhasePoint kp{rho.x, rho.xi + step}, km{rho.x, rho.xi - step};
  const double dre_dx = (re(xp) - re(xm)) / (2.0 * step);
  const double dre_dxi = (re(kp) - re(km)) / (2.0 * step);
  const double dim_dx = (im(xp) - im(xm)) / (2.0 * step);
  const double dim_dxi = (im(kp) - im(km)) / (2.0 * step);
  return dre_dxi * dim_dx - dim_dxi * dre_dx;
}

std::vector<double> EnergyShell::sigmas_plus() const {
  std::vector<double> out;
  for (const auto& p : points)
    if (p.sign > 0) out.push_back(p.sigma);
  return out;
}

std::vector<double> EnergyShell::sigmas_minus() const {
  std::vector<double> out;
  for (const auto& p : points)
    if (p.sign < 0) out.push_back(p.sigma);
  return out;
}

double EnergyShell::density_sum() const {
  double s = 0.0;
  for (const auto& p : points) s += p.sigma;
  return s;
}

namespace {

ShellPoint make_shell_point(const SymbolModel& model, PhasePoint rho) {
  const double br = poisson_bracket(model, rho);
  return {rho, br < 0.0 ? +1 : -1, br, std::abs(br) > 0.0 ? 1.0 / std::abs(br) : 0.0};
}

void check_degeneracy(const EnergyShell& shell, double tol) {
  for (const auto& p : shell.points)
    if (std::abs(p.bracket) < tol)
      throw SimError(Err::ShellDegenerate,
                     "energy shell: |{Re p0, Im p0}| below degeneracy tolerance");
}

EnergyShell shell_complex_ho(cplx z, double tol) {
  const double X = z.real(), Y = z.imag();
  if (X < 0.0 || Y < 0.0)
    throw SimError(Err::NoSolution, "energy shell: z outside the classical spectrum");
  const double sx = std::sqrt(X), sy = std::sqrt(Y);
  SymbolModel m = SymbolModel::complex_ho();
  EnergyShell shell{z, 2, {}};
  for (const double x : {sy, -sy})
    for (const double xi : {sx, -sx})
      shell.points.push_back(make_shell_point(m, {x, xi}));
  check_degeneracy(shell, tol);
  return shell;
}

EnergyShell shell_torus_exp(const SymbolModel& model, cplx z, double tol) {
  const double X = z.real(), Y = z.imag();
  if (std::abs(Y) > 1.0)
    throw SimError(Err::NoSolution, "energy shell: z outside the classical spectrum");
  const double s = std::sqrt(1.0 - Y * Y);
  EnergyShell shell{z, 0, {}};
  for (const double t : {X - s, X + s}) {
    if (t < 0.0) continue;
    const double xi0 = std::sqrt(t);
    // e^{-iqx} = z - t has modulus 1; q solutions of x per branch
    const double theta = std::atan2(Y, X - t);
    for (int m = 0; m < model.q; ++m) {
      double x = (-theta + kTwoPi * m) / model.q;
      x = std::fmod(x, kTwoPi);
      if (x < 0.0) x += kTwoPi;
      for (const double xi : {xi0, -xi0})
        shell.points.push_back(make_shell_point(model, {x, xi}));
    }
  }
  if (shell.points.empty())
    throw SimError(Err::NoSolution, "energy shell: z outside the classical spectrum");
  shell.j_count = static_cast<int>(shell.points.size()) / 2;
  check_degeneracy(shell, tol);
  return shell;
}

}  // namespace

EnergyShell solve_energy_shell(const SymbolModel& model, cplx z, double degeneracy_tol) {
  switch (model.kind) {
    case SymbolKind::ComplexHarmonicOscillator:
      return shell_complex_ho(z, degeneracy_tol);
    case SymbolKind::TorusExp:
      return shell_torus_exp(model, z, degeneracy_tol);
  }
  throw SimError(Err::NoSolution, "energy shell: unknown model");
}

EnergyShell solve_energy_shell_newton(const SymbolModel& model, cplx z,
                                      const PhaseBox& box, int grid,
                                      double merge_tol, double degeneracy_tol) {
  std::vector<PhasePoint> roots;
  const double dx = (box.x_hi - box.x_lo) / grid;
  const double dxi = (box.xi_hi - box.xi_lo) / grid;

  auto torus_dist = [&](double a, double b) {
    if (model.domain() != DomainKind::Torus) return std::abs(a - b);
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
  };

  for (int i = 0; i <= grid; ++i) {
    for (int j = 0; j <= grid; ++j) {
      PhasePoint p{box.x_lo + i * dx, box.xi_lo + j * dxi};
      bool ok = false;
      for (int it = 0; it < 50; ++it) {
        const cplx f = eval_symbol(model, p) - z;
        if (std::abs(f) < 1e-13 * (1.0 + std::abs(z))) {
          ok = true;
          break;
        }
        const cplx px = symbol_dx(model, p), pxi = symbol_dxi(model, p);
        // 2x2 real Newton step on (Re f, Im f)
        const double a = pxi.real(), b = px.real();
        const double c = pxi.imag(), d = px.imag();
        const double det = a * d - b * c;
        if (std::abs(det) < 1e-14) break;
        const double fr = f.real(), fi = f.imag();
        const double dxi_step = (d * fr - b * fi) / det;
        const double dx_step = (-c * fr + a * fi) / det;
        p.xi -= dxi_step;
        p.x -= dx_step;
        if (std::abs(dx_step) + std::abs(dxi_step) > 1e6) break;
      }
      if (!ok) continue;
      p = reduce_point(model, p);
      bool dup = false;
      for (const auto& r : roots)
        if (torus_dist(r.x, p.x) < merge_tol && std::abs(r.xi - p.xi) < merge_tol) {
          dup = true;
          break;
        }
      if (!dup) roots.push_back(p);
    }
  }

  if (roots.empty())
    throw SimError(Err::NoSolution, "newton shell: no roots found in the seed box");

  EnergyShell shell{z, 0, {}};
  for (const auto& r : roots) shell.points.push_back(make_shell_point(model, r));
  check_degeneracy(shell, degeneracy_tol);
  int plus = 0;
  for (const auto& p : shell.points) plus += (p.sign > 0);
  if (2 * plus != static_cast<int>(shell.points.size()))
    throw SimError(Err::ShellDegenerate,
                   "newton shell: sign-unbalanced root set (roots missed or spurious)");
  shell.j_count = plus;
  return shell;
}

namespace {

// Bounding phase-space box containing p0^{-1}(gamma); empty box when the
// preimage is empty.
bool bounding_box(const SymbolModel& model, const Rect& g, PhaseBox& box) {
  switch (model.kind) {
    case SymbolKind::ComplexHarmonicOscillator: {
      if (g.re_hi <= 0.0 || g.im_hi <= 0.0) return false;
      const double xm = std::sqrt(std::max(g.im_hi, 0.0));
      const double km = std::sqrt(std::max(g.re_hi, 0.0));
      box = {-xm, xm, -km, km};
      return true;
    }
    case SymbolKind::TorusExp: {
      if (g.re_hi + 1.0 <= 0.0) return false;
      const double km = std::sqrt(g.re_hi + 1.0);
      box = {0.0, kTwoPi, -km, km};
      return true;
    }
  }
  return false;
}

double density_at(const SymbolModel& model, cplx z) {
  try {
    return solve_energy_shell(model, z).density_sum();
  } catch (const SimError&) {
    return 0.0;  // outside the classical spectrum
  }
}

}  // namespace

VolumeEstimate phase_space_volume_detail(const SymbolModel& model, const Rect& gamma,
                                         std::uint64_t mc_seed, int mc_samples) {
  VolumeEstimate est{0.0, 0.0, 0.0};
  if (gamma.area() <= 0.0) return est;

  // (b) quadrature of the push-forward density, composite Simpson
  const int n = 128;  // intervals per axis (even)
  const double hx = (gamma.re_hi - gamma.re_lo) / n;
  const double hy = (gamma.im_hi - gamma.im_lo) / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double wi = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    for (int j = 0; j <= n; ++j) {
      const double wj = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      sum += wi * wj * density_at(model, {gamma.re_lo + i * hx, gamma.im_lo + j * hy});
    }
  }
  est.quadrature = sum * hx * hy / 9.0;

  // (a) Monte Carlo rejection sampling over a bounding box
  PhaseBox box;
  if (!bounding_box(model, gamma, box)) {
    est.monte_carlo = 0.0;
    est.mc_stderr = 0.0;
    return est;
  }
  const double box_area = (box.x_hi - box.x_lo) * (box.xi_hi - box.xi_lo);
  Rng rng(mc_seed);
  long hits = 0;
  for (int i = 0; i < mc_samples; ++i) {
    const PhasePoint p{box.x_lo + (box.x_hi - box.x_lo) * rng.uniform01(),
                       box.xi_lo + (box.xi_hi - box.xi_lo) * rng.uniform01()};
    const cplx v = eval_symbol(model, p);
    if (v.real() >= gamma.re_lo && v.real() < gamma.re_hi && v.imag() >= gamma.im_lo &&
        v.imag() < gamma.im_hi)
      ++hits;
  }
  const double p_hat = static_cast<double>(hits) / mc_samples;
  est.monte_carlo = box_area * p_hat;
  est.mc_stderr = box_area * std::sqrt(std::max(p_hat * (1.0 - p_hat), 1e-12) / mc_samples);

  if (std::abs(est.monte_carlo - est.quadrature) > 3.0 * est.mc_stderr)
    throw SimError(Err::InconsistentVolume,
                   "phase_space_volume: Monte Carlo and quadrature disagree beyond 3 sigma");
  return est;
}

double phase_space_volume(const SymbolModel& model, const Rect& gamma) {
  return phase_space_volume_detail(model, gamma).quadrature;
}

}  // namespace specpert
