#include "specpert/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "specpert/eigensolver.hpp"
#include "specpert/errors.hpp"
#include "specpert/rng.hpp"

namespace specpert {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310002;  // sqrt(2*pi)
}

OperatorMatrix build_unperturbed(const SymbolModel& model, const BasisSpec& basis,
                                 double h, double window_max_abs) {
  if (h <= 0.0 || h > 1.0)
    throw SimError(Err::BadConfig, "build_unperturbed: h must lie in (0,1]");
  const bool torus_model = model.domain() == DomainKind::Torus;
  const bool torus_basis = basis.kind == BasisKind::FourierTorus;
  if (torus_model != torus_basis)
    throw SimError(Err::BasisMismatch, "build_unperturbed: basis kind does not match model domain");

  const int n = basis.dimension();
  OperatorMatrix op{CMatrix(n, n), basis, h};

  if (torus_basis) {
    const int K = basis.cutoff;
    if (window_max_abs > 0.0) {
      const double hk = h * K;
      if (hk * hk < 2.0 * window_max_abs)
        throw SimError(Err::CutoffTooSmall,
                       "build_unperturbed: (hK)^2 below twice the study window energy");
    }
    for (int k = -K; k <= K; ++k) {
      const int col = k + K;
      op.entries(col, col) = h * k * h * k;
      const int row = k - model.q + K;  // e^{-iqx} e^{ikx} = e^{i(k-q)x}
      if (row >= 0 && row < n) op.entries(row, col) += 1.0;
    }
  } else {
    const int n_max = basis.cutoff;
    if (window_max_abs > 0.0 && h * (2.0 * n_max + 1.0) < 2.0 * window_max_abs)
      throw SimError(Err::CutoffTooSmall,
                     "build_unperturbed: Hermite cutoff below twice the study window energy");
    for (int k = 0; k <= n_max; ++k) {
      op.entries(k, k) = h * cplx(0.5 * (2 * k + 1), 0.5 * (2 * k + 1));
      if (k + 2 <= n_max) {
        const double c = 0.5 * std::sqrt(double(k + 1) * (k + 2));
        op.entries(k, k + 2) = h * cplx(-c, c);
        op.entries(k + 2, k) = h * cplx(-c, c);
      }
    }
  }
  return op;
}

PerturbationDraw draw_perturbation(PerturbKind kind, CoeffLaw law, int n, double h,
                                   bool clamp, double clamp_c, std::uint64_t seed) {
  if (n < 1) throw SimError(Err::BadConfig, "draw_perturbation: N must be >= 1");
  PerturbationDraw draw;
  draw.kind = kind;
  draw.law = law;
  draw.size = n;
  draw.clamped = clamp;
  draw.clamp_bound = clamp ? clamp_c / h : 0.0;
  draw.seed = seed;
  const std::size_t count =
      kind == PerturbKind::RandomMatrix ? static_cast<std::size_t>(n) * n : n;
  draw.coeffs.resize(count);
  Rng rng(seed);
  for (auto& c : draw.coeffs) {
    do {
      c = law == CoeffLaw::ComplexGaussian ? rng.complex_gaussian() : rng.unit_phase();
    } while (clamp && std::abs(c) > draw.clamp_bound);
  }
  return draw;
}

namespace {

// Gauss-Hermite rules are pure functions of the order; cache them.
std::map<int, HermiteRule> g_rules;
std::mutex g_rules_mutex;

}  // namespace

std::vector<double> hermite_functions(int n_max, double y) {
  std::vector<double> phi(n_max + 1);
  phi[0] = 0.7511255444649425 * std::exp(-0.5 * y * y);  // pi^{-1/4} e^{-y^2/2}
  if (n_max >= 1) phi[1] = std::sqrt(2.0) * y * phi[0];
  for (int k = 1; k < n_max; ++k)
    phi[k + 1] = std::sqrt(2.0 / (k + 1)) * y * phi[k] - std::sqrt(double(k) / (k + 1)) * phi[k - 1];
  return phi;
}

HermiteRule gauss_hermite_rule(int m) {
  {
    std::lock_guard<std::mutex> lock(g_rules_mutex);
    auto it = g_rules.find(m);
    if (it != g_rules.end()) return it->second;
  }
  // Nodes: eigenvalues of the Jacobi matrix (off-diagonal sqrt(k/2)).
  CMatrix jac(m, m);
  for (int k = 1; k < m; ++k) {
    const double b = std::sqrt(0.5 * k);
    jac(k - 1, k) = b;
    jac(k, k - 1) = b;
  }
  EigenResult eig = eigenvalues(jac);
  std::vector<double> nodes(m);
  for (int i = 0; i < m; ++i) nodes[i] = eig.eigenvalues[i].real();
  std::sort(nodes.begin(), nodes.end());

  // Christoffel weights with the Gaussian folded in:
  // w_p = 1 / sum_{k<m} phi_k(y_p)^2, so that sum_p w_p f(y_p) ~ integral f dy.
  HermiteRule rule;
  rule.nodes = nodes;
  rule.weights.resize(m);
  for (int p = 0; p < m; ++p) {
    const std::vector<double> phi = hermite_functions(m - 1, nodes[p]);
    double s = 0.0;
    for (double v : phi) s += v * v;
    rule.weights[p] = s > 0.0 ? 1.0 / s : 0.0;
  }
  {
    std::lock_guard<std::mutex> lock(g_rules_mutex);
    g_rules.emplace(m, rule);
  }
  return rule;
}

namespace {

// Multiplication matrix of V(x) = (1/N) sum_j v_j e^{ijx}/sqrt(2pi) on the
// scaled Hermite basis, via Gauss-Hermite quadrature in y = x/sqrt(h).
CMatrix hermite_potential_matrix(const PerturbationDraw& draw, const BasisSpec& basis) {
  const int n_max = basis.cutoff;
  const int n_coeff = draw.size;
  const int j_half = (n_coeff - 1) / 2;
  const double sqrt_h = std::sqrt(basis.h);
  const double omega_max = sqrt_h * j_half;
  const int m = n_max + 1 + static_cast<int>(std::ceil(0.5 * omega_max * omega_max)) + 32;
  const HermiteRule rule = gauss_hermite_rule(m);

  const int dim = n_max + 1;
  CMatrix v(dim, dim);
  std::vector<cplx> weighted(m);
  std::vector<std::vector<double>> phis(m);
  for (int p = 0; p < m; ++p) {
    const double y = rule.nodes[p];
    cplx val = 0.0;
    for (int j = -j_half; j <= j_half; ++j) {
      const double a = j * sqrt_h * y;  // e^{ijx} at x = sqrt(h) y
      val += draw.coeffs[j + j_half] * cplx(std::cos(a), std::sin(a));
    }
    weighted[p] = rule.weights[p] * val / (n_coeff * kSqrt2Pi);
    phis[p] = hermite_functions(n_max, y);
  }
  for (int p = 0; p < m; ++p) {
    const std::vector<double>& phi = phis[p];
    for (int a = 0; a < dim; ++a) {
      const cplx wa = weighted[p] * phi[a];
      if (wa == 0.0) continue;
      cplx* row = v.row_ptr(a);
      for (int b = 0; b < dim; ++b) row[b] += wa * phi[b];
    }
  }
  return v;
}

}  // namespace

OperatorMatrix assemble_perturbed(const OperatorMatrix& p, const PerturbationDraw& draw,
                                  double delta) {
  const int dim = p.basis.dimension();
  OperatorMatrix out = p;

  if (draw.kind == PerturbKind::RandomMatrix) {
    if (draw.size != dim)
      throw SimError(Err::DimensionMismatch, "assemble_perturbed: RM draw size != basis dimension");
    if (delta == 0.0) return out;
    const double scale = delta / draw.size;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        out.entries(i, j) += scale * draw.coeffs[static_cast<std::size_t>(i) * dim + j];
    return out;
  }

  // RandomPotential
  if (draw.size % 2 == 0)
    throw SimError(Err::DimensionMismatch, "assemble_perturbed: RP draw size must be odd");
  if (delta == 0.0) return out;

  if (p.basis.kind == BasisKind::FourierTorus) {
    if (draw.size > dim)
      throw SimError(Err::DimensionMismatch, "assemble_perturbed: RP draw larger than basis");
    const int n = draw.size;
    const int j_half = (n - 1) / 2;
    const double scale = delta / (n * kSqrt2Pi);
    // V[k+j, k] = v_j / (N sqrt(2pi)), rows outside the mode range truncated
    for (int col = 0; col < dim; ++col)
      for (int j = -j_half; j <= j_half; ++j) {
        const int row = col + j;
        if (row < 0 || row >= dim) continue;
        out.entries(row, col) += scale * draw.coeffs[j + j_half];
      }
    return out;
  }

  const CMatrix v = hermite_potential_matrix(draw, p.basis);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out.entries(i, j) += delta * v(i, j);
  return out;
}

double hs_norm(const PerturbationDraw& draw) {
  if (draw.kind != PerturbKind::RandomMatrix)
    throw SimError(Err::BadConfig, "hs_norm: defined for RandomMatrix draws");
  double s = 0.0;
  for (const cplx& c : draw.coeffs) s += std::norm(c);
  return std::sqrt(s) / draw.size;
}

}  // namespace specpert
