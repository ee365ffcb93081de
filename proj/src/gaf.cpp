#include "specpert/gaf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specpert/eigensolver.hpp"
#include "specpert/errors.hpp"
#include "specpert/rng.hpp"

namespace specpert {

namespace {
constexpr double kPi = std::numbers::pi;
}

GafSample sample_gaf(double sigma, double r, std::uint64_t seed) {
  if (sigma <= 0.0 || r <= 0.0)
    throw SimError(Err::BadConfig, "sample_gaf: sigma and R must be positive");

  // Term magnitudes t_n = sigma^{n/2} R^n / sqrt(n!); find the smallest N_t
  // whose tail sum is below 1e-3 of the scale e^{sigma R^2/2}.
  const double target = 1e-3 * std::exp(0.5 * sigma * r * r);
  const double growth = std::sqrt(sigma) * r;
  std::vector<double> terms;
  double t = 1.0;
  int n = 0;
  while (true) {
    terms.push_back(t);
    ++n;
    t *= growth / std::sqrt(static_cast<double>(n));
    if (n > growth * growth && t < 1e-18 * target) break;
    if (n > 100000) throw SimError(Err::TooLarge, "sample_gaf: truncation did not close");
  }
  double tail = t / (1.0 - growth / std::sqrt(n + 1.0));  // geometric bound on the rest
  int n_t = static_cast<int>(terms.size()) - 1;
  while (n_t > 0 && tail + terms[n_t] <= target) tail += terms[n_t--];

  GafSample g;
  g.sigma = sigma;
  g.truncation = n_t;
  g.window_radius = r;
  g.seed = seed;
  g.coeffs.resize(n_t + 1);
  Rng rng(seed);
  double factor = 1.0;  // sigma^{n/2}/sqrt(n!)
  for (int i = 0; i <= n_t; ++i) {
    g.coeffs[i] = rng.complex_gaussian() * factor;
    factor *= std::sqrt(sigma) / std::sqrt(static_cast<double>(i + 1));
  }
  return g;
}

cplx gaf_eval(const GafSample& g, cplx w) {
  cplx acc = 0.0;
  for (int i = static_cast<int>(g.coeffs.size()) - 1; i >= 0; --i) acc = acc * w + g.coeffs[i];
  return acc;
}

cplx gaf_eval_deriv(const GafSample& g, cplx w) {
  cplx acc = 0.0;
  for (int i = static_cast<int>(g.coeffs.size()) - 1; i >= 1; --i)
    acc = acc * w + static_cast<double>(i) * g.coeffs[i];
  return acc;
}

namespace {

// Newton on the truncated series; returns false if it wanders or stalls.
bool polish_zero(const GafSample& g, cplx& w, int max_iter = 30) {
  for (int it = 0; it < max_iter; ++it) {
    const cplx f = gaf_eval(g, w);
    const cplx df = gaf_eval_deriv(g, w);
    if (df == 0.0) return f == 0.0;
    const cplx step = f / df;
    w -= step;
    if (std::abs(step) < 1e-13 * (1.0 + std::abs(w))) return true;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return false;
  }
  return true;  // slow but typically converged to working accuracy
}

void merge_duplicates(std::vector<cplx>& zeros, std::vector<double>& residuals,
                      double tol) {
  std::vector<cplx> out;
  std::vector<double> out_res;
  std::vector<bool> used(zeros.size(), false);
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> cluster{i};
    for (std::size_t j = i + 1; j < zeros.size(); ++j)
      if (!used[j] && std::abs(zeros[i] - zeros[j]) < tol) {
        used[j] = true;
        cluster.push_back(j);
      }
    cplx mean = 0.0;
    double res = 0.0;
    for (std::size_t idx : cluster) {
      mean += zeros[idx];
      res = std::max(res, residuals[idx]);
    }
    mean /= static_cast<double>(cluster.size());
    for (std::size_t c = 0; c < cluster.size(); ++c) {
      out.push_back(mean);  // multiplicity retained
      out_res.push_back(res);
    }
  }
  zeros = std::move(out);
  residuals = std::move(out_res);
}

}  // namespace

ZeroSet find_zeros(const GafSample& g) {
  int degree = static_cast<int>(g.coeffs.size()) - 1;
  while (degree > 0 && g.coeffs[degree] == 0.0) --degree;
  if (degree == 0) {
    if (g.coeffs.empty() || g.coeffs[0] == 0.0)
      throw SimError(Err::CompanionFailure, "find_zeros: identically zero truncation");
    return {};
  }

  CMatrix comp(degree, degree);
  const cplx lead = g.coeffs[degree];
  for (int i = 0; i + 1 < degree; ++i) comp(i + 1, i) = 1.0;
  for (int i = 0; i < degree; ++i) comp(i, degree - 1) = -g.coeffs[i] / lead;

  // Diagonal balancing keeps the companion Hessenberg, so QR runs directly.
  Balanced bal = balance(comp);
  EigenResult eig;
  try {
    eig = eigenvalues_hessenberg(std::move(bal.b));
  } catch (const SimError& e) {
    throw SimError(Err::CompanionFailure, std::string("find_zeros: ") + e.what());
  }

  ZeroSet out;
  for (const cplx& raw : eig.eigenvalues) {
    if (std::abs(raw) >= 1.2 * g.window_radius) continue;  // cheap pre-filter
    cplx w = raw;
    if (!polish_zero(g, w)) continue;
    if (std::abs(w) >= g.window_radius) continue;
    const double res = std::abs(gaf_eval(g, w));
    if (res > 1e-8 * std::exp(0.5 * g.sigma * std::norm(w))) continue;
    out.zeros.push_back(w);
    out.residuals.push_back(res);
  }
  merge_duplicates(out.zeros, out.residuals, 1e-6);
  return out;
}

LimitProcessSpec LimitProcessSpec::product_v(std::vector<double> sigmas, double r,
                                             std::uint64_t seed) {
  LimitProcessSpec s;
  s.kind = Kind::ProductV;
  s.j_count = static_cast<int>(sigmas.size());
  s.sigmas = std::move(sigmas);
  s.window_radius = r;
  s.seed = seed;
  return s;
}

LimitProcessSpec LimitProcessSpec::det_m(const std::vector<double>& sigma_plus,
                                         const std::vector<double>& sigma_minus,
                                         double r, std::uint64_t seed) {
  if (sigma_plus.size() != sigma_minus.size())
    throw SimError(Err::DimensionMismatch, "det_m: sigma lists differ in length");
  const int j = static_cast<int>(sigma_plus.size());
  std::vector<double> mat(static_cast<std::size_t>(j) * j);
  for (int i = 0; i < j; ++i)
    for (int k = 0; k < j; ++k)
      mat[static_cast<std::size_t>(i) * j + k] = 0.5 * (sigma_plus[k] + sigma_minus[i]);
  return det_m_matrix(std::move(mat), j, r, seed);
}

LimitProcessSpec LimitProcessSpec::det_m_matrix(std::vector<double> sigma_ij, int j_count,
                                                double r, std::uint64_t seed) {
  if (static_cast<int>(sigma_ij.size()) != j_count * j_count)
    throw SimError(Err::DimensionMismatch, "det_m_matrix: need J*J sigmas");
  LimitProcessSpec s;
  s.kind = Kind::DetM;
  s.j_count = j_count;
  s.sigmas = std::move(sigma_ij);
  s.window_radius = r;
  s.seed = seed;
  return s;
}

namespace {

struct DetFunction {
  int j;
  std::vector<GafSample> entries;  // row-major

  cplx value(cplx w) const {
    if (j == 1) return gaf_eval(entries[0], w);
    if (j == 2)
      return gaf_eval(entries[0], w) * gaf_eval(entries[3], w) -
             gaf_eval(entries[1], w) * gaf_eval(entries[2], w);
    CMatrix m(j, j);
    for (int a = 0; a < j; ++a)
      for (int b = 0; b < j; ++b) m(a, b) = gaf_eval(entries[a * j + b], w);
    return lu_det(lu_factor(std::move(m)));
  }

  // (det, det'), derivative by the product rule (J<=2) or Jacobi's formula.
  void value_and_deriv(cplx w, cplx& f, cplx& df) const {
    if (j == 1) {
      f = gaf_eval(entries[0], w);
      df = gaf_eval_deriv(entries[0], w);
      return;
    }
    if (j == 2) {
      const cplx a = gaf_eval(entries[0], w), b = gaf_eval(entries[1], w);
      const cplx c = gaf_eval(entries[2], w), d = gaf_eval(entries[3], w);
      const cplx da = gaf_eval_deriv(entries[0], w), db = gaf_eval_deriv(entries[1], w);
      const cplx dc = gaf_eval_deriv(entries[2], w), dd = gaf_eval_deriv(entries[3], w);
      f = a * d - b * c;
      df = da * d + a * dd - db * c - b * dc;
      return;
    }
    CMatrix m(j, j), dm(j, j);
    for (int a = 0; a < j; ++a)
      for (int b = 0; b < j; ++b) {
        m(a, b) = gaf_eval(entries[a * j + b], w);
        dm(a, b) = gaf_eval_deriv(entries[a * j + b], w);
      }
    const LuFactors lu = lu_factor(m);
    f = lu_det(lu);
    if (lu.singular) {
      df = 0.0;
      return;
    }
    // tr(M^{-1} M')
    cplx tr = 0.0;
    std::vector<cplx> col(j);
    for (int b = 0; b < j; ++b) {
      for (int a = 0; a < j; ++a) col[a] = dm(a, b);
      lu_solve_inplace(lu, col);
      tr += col[b];
    }
    df = f * tr;
  }
};

// Increment of arg f along the segment [a,b], adaptively bisected until each
// piece turns by at most pi/2.
double arg_increment(const DetFunction& f, cplx a, cplx b, cplx fa, cplx fb, int depth) {
  if (fa == 0.0 || fb == 0.0) {
    // sample sitting on a zero: nudge sideways
    const cplx mid = 0.5 * (a + b) + 1e-9 * cplx(1.0, 1.0);
    const cplx fm = f.value(mid);
    if (fa == 0.0) fa = fm;
    if (fb == 0.0) fb = fm;
  }
  const double d = std::arg(fb / fa);
  if (std::abs(d) <= 0.5 * kPi || depth >= 16) return d;
  const cplx mid = 0.5 * (a + b);
  const cplx fm = f.value(mid);
  return arg_increment(f, a, mid, fa, fm, depth + 1) +
         arg_increment(f, mid, b, fm, fb, depth + 1);
}

int winding_polygon(const DetFunction& f, const std::vector<cplx>& pts,
                    const std::vector<cplx>& vals) {
  double total = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = (i + 1) % n;
    total += arg_increment(f, pts[i], pts[k], vals[i], vals[k], 0);
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

int winding_circle(const DetFunction& f, double radius, int base_samples) {
  std::vector<cplx> pts(base_samples), vals(base_samples);
  for (int i = 0; i < base_samples; ++i) {
    const double th = 2.0 * kPi * i / base_samples;
    pts[i] = radius * cplx(std::cos(th), std::sin(th));
    vals[i] = f.value(pts[i]);
  }
  return winding_polygon(f, pts, vals);
}

// Zeros inside an axis-aligned square cell, by winding + Newton; subdivides
// on multiple roots or polish failures.
void harvest_cell(const DetFunction& f, cplx lo, double size, int depth,
                  std::vector<cplx>& zeros, std::vector<double>& residuals,
                  bool& clean) {
  const cplx c00 = lo, c10 = lo + cplx(size, 0.0);
  const cplx c11 = lo + cplx(size, size), c01 = lo + cplx(0.0, size);
  const std::vector<cplx> pts{c00, c10, c11, c01};
  std::vector<cplx> vals(4);
  for (int i = 0; i < 4; ++i) vals[i] = f.value(pts[i]);
  const int w = winding_polygon(f, pts, vals);
  if (w <= 0) {
    if (w < 0) clean = false;  // impossible for analytic f: sampling artifact
    return;
  }

  const cplx center = lo + cplx(0.5 * size, 0.5 * size);
  if (w == 1) {
    cplx z = center;
    bool ok = false;
    cplx fv, dfv;
    for (int it = 0; it < 50; ++it) {
      f.value_and_deriv(z, fv, dfv);
      if (dfv == 0.0) break;
      const cplx step = fv / dfv;
      z -= step;
      if (std::abs(step) < 1e-12 * (1.0 + std::abs(z))) {
        ok = true;
        break;
      }
      if (std::abs(z - center) > 4.0 * size) break;  // escaped this cell's basin
    }
    // Accept only a zero that stayed in (or hugs) this cell; anything else is
    // another cell's zero and subdivision will localize ours.
    if (ok && std::abs(z - center) <= 0.75 * size) {
      zeros.push_back(z);
      residuals.push_back(std::abs(f.value(z)));
      return;
    }
  }
  if (depth >= 7) {
    clean = false;
    return;
  }
  const double half = 0.5 * size;
  for (int sx = 0; sx < 2; ++sx)
    for (int sy = 0; sy < 2; ++sy)
      harvest_cell(f, lo + cplx(sx * half, sy * half), half, depth + 1, zeros,
                   residuals, clean);
}

ZeroSet sample_det_process(const LimitProcessSpec& spec) {
  const int j = spec.j_count;
  DetFunction f;
  f.j = j;
  f.entries.reserve(static_cast<std::size_t>(j) * j);
  for (int i = 0; i < j * j; ++i)
    f.entries.push_back(
        sample_gaf(spec.sigmas[i], spec.window_radius, derive_seed(spec.seed, i)));

  const double r = spec.window_radius;

  for (int attempt = 0; attempt < 3; ++attempt) {
    const double cell = 0.35 / (1 << attempt);
    const double jitter = attempt * cell / std::numbers::sqrt2;
    const int cells = static_cast<int>(std::ceil(2.0 * r / cell)) + 1;
    const cplx origin(-r - jitter, -r - jitter);

    std::vector<cplx> zeros;
    std::vector<double> residuals;
    bool clean = true;
    for (int ix = 0; ix < cells; ++ix)
      for (int iy = 0; iy < cells; ++iy) {
        const cplx lo = origin + cplx(ix * cell, iy * cell);
        const cplx center = lo + cplx(0.5 * cell, 0.5 * cell);
        if (std::abs(center) > r + cell) continue;  // cell entirely outside the disk
        harvest_cell(f, lo, cell, 0, zeros, residuals, clean);
      }

    // Zeros straddling a cell edge can be claimed by both neighbours.
    ZeroSet out;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      if (std::abs(zeros[i]) >= r) continue;
      bool dup = false;
      for (const cplx& kept : out.zeros)
        if (std::abs(kept - zeros[i]) < 1e-7) {
          dup = true;
          break;
        }
      if (dup) continue;
      out.zeros.push_back(zeros[i]);
      out.residuals.push_back(residuals[i]);
    }

    // Argument-principle consistency check on a contour kept away from the
    // polished zeros (a zero hugging the circle would make the comparison
    // ill-posed at any sampling resolution).
    double r_check = r;
    for (int k = 0; k < 40; ++k) {
      const double candidate = r - 2e-4 * k;
      double closest = 1e300;
      for (std::size_t i = 0; i < zeros.size(); ++i)
        closest = std::min(closest, std::abs(std::abs(zeros[i]) - candidate));
      if (closest > 5e-5) {
        r_check = candidate;
        break;
      }
    }
    int inside = 0;
    for (const cplx& z : out.zeros) inside += std::abs(z) < r_check;
    const int disk_winding = winding_circle(f, r_check, 720);
    if (clean && inside == disk_winding) return out;
  }
  throw SimError(Err::WindingMismatch,
                 "sample_limit_process: cell counts disagree with the disk contour");
}

}  // namespace

ZeroSet sample_limit_process(const LimitProcessSpec& spec) {
  if (spec.kind == LimitProcessSpec::Kind::ProductV) {
    ZeroSet out;
    for (int j = 0; j < spec.j_count; ++j) {
      const GafSample g =
          sample_gaf(spec.sigmas[j], spec.window_radius, derive_seed(spec.seed, j));
      const ZeroSet zs = find_zeros(g);
      out.zeros.insert(out.zeros.end(), zs.zeros.begin(), zs.zeros.end());
      out.residuals.insert(out.residuals.end(), zs.residuals.begin(), zs.residuals.end());
    }
    return out;
  }
  return sample_det_process(spec);
}

ZeroSet translate_process(const LimitProcessSpec& spec, cplx alpha, cplx beta) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
    throw SimError(Err::BadConfig, "translate_process: |alpha| must be 1");
  LimitProcessSpec wide = spec;
  wide.window_radius = spec.window_radius + std::abs(beta) + 1e-9;
  const ZeroSet zs = sample_limit_process(wide);
  const cplx center = -beta / alpha;
  ZeroSet out;
  for (std::size_t i = 0; i < zs.zeros.size(); ++i) {
    if (std::abs(zs.zeros[i] - center) >= spec.window_radius) continue;
    out.zeros.push_back(alpha * zs.zeros[i] + beta);
    out.residuals.push_back(zs.residuals[i]);
  }
  return out;
}

}  // namespace specpert
