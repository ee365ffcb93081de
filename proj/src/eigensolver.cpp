#include "specpert/eigensolver.hpp"

#include <cmath>
#include <limits>

#include "specpert/errors.hpp"

namespace specpert {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

inline cplx phase_of(cplx a) {
  const double m = std::abs(a);
  return m == 0.0 ? cplx(1.0) : a / m;
}

// Unitary plane rotation [c s; -conj(s) c] with c real, c^2+|s|^2=1,
// chosen so that it maps (a,b) to (r,0).
struct Givens {
  double c;
  cplx s;
};

inline Givens make_givens(cplx a, cplx b, cplx& r) {
  const double aa = std::abs(a);
  const double bb = std::abs(b);
  if (bb == 0.0) {
    r = a;
    return {1.0, 0.0};
  }
  if (aa == 0.0) {
    r = bb;
    return {0.0, std::conj(b) / bb};
  }
  const double d = std::hypot(aa, bb);
  const cplx pa = a / aa;
  r = pa * d;
  return {aa / d, pa * std::conj(b) / d};
}

// H <- G H on rows r1, r1+1 restricted to columns [c0, c1].
inline void apply_left(CMatrix& h, int r1, int c0, int c1, const Givens& g) {
  cplx* x = h.row_ptr(r1) + c0;
  cplx* y = h.row_ptr(r1 + 1) + c0;
  const double c = g.c;
  const double sr = g.s.real(), si = g.s.imag();
  for (int j = 0; j <= c1 - c0; ++j) {
    const double xr = x[j].real(), xi = x[j].imag();
    const double yr = y[j].real(), yi = y[j].imag();
    x[j] = {c * xr + sr * yr - si * yi, c * xi + sr * yi + si * yr};
    y[j] = {-sr * xr - si * xi + c * yr, -sr * xi + si * xr + c * yi};
  }
}

// H <- H G* on columns c1col, c1col+1 restricted to rows [r0, r1].
inline void apply_right(CMatrix& h, int c1col, int r0, int r1, const Givens& g) {
  const double c = g.c;
  const double sr = g.s.real(), si = g.s.imag();
  const int stride = h.cols();
  cplx* base = h.row_ptr(r0) + c1col;
  for (int i = 0; i <= r1 - r0; ++i, base += stride) {
    const double xr = base[0].real(), xi = base[0].imag();
    const double yr = base[1].real(), yi = base[1].imag();
    // col_k <- c*col_k + conj(s)*col_{k+1};  col_{k+1} <- -s*col_k + c*col_{k+1}
    base[0] = {c * xr + sr * yr + si * yi, c * xi + sr * yi - si * yr};
    base[1] = {-sr * xr + si * xi + c * yr, -sr * xi - si * xr + c * yi};
  }
}

// Eigenvalues of [[a,b],[c,d]], the one closer to d first.
inline void eig2x2(cplx a, cplx b, cplx c, cplx d, cplx& near_d, cplx& other) {
  const cplx half_tr = 0.5 * (a + d);
  const cplx half_diff = 0.5 * (a - d);
  const cplx disc = std::sqrt(half_diff * half_diff + b * c);
  const cplx l1 = half_tr + disc;
  const cplx l2 = half_tr - disc;
  if (std::abs(l1 - d) <= std::abs(l2 - d)) {
    near_d = l1;
    other = l2;
  } else {
    near_d = l2;
    other = l1;
  }
}

}  // namespace

Balanced balance(const CMatrix& a) {
  const int n = a.rows();
  Balanced out{a, std::vector<double>(n, 1.0)};
  CMatrix& m = out.b;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      double col = 0.0, row = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        col += std::abs(m(j, i));
        row += std::abs(m(i, j));
      }
      if (col == 0.0 || row == 0.0) continue;
      double f = 1.0;
      const double s = col + row;
      while (col < row / 2.0 && f < 0x1.0p500) {
        col *= 2.0;
        row /= 2.0;
        f *= 2.0;
      }
      while (col >= row * 2.0 && f > 0x1.0p-500) {
        col /= 2.0;
        row *= 2.0;
        f /= 2.0;
      }
      if (f != 1.0 && (col + row) < 0.95 * s) {
        changed = true;
        out.scale[i] *= f;
        const double inv = 1.0 / f;
        for (int j = 0; j < n; ++j) m(i, j) *= inv;  // row i scaled by 1/f
        for (int j = 0; j < n; ++j) m(j, i) *= f;    // column i scaled by f
      }
    }
  }
  return out;
}

void hessenberg_inplace(CMatrix& a) {
  const int n = a.rows();
  std::vector<cplx> v(n), t(n);
  for (int k = 0; k + 2 < n; ++k) {
    const int m = n - k - 1;  // length of the column below the diagonal
    double xnorm2 = 0.0;
    for (int i = 0; i < m; ++i) {
      v[i] = a(k + 1 + i, k);
      xnorm2 += std::norm(v[i]);
    }
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) continue;
    const cplx alpha = v[0];
    const cplx beta = -phase_of(alpha) * xnorm;
    v[0] -= beta;
    double vnorm2 = 0.0;
    for (int i = 0; i < m; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    const double gamma = 2.0 / vnorm2;

    // Left: rows k+1..n-1, columns k..n-1.
    for (int j = k; j < n; ++j) t[j] = 0.0;
    for (int i = 0; i < m; ++i) {
      const cplx vc = std::conj(v[i]);
      const cplx* row = a.row_ptr(k + 1 + i);
      for (int j = k; j < n; ++j) t[j] += vc * row[j];
    }
    for (int i = 0; i < m; ++i) {
      const cplx gv = gamma * v[i];
      cplx* row = a.row_ptr(k + 1 + i);
      for (int j = k; j < n; ++j) row[j] -= gv * t[j];
    }

    // Right: all rows, columns k+1..n-1.
    for (int i = 0; i < n; ++i) {
      cplx* row = a.row_ptr(i);
      cplx s = 0.0;
      for (int j = 0; j < m; ++j) s += row[k + 1 + j] * v[j];
      s *= gamma;
      for (int j = 0; j < m; ++j) row[k + 1 + j] -= s * std::conj(v[j]);
    }

    a(k + 1, k) = beta;
    for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

EigenResult eigenvalues_hessenberg(CMatrix h) {
  const int n = h.rows();
  EigenResult res;
  res.eigenvalues.assign(n, 0.0);
  if (n == 0) return res;
  if (n == 1) {
    res.eigenvalues[0] = h(0, 0);
    return res;
  }

  const double hnorm = norm_fro(h);
  const int max_sweeps = 40 * n;
  int total_sweeps = 0;
  int stalled = 0;

  auto negligible = [&](int k) {
    // subdiagonal entry h(k+1,k) against its diagonal neighbours
    double ref = std::abs(h(k, k)) + std::abs(h(k + 1, k + 1));
    if (ref == 0.0) ref = hnorm;
    return std::abs(h(k + 1, k)) <= kEps * ref;
  };

  int hi = n - 1;
  while (hi >= 0) {
    int lo = hi;
    while (lo > 0 && !negligible(lo - 1)) --lo;
    if (lo > 0) h(lo, lo - 1) = 0.0;

    if (lo == hi) {
      res.eigenvalues[hi] = h(hi, hi);
      --hi;
      stalled = 0;
      continue;
    }
    if (lo == hi - 1) {
      cplx l1, l2;
      eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi), l1, l2);
      res.eigenvalues[hi] = l1;
      res.eigenvalues[lo] = l2;
      hi -= 2;
      stalled = 0;
      continue;
    }

    if (total_sweeps >= max_sweeps)
      throw SimError(Err::NoConvergence,
                     "qr iteration: eigenvalue failed to deflate within 40n sweeps");

    // Shift selection: Wilkinson from the trailing 2x2; ad-hoc shift every
    // 10 sweeps without a deflation.
    cplx mu;
    if (stalled > 0 && stalled % 10 == 0) {
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      cplx other;
      eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi), mu, other);
    }

    // One implicit single-shift sweep over the active block [lo, hi].
    cplx x = h(lo, lo) - mu;
    cplx y = h(lo + 1, lo);
    for (int k = lo; k < hi; ++k) {
      cplx r;
      const Givens g = make_givens(x, y, r);
      if (k > lo) {
        h(k, k - 1) = r;
        h(k + 1, k - 1) = 0.0;
      }
      apply_left(h, k, k, hi, g);
      apply_right(h, k, lo, std::min(k + 2, hi), g);
      if (k + 1 < hi) {
        x = h(k + 1, k);
        y = h(k + 2, k);
      }
    }
    ++total_sweeps;
    ++stalled;
  }

  res.iterations = total_sweeps;
  return res;
}

EigenResult eigenvalues(const CMatrix& a) {
  if (a.rows() != a.cols())
    throw SimError(Err::DimensionMismatch, "eigenvalues: matrix not square");
  if (a.rows() == 0) return {};
  Balanced bal = balance(a);
  hessenberg_inplace(bal.b);
  return eigenvalues_hessenberg(std::move(bal.b));
}

}  // namespace specpert
