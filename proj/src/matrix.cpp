#include "specpert/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "specpert/errors.hpp"

namespace specpert {

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw SimError(Err::DimensionMismatch, "matmul: inner dimensions differ");
  CMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == 0.0) continue;
      const cplx* brow = b.row_ptr(k);
      cplx* crow = c.row_ptr(i);
      for (int j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& x) {
  if (a.cols() != static_cast<int>(x.size()))
    throw SimError(Err::DimensionMismatch, "matvec: dimension mismatch");
  std::vector<cplx> y(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    const cplx* row = a.row_ptr(i);
    for (int j = 0; j < a.cols(); ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

double norm_fro(const CMatrix& a) {
  double s = 0.0;
  const cplx* p = a.data();
  const size_t n = static_cast<size_t>(a.rows()) * a.cols();
  for (size_t i = 0; i < n; ++i) s += std::norm(p[i]);
  return std::sqrt(s);
}

double norm_1(const CMatrix& a) {
  double best = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

cplx trace(const CMatrix& a) {
  cplx s = 0.0;
  for (int i = 0; i < std::min(a.rows(), a.cols()); ++i) s += a(i, i);
  return s;
}

LuFactors lu_factor(CMatrix a) {
  if (a.rows() != a.cols()) throw SimError(Err::DimensionMismatch, "lu_factor: matrix not square");
  const int n = a.rows();
  LuFactors f;
  f.piv.resize(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    f.piv[k] = p;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      f.pivot_sign = -f.pivot_sign;
    }
    const cplx pivot = a(k, k);
    if (pivot == 0.0) {
      f.singular = true;
      continue;
    }
    for (int i = k + 1; i < n; ++i) {
      const cplx m = a(i, k) / pivot;
      a(i, k) = m;
      if (m == 0.0) continue;
      const cplx* krow = a.row_ptr(k);
      cplx* irow = a.row_ptr(i);
      for (int j = k + 1; j < n; ++j) irow[j] -= m * krow[j];
    }
  }
  f.lu = std::move(a);
  return f;
}

LogDet lu_logdet(const LuFactors& f) {
  if (f.singular) return {-std::numeric_limits<double>::infinity(), 0.0};
  double log_abs = 0.0;
  cplx phase = f.pivot_sign;
  for (int i = 0; i < f.lu.rows(); ++i) {
    const cplx d = f.lu(i, i);
    log_abs += std::log(std::abs(d));
    phase *= d / std::abs(d);
  }
  return {log_abs, phase};
}

cplx lu_det(const LuFactors& f) {
  const LogDet ld = lu_logdet(f);
  if (ld.phase == 0.0) return 0.0;
  return ld.phase * std::exp(ld.log_abs);
}

void lu_solve_inplace(const LuFactors& f, std::vector<cplx>& b) {
  const int n = f.lu.rows();
  if (static_cast<int>(b.size()) != n)
    throw SimError(Err::DimensionMismatch, "lu_solve: dimension mismatch");
  if (f.singular) throw SimError(Err::NearSingularA, "lu_solve: singular matrix");
  // Row-oriented forward substitution: the swap for row i happens before the
  // row is eliminated, and later swaps only touch positions > i.
  for (int i = 0; i < n; ++i) {
    if (f.piv[i] != i) std::swap(b[i], b[f.piv[i]]);
    for (int j = 0; j < i; ++j) b[i] -= f.lu(i, j) * b[j];
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) b[i] -= f.lu(i, j) * b[j];
    b[i] /= f.lu(i, i);
  }
}

CMatrix lu_inverse(const LuFactors& f) {
  const int n = f.lu.rows();
  CMatrix inv(n, n);
  std::vector<cplx> e(n);
  for (int j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), cplx(0.0));
    e[j] = 1.0;
    lu_solve_inplace(f, e);
    for (int i = 0; i < n; ++i) inv(i, j) = e[i];
  }
  return inv;
}

double cond_1(const CMatrix& a) {
  LuFactors f = lu_factor(a);
  if (f.singular) return std::numeric_limits<double>::infinity();
  return norm_1(a) * norm_1(lu_inverse(f));
}

}  // namespace specpert
