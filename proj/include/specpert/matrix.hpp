#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace specpert {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major storage.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static CMatrix identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  cplx* row_ptr(int i) { return data_.data() + static_cast<size_t>(i) * cols_; }
  const cplx* row_ptr(int i) const { return data_.data() + static_cast<size_t>(i) * cols_; }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  bool operator==(const CMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);
std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& x);

double norm_fro(const CMatrix& a);
double norm_1(const CMatrix& a);
cplx trace(const CMatrix& a);

/// LU decomposition with partial pivoting (in place, pivot row indices).
struct LuFactors {
  CMatrix lu;
  std::vector<int> piv;
  int pivot_sign = 1;
  bool singular = false;
};

LuFactors lu_factor(CMatrix a);

/// Determinant in split form, det = phase * exp(log_abs); phase has |phase| = 1
/// (or 0 for a singular matrix).
struct LogDet {
  double log_abs;
  cplx phase;
};
LogDet lu_logdet(const LuFactors& f);
cplx lu_det(const LuFactors& f);

void lu_solve_inplace(const LuFactors& f, std::vector<cplx>& b);
CMatrix lu_inverse(const LuFactors& f);

/// 1-norm condition number via explicit inverse; fine for the small matrices
/// this project feeds it.
double cond_1(const CMatrix& a);

}  // namespace specpert
