#pragma once

#include <vector>

#include "specpert/matrix.hpp"

namespace specpert {

struct EigenResult {
  std::vector<cplx> eigenvalues;  // length n, algebraic multiplicity respected
  int iterations = 0;             // total QR sweeps
  bool converged_all = true;
};

struct Balanced {
  CMatrix b;                  // D^-1 A D
  std::vector<double> scale;  // diagonal of D (powers of 2)
};

/// Parlett-Reinsch diagonal balancing, radix 2. Eigenvalues are preserved
/// exactly in exact arithmetic; scaling by powers of 2 is lossless in floats.
Balanced balance(const CMatrix& a);

/// Unitary Householder reduction to upper Hessenberg form, in place.
void hessenberg_inplace(CMatrix& a);

/// All eigenvalues of a dense complex matrix: balancing, Hessenberg
/// reduction, implicitly shifted QR with Wilkinson shifts and deflation.
/// Each returned eigenvalue is exact for some A+E with ||E|| = O(n eps ||A||).
/// Throws SimError(Err::NoConvergence) after 40*n sweeps.
EigenResult eigenvalues(const CMatrix& a);

/// QR iteration on a matrix already in Hessenberg form (used directly for
/// companion matrices, which are Hessenberg by construction).
EigenResult eigenvalues_hessenberg(CMatrix h);

}  // namespace specpert
