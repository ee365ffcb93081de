#include <doctest.h>

#include <cmath>

#include "specpert/eigensolver.hpp"
#include "specpert/errors.hpp"
#include "specpert/rng.hpp"
#include "support/matching.hpp"

using namespace specpert;
using testsupport::matched_max_distance;

namespace {

CMatrix random_matrix(int n, std::uint64_t seed, double scale = 1.0) {
  CMatrix a(n, n);
  Rng rng(seed);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = scale * rng.complex_gaussian();
  return a;
}

}  // namespace

TEST_CASE("diagonal matrix returns its diagonal") {
  CMatrix a(3, 3);
  a(0, 0) = {1, 1};
  a(1, 1) = 2.0;
  a(2, 2) = {0, -3};
  const EigenResult r = eigenvalues(a);
  CHECK(matched_max_distance(r.eigenvalues, {{1, 1}, {2, 0}, {0, -3}}) < 1e-14);
}

TEST_CASE("rotation matrix has eigenvalues +-i") {
  CMatrix a(2, 2);
  a(0, 1) = 1.0;
  a(1, 0) = -1.0;
  const EigenResult r = eigenvalues(a);
  CHECK(matched_max_distance(r.eigenvalues, {{0, 1}, {0, -1}}) < 1e-15);
}

TEST_CASE("trace and determinant identities on a random 100x100 matrix") {
  const CMatrix a = random_matrix(100, 5);
  const EigenResult r = eigenvalues(a);
  REQUIRE(r.eigenvalues.size() == 100);

  cplx sum = 0.0;
  for (const cplx& l : r.eigenvalues) sum += l;
  const cplx tr = trace(a);
  CHECK(std::abs(sum - tr) < 1e-8 * (1.0 + std::abs(tr)));

  // product vs LU determinant, compared in log space to dodge overflow
  double log_prod = 0.0;
  cplx phase_prod = 1.0;
  for (const cplx& l : r.eigenvalues) {
    log_prod += std::log(std::abs(l));
    phase_prod *= l / std::abs(l);
  }
  const LogDet ld = lu_logdet(lu_factor(a));
  CHECK(std::abs(log_prod - ld.log_abs) < 1e-8 * (1.0 + std::abs(ld.log_abs)));
  CHECK(std::abs(phase_prod - ld.phase) < 1e-6);
}

TEST_CASE("trace identity across sizes") {
  for (int n : {20, 60, 120}) {
    const CMatrix a = random_matrix(n, 100 + n);
    const EigenResult r = eigenvalues(a);
    cplx sum = 0.0;
    for (const cplx& l : r.eigenvalues) sum += l;
    const cplx tr = trace(a);
    CHECK(std::abs(sum - tr) <= 1e-8 * (1.0 + std::abs(tr)));
  }
}

TEST_CASE("similarity invariance") {
  Rng rng(17);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 40;
    const CMatrix a = random_matrix(n, 500 + trial);
    // well-conditioned S = I + 0.2 G
    CMatrix s = CMatrix::identity(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) += 0.2 * rng.complex_gaussian() / std::sqrt(n);
    const LuFactors lu = lu_factor(s);
    CMatrix sinv_a = lu_inverse(lu);
    const CMatrix b = matmul(matmul(sinv_a, a), s);
    const double dist =
        matched_max_distance(eigenvalues(a).eigenvalues, eigenvalues(b).eigenvalues);
    CHECK(dist < 1e-6 * norm_fro(a));
  }
}

TEST_CASE("hermitian specialization has real eigenvalues") {
  const int n = 60;
  CMatrix g = random_matrix(n, 23);
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  const EigenResult r = eigenvalues(a);
  const double scale = norm_fro(a);
  for (const cplx& l : r.eigenvalues) CHECK(std::abs(l.imag()) <= 1e-10 * scale);
}

TEST_CASE("triangular matrices come back exactly") {
  const int n = 50;
  CMatrix a = random_matrix(n, 31);
  std::vector<cplx> diag(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) a(i, j) = 0.0;
    diag[i] = a(i, i);
  }
  const EigenResult r = eigenvalues(a);
  CHECK(matched_max_distance(r.eigenvalues, diag) <= 1e-12 * norm_fro(a));
}

TEST_CASE("nilpotent Jordan block: n values within the backward-error radius") {
  const int n = 16;
  CMatrix a(n, n);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
  const EigenResult r = eigenvalues(a);
  REQUIRE(r.eigenvalues.size() == n);
  // perturbing a nilpotent block by ||E|| splays zeros to radius ~||E||^{1/n}
  const double radius = 10.0 * std::pow(n * 2.2e-16, 1.0 / n);
  for (const cplx& l : r.eigenvalues) CHECK(std::abs(l) < radius);
}

TEST_CASE("balance leaves a balanced matrix alone") {
  CMatrix a(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = (i == j) ? 2.0 : cplx(0.5, 0.5);
  const Balanced b = balance(a);
  for (double s : b.scale) CHECK(s == 1.0);
  CHECK(b.b == a);
}

TEST_CASE("balance undoes a known diagonal similarity") {
  Rng rng(47);
  const int n = 8;
  CMatrix a = random_matrix(n, 99);
  const Balanced base = balance(a);
  // scale the balanced form by powers of two, then re-balance
  std::vector<double> d{1, 8, 0.25, 64, 1, 0.03125, 4, 0.5};
  CMatrix scaled = base.b;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scaled(i, j) *= d[i] / d[j];
  const Balanced again = balance(scaled);
  // row/column norms equilibrated within the radix
  for (int i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      row += std::abs(again.b(i, j));
      col += std::abs(again.b(j, i));
    }
    CHECK(row <= 2.0 * col + 1e-12);
    CHECK(col <= 2.0 * row + 1e-12);
  }
}

TEST_CASE("balancing preserves eigenvalues on random 50x50 matrices") {
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix a = random_matrix(50, 700 + trial);
    // make it badly scaled
    Rng rng(900 + trial);
    for (int i = 0; i < 50; ++i) {
      const double s = std::pow(2.0, std::floor(20.0 * (rng.uniform01() - 0.5)));
      for (int j = 0; j < 50; ++j) {
        a(i, j) *= s;
        a(j, i) /= s;
      }
    }
    const Balanced b = balance(a);
    const double dist =
        matched_max_distance(eigenvalues(a).eigenvalues, eigenvalues(b.b).eigenvalues);
    CHECK(dist < 1e-10 * (1.0 + norm_fro(b.b)));
  }
}
