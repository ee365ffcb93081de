#include <doctest.h>

#include <cmath>

#include "specpert/matrix.hpp"
#include "specpert/rng.hpp"

using namespace specpert;

TEST_CASE("lu determinant and solve") {
  CMatrix a(3, 3);
  a(0, 0) = {2, 1};
  a(0, 1) = {0, 1};
  a(0, 2) = 3.0;
  a(1, 0) = 1.0;
  a(1, 1) = {4, -2};
  a(1, 2) = {0, 0.5};
  a(2, 0) = {0, -1};
  a(2, 1) = 2.0;
  a(2, 2) = {1, 1};
  const LuFactors f = lu_factor(a);
  // reference determinant by cofactor expansion
  auto det2 = [](cplx p, cplx q, cplx r, cplx s) { return p * s - q * r; };
  const cplx ref = a(0, 0) * det2(a(1, 1), a(1, 2), a(2, 1), a(2, 2)) -
                   a(0, 1) * det2(a(1, 0), a(1, 2), a(2, 0), a(2, 2)) +
                   a(0, 2) * det2(a(1, 0), a(1, 1), a(2, 0), a(2, 1));
  CHECK(std::abs(lu_det(f) - ref) < 1e-12 * std::abs(ref));

  std::vector<cplx> b{1.0, {0, 1}, 2.0};
  std::vector<cplx> x = b;
  lu_solve_inplace(f, x);
  const std::vector<cplx> ax = matvec(a, x);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(ax[i] - b[i]) < 1e-12);
}

TEST_CASE("inverse and condition number of identity") {
  const CMatrix id = CMatrix::identity(4);
  CHECK(cond_1(id) == doctest::Approx(1.0));
}

TEST_CASE("lu solve on random matrices with nontrivial pivoting") {
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 9;
    CMatrix a(n, n);
    Rng rng(100 + trial);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rng.complex_gaussian();
    const LuFactors f = lu_factor(a);
    std::vector<cplx> b(n), b0(n);
    for (int i = 0; i < n; ++i) b0[i] = b[i] = rng.complex_gaussian();
    lu_solve_inplace(f, b);
    const std::vector<cplx> ax = matvec(a, b);
    for (int i = 0; i < n; ++i) CHECK(std::abs(ax[i] - b0[i]) < 1e-10);

    const CMatrix inv = lu_inverse(f);
    const CMatrix prod = matmul(a, inv);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)) < 1e-10);
  }
}

TEST_CASE("derive_seed decorrelates indices") {
  const std::uint64_t a = derive_seed(42, 0);
  const std::uint64_t b = derive_seed(42, 1);
  const std::uint64_t c = derive_seed(43, 0);
  CHECK(a != b);
  CHECK(a != c);
  // documented values, pinned so other implementations can reproduce streams
  CHECK(derive_seed(0, 0) == mix64(0x9E3779B97F4A7C15ull));
}

TEST_CASE("uniform mean and complex gaussian moments") {
  Rng rng(7);
  const int n = 200000;
  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += rng.uniform01();
  mean /= n;
  CHECK(std::abs(mean - 0.5) < 0.005);

  cplx sum_z = 0.0;
  double abs2 = 0.0;
  cplx sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const cplx z = rng.complex_gaussian();
    sum_z += z;
    abs2 += std::norm(z);
    sq += z * z;
  }
  CHECK(std::abs(sum_z) / n < 0.01);       // E[alpha] = 0
  CHECK(std::abs(abs2 / n - 1.0) < 0.01);  // E|alpha|^2 = 1
  CHECK(std::abs(sq) / n < 0.01);        // E[alpha^2] = 0
}

TEST_CASE("unit phase law stays on the circle") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i)
    CHECK(std::abs(std::abs(rng.unit_phase()) - 1.0) < 1e-15);
}
