#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "specpert/errors.hpp"
#include "specpert/limits.hpp"
#include "specpert/rng.hpp"
#include "specpert/stats.hpp"

using namespace specpert;

namespace {
constexpr double kPi = std::numbers::pi;

cplx brute_force_permanent(const CMatrix& m) {
  const int n = m.rows();
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  cplx total = 0.0;
  do {
    cplx prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= m(i, idx[i]);
    total += prod;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return total;
}
}  // namespace

TEST_CASE("kappa endpoints and frozen midpoints") {
  CHECK(kappa(0.0) == 0.0);
  CHECK(std::abs(kappa(20.0) - 1.0) < 1e-8);
  // extended-precision references
  CHECK(kappa(1.0) == doctest::Approx(0.81563047329272986).epsilon(1e-13));
  CHECK(kappa(0.5) == doctest::Approx(0.47355380403247097).epsilon(1e-13));
  CHECK(kappa(2.0) == doctest::Approx(1.0486616541259673).epsilon(1e-13));
  CHECK(kappa(0.2) == doctest::Approx(0.198236347519195).epsilon(1e-12));
  // values on both sides of the series/closed-form seam at t = 0.05
  CHECK(kappa(0.03) == doctest::Approx(0.0299940010798333946).epsilon(1e-12));
  CHECK(kappa(0.049) == doctest::Approx(0.048973868327067789).epsilon(1e-12));
  CHECK(kappa(0.051) == doctest::Approx(0.0509705373276209287).epsilon(1e-11));
}

TEST_CASE("kappa shape: rise to a single bump, then exponential tail to 1") {
  // increasing up to the maximum near t ~ 2.2456 (the curve overshoots 1)
  double prev = kappa(0.0);
  for (double t = 0.01; t <= 2.24; t += 0.01) {
    const double v = kappa(t);
    CHECK(v > prev);
    prev = v;
  }
  // |kappa - 1| <= 4 t^2 e^{-2t} for t >= 5 (fitted constant, asymptote is 4)
  for (double t = 5.0; t <= 20.0; t += 0.01) {
    const double v = kappa(t);
    CHECK(std::abs(v - 1.0) <= 4.0 * t * t * std::exp(-2.0 * t));
    CHECK(v >= 1.0);
  }
}

TEST_CASE("permanent basics") {
  CHECK(std::abs(permanent(CMatrix::identity(3)) - cplx(1.0)) < 1e-15);
  CMatrix m(2, 2);
  m(0, 0) = {1, 2};
  m(0, 1) = {3, -1};
  m(1, 0) = {0, 1};
  m(1, 1) = {-2, 0.5};
  const cplx want = m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0);
  CHECK(std::abs(permanent(m) - want) < 1e-14);
}

TEST_CASE("permanent matches brute force on random 5x5") {
  Rng rng(5);
  CMatrix m(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = rng.complex_gaussian();
  const cplx brute = brute_force_permanent(m);
  CHECK(std::abs(permanent(m) - brute) < 1e-12 * std::abs(brute));
  CHECK_THROWS_AS(permanent(CMatrix(13, 13)), SimError);
}

TEST_CASE("one-point GAF density is sigma/pi") {
  Rng rng(9);
  for (double sigma : {0.25, 0.5, 1.0}) {
    for (int i = 0; i < 10; ++i) {
      const cplx w{10.0 * rng.uniform01() - 5.0, 10.0 * rng.uniform01() - 5.0};
      const std::vector<cplx> pts{w};
      CHECK(gaf_r_point_density(pts, sigma) ==
            doctest::Approx(sigma / kPi).epsilon(1e-12));
    }
  }
}

TEST_CASE("two-point GAF density reproduces kappa") {
  Rng rng(13);
  const double sigma = 0.5;
  for (int i = 0; i < 50; ++i) {
    const cplx w1{8.0 * rng.uniform01() - 4.0, 8.0 * rng.uniform01() - 4.0};
    const cplx w2{8.0 * rng.uniform01() - 4.0, 8.0 * rng.uniform01() - 4.0};
    if (std::abs(w1 - w2) < 1e-2) continue;
    const std::vector<cplx> pts{w1, w2};
    const double want =
        (sigma / kPi) * (sigma / kPi) * kappa(0.5 * sigma * std::norm(w1 - w2));
    CHECK(gaf_r_point_density(pts, sigma) == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("two-point density small-separation limit") {
  const double sigma = 1.0;
  const cplx w1{0.3, -0.2};
  const cplx w2 = w1 + cplx(1e-3, 0.0);
  const std::vector<cplx> pts{w1, w2};
  const double ratio = gaf_r_point_density(pts, sigma) / std::norm(w1 - w2);
  CHECK(ratio == doctest::Approx(sigma * sigma * sigma / (2.0 * kPi * kPi)).epsilon(1e-3));
}

TEST_CASE("r-point density is symmetric in its points") {
  const std::vector<cplx> pts{{0.4, 0.1}, {-0.7, 0.6}, {1.2, -0.9}};
  const double sigma = 0.7;
  const double base = gaf_r_point_density(pts, sigma);
  std::vector<cplx> shuffled{pts[2], pts[0], pts[1]};
  CHECK(gaf_r_point_density(shuffled, sigma) == doctest::Approx(base).epsilon(1e-12));
  const std::vector<cplx> two{pts[0], pts[1]};
  const std::vector<cplx> two_swapped{pts[1], pts[0]};
  CHECK(gaf_r_point_density(two, sigma) ==
        doctest::Approx(gaf_r_point_density(two_swapped, sigma)).epsilon(1e-12));
}

TEST_CASE("unresolvably close points raise NearSingularA") {
  const std::vector<cplx> pts{{0.1, 0.1}, {0.1 + 1e-8, 0.1}};
  CHECK_THROWS_AS(gaf_r_point_density(pts, 1.0), SimError);
  try {
    gaf_r_point_density(pts, 1.0);
  } catch (const SimError& e) {
    CHECK(e.code() == Err::NearSingularA);
  }
}

TEST_CASE("k-point density of the product process") {
  const std::vector<double> sigmas{0.6454972243679028, 0.3100868364730211};
  // k = 1: constant sum_j sigma_j / pi
  const std::vector<cplx> one{{0.2, 0.3}};
  CHECK(limit_k_density_V(one, sigmas) ==
        doctest::Approx((sigmas[0] + sigmas[1]) / kPi).epsilon(1e-12));

  // k = 2, J = 1 reduces to the single-GAF pair density
  const std::vector<cplx> two{{0.1, 0.0}, {0.9, -0.4}};
  const std::vector<double> single{0.5};
  CHECK(limit_k_density_V(two, single) ==
        doctest::Approx(gaf_r_point_density(two, 0.5)).epsilon(1e-12));

  // k = 2, J = 2: 2 d1_g1 d1_g2 + d2_g1 + d2_g2 (direct enumeration)
  const double want = 2.0 * (sigmas[0] / kPi) * (sigmas[1] / kPi) +
                      gaf_r_point_density(two, sigmas[0]) +
                      gaf_r_point_density(two, sigmas[1]);
  CHECK(limit_k_density_V(two, sigmas) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("k-point density factorizes at large separation") {
  const std::vector<double> sigmas{0.8, 0.45};
  const double sep = 10.0 / std::sqrt(0.45);
  const std::vector<cplx> pts{{0.0, 0.0}, {sep, 0.0}};
  const double product = std::pow((sigmas[0] + sigmas[1]) / kPi, 2);
  CHECK(limit_k_density_V(pts, sigmas) == doctest::Approx(product).epsilon(1e-6));
}

TEST_CASE("k-point density size limits") {
  const std::vector<cplx> seven(7, cplx(0.0));
  const std::vector<double> sigmas{1.0};
  CHECK_THROWS_AS(limit_k_density_V(seven, sigmas), SimError);
}

TEST_CASE("Nazarov-Sodin envelope for r = 2..4") {
  Rng rng(21);
  const double sigma = 0.7;
  for (int r = 2; r <= 4; ++r) {
    double lo = 1e300, hi = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<cplx> pts(r);
      bool distinct = true;
      for (int i = 0; i < r; ++i) {
        pts[i] = {4.0 * rng.uniform01() - 2.0, 4.0 * rng.uniform01() - 2.0};
        for (int j = 0; j < i; ++j)
          if (std::abs(pts[i] - pts[j]) < 0.25) distinct = false;
      }
      if (!distinct) continue;
      double denom = 1.0;
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) denom *= std::norm(pts[i] - pts[j]);
      const double ratio = gaf_r_point_density(pts, sigma) / denom;
      CHECK(ratio > 0.0);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    CHECK(lo > 1e-12);
    CHECK(hi < 1e9);
  }
}

TEST_CASE("cluster suppression: k = J+1 decays quadratically") {
  const std::vector<double> sigmas{0.6454972243679028, 0.3100868364730211};
  const std::vector<cplx> shape{{0.31, 0.17}, {-0.42, 0.23}, {0.05, -0.44}};
  std::vector<double> log_rho, log_d;
  for (double rho = 1e-3; rho <= 0.1 + 1e-12; rho *= std::pow(10.0, 0.25)) {
    std::vector<cplx> pts;
    for (const cplx& s : shape) pts.push_back(rho * s);
    const double d = limit_k_density_V(pts, sigmas);
    REQUIRE(d > 0.0);
    log_rho.push_back(std::log(rho));
    log_d.push_back(std::log(d));
  }
  const LineFit fit = fit_line(log_rho, log_d);
  CHECK(fit.slope >= 1.8);
  CHECK(fit.slope <= 2.4);
}

TEST_CASE("two-point correlation of the V process") {
  const std::vector<double> sigmas{0.6454972243679028, 0.3100868364730211};
  CHECK(limit_2pt_correlation_V(1e3, sigmas) == doctest::Approx(1.0).epsilon(1e-12));
  double sum = sigmas[0] + sigmas[1];
  double sq = sigmas[0] * sigmas[0] + sigmas[1] * sigmas[1];
  CHECK(limit_2pt_correlation_V(0.0, sigmas) ==
        doctest::Approx(1.0 - sq / (sum * sum)).epsilon(1e-14));
  const std::vector<double> one{0.7};
  CHECK(limit_2pt_correlation_V(0.0, one) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("Ginibre correlation endpoints") {
  CHECK(ginibre_2pt_correlation(0.0, 1.9111681216818476) == 0.0);
  CHECK(ginibre_2pt_correlation(1e4, 1.9111681216818476) == doctest::Approx(1.0));
}

TEST_CASE("one-point density of the determinant process") {
  const std::vector<double> s{0.5};
  CHECK(limit_1_density_M(s, s) == doctest::Approx(0.5 / kPi).epsilon(1e-14));

  // symmetric symbol: coincides with the V-process 1-point density
  const std::vector<double> sp{0.6454972243679028, 0.3100868364730211};
  const std::vector<cplx> w{{0.0, 0.0}};
  CHECK(limit_1_density_M(sp, sp) ==
        doctest::Approx(limit_k_density_V(w, sp)).epsilon(1e-13));

  // complex harmonic oscillator at z0 = 1+i: all four sigmas are 1/4
  const std::vector<double> ho{0.25, 0.25};
  CHECK(limit_1_density_M(ho, ho) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-14));
}
