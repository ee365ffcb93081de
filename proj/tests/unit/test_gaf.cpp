#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specpert/errors.hpp"
#include "specpert/gaf.hpp"
#include "specpert/rng.hpp"
#include "specpert/stats.hpp"
#include "support/matching.hpp"

using namespace specpert;
using testsupport::matched_max_distance;

namespace {
constexpr double kPi = std::numbers::pi;

double tail_term(double sigma, double r, int n) {
  // sigma^{n/2} r^n / sqrt(n!) built iteratively to avoid overflow
  double t = 1.0;
  for (int k = 1; k <= n; ++k) t *= std::sqrt(sigma) * r / std::sqrt(static_cast<double>(k));
  return t;
}

double tail_sum(double sigma, double r, int from) {
  double s = 0.0;
  for (int n = from; n < from + 400; ++n) s += tail_term(sigma, r, n);
  return s;
}
}  // namespace

TEST_CASE("truncation tail bound holds and is minimal") {
  for (double sigma : {0.25, 0.5, 1.0}) {
    const double r = 6.0;
    const GafSample g = sample_gaf(sigma, r, 5);
    const double target = 1e-3 * std::exp(0.5 * sigma * r * r);
    CHECK(tail_sum(sigma, r, g.truncation + 1) <= target);
    CHECK(tail_sum(sigma, r, g.truncation) > target);
  }
}

TEST_CASE("g(0) is standard complex gaussian for any sigma") {
  for (double sigma : {0.25, 1.0}) {
    double abs2 = 0.0;
    const int n = 3000;
    for (int i = 0; i < n; ++i) {
      const GafSample g = sample_gaf(sigma, 3.0, 1000 + i);
      abs2 += std::norm(gaf_eval(g, 0.0));
    }
    abs2 /= n;
    CHECK(std::abs(abs2 - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("variance grows like the diagonal of the covariance kernel") {
  const double sigma = 0.5;
  const cplx w{1.5, -0.4};
  const int n = 5000;
  double abs2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const GafSample g = sample_gaf(sigma, 4.0, 40000 + i);
    abs2 += std::norm(gaf_eval(g, w));
  }
  abs2 /= n;
  const double want = std::exp(sigma * std::norm(w));
  CHECK(std::abs(abs2 / want - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("empirical covariance matches exp(sigma u conj(w))") {
  const double sigma = 0.8;
  const cplx u{0.3, 0.0}, w{0.5, 0.2};
  const int n = 5000;
  cplx acc = 0.0;
  double scatter = 0.0;
  for (int i = 0; i < n; ++i) {
    const GafSample g = sample_gaf(sigma, 2.5, 90000 + i);
    const cplx prod = gaf_eval(g, u) * std::conj(gaf_eval(g, w));
    acc += prod;
    scatter += std::norm(prod);
  }
  acc /= static_cast<double>(n);
  const cplx want = std::exp(sigma * u * std::conj(w));
  const double se = std::sqrt(scatter / n - std::norm(acc)) / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(acc - want) < 3.0 * se);
}

TEST_CASE("find_zeros on a constructed polynomial") {
  // (w - 0.5)(w + 0.2i) = w^2 + (0.2i - 0.5) w - 0.1i, padded with zeros
  GafSample g;
  g.sigma = 1.0;
  g.window_radius = 2.0;
  g.seed = 0;
  g.coeffs = {cplx(0.0, -0.1), cplx(-0.5, 0.2), cplx(1.0, 0.0), 0.0, 0.0};
  g.truncation = 4;
  const ZeroSet zs = find_zeros(g);
  REQUIRE(zs.zeros.size() == 2);
  CHECK(matched_max_distance(zs.zeros, {cplx(0.5, 0.0), cplx(0.0, -0.2)}) < 1e-10);
}

TEST_CASE("zero residuals respect the local scale") {
  const GafSample g = sample_gaf(1.0, 5.0, 77);
  const ZeroSet zs = find_zeros(g);
  CHECK(!zs.zeros.empty());
  for (std::size_t i = 0; i < zs.zeros.size(); ++i) {
    CHECK(std::abs(zs.zeros[i]) < 5.0);
    CHECK(zs.residuals[i] <= 1e-8 * std::exp(0.5 * std::norm(zs.zeros[i])));
  }
}

TEST_CASE("mean zero count approaches sigma R^2") {
  const double sigma = 0.5, r = 4.0;
  const int n = 400;
  double mean = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const GafSample g = sample_gaf(sigma, r, 7000 + i);
    const ZeroSet zs = find_zeros(g);
    int count = 0;
    for (const cplx& w : zs.zeros) count += std::abs(w) < r - 1.0;
    mean += count;
    sq += static_cast<double>(count) * count;
  }
  mean /= n;
  sq /= n;
  const double se = std::sqrt((sq - mean * mean) / n);
  CHECK(std::abs(mean - sigma * (r - 1.0) * (r - 1.0)) <= 3.0 * se);
}

TEST_CASE("scaling covariance: zero process of g_sigma dilates to g_1") {
  // compare annulus counts of g_{1/2} against g_1 in annuli shrunk by sqrt(2)
  const double sigma = 0.5;
  const int n = 600;
  const std::vector<double> edges{0.0, 1.0, 2.0, 3.0};
  std::vector<double> mean_a(3, 0.0), mean_b(3, 0.0), sq_a(3, 0.0), sq_b(3, 0.0);
  for (int i = 0; i < n; ++i) {
    const GafSample ga = sample_gaf(sigma, 4.0, 15000 + i);
    const GafSample gb = sample_gaf(1.0, 4.0 * std::sqrt(sigma), 65000 + i);
    std::vector<int> ca(3, 0), cb(3, 0);
    for (const cplx& w : find_zeros(ga).zeros)
      for (int b = 0; b < 3; ++b)
        if (std::abs(w) >= edges[b] && std::abs(w) < edges[b + 1]) ++ca[b];
    for (const cplx& w : find_zeros(gb).zeros)
      for (int b = 0; b < 3; ++b) {
        const double scaled = std::abs(w) / std::sqrt(sigma);
        if (scaled >= edges[b] && scaled < edges[b + 1]) ++cb[b];
      }
    for (int b = 0; b < 3; ++b) {
      mean_a[b] += ca[b];
      sq_a[b] += ca[b] * ca[b];
      mean_b[b] += cb[b];
      sq_b[b] += cb[b] * cb[b];
    }
  }
  for (int b = 0; b < 3; ++b) {
    mean_a[b] /= n;
    mean_b[b] /= n;
    const double var_a = sq_a[b] / n - mean_a[b] * mean_a[b];
    const double var_b = sq_b[b] / n - mean_b[b] * mean_b[b];
    const double se = std::sqrt((var_a + var_b) / n);
    CHECK(std::abs(mean_a[b] - mean_b[b]) <= 3.0 * se);
  }
}

TEST_CASE("ProductV with one factor reduces to find_zeros") {
  const LimitProcessSpec spec = LimitProcessSpec::product_v({0.7}, 4.0, 99);
  const ZeroSet via_process = sample_limit_process(spec);
  const ZeroSet direct = find_zeros(sample_gaf(0.7, 4.0, derive_seed(99, 0)));
  REQUIRE(via_process.zeros.size() == direct.zeros.size());
  for (std::size_t i = 0; i < direct.zeros.size(); ++i)
    CHECK(via_process.zeros[i] == direct.zeros[i]);
}

TEST_CASE("ProductV zero set is the union of its factors") {
  const std::vector<double> sigmas{0.4, 0.8};
  const LimitProcessSpec spec = LimitProcessSpec::product_v(sigmas, 3.5, 1234);
  const ZeroSet zs = sample_limit_process(spec);
  std::size_t total = 0;
  for (int j = 0; j < 2; ++j)
    total += find_zeros(sample_gaf(sigmas[j], 3.5, derive_seed(1234, j))).zeros.size();
  CHECK(zs.zeros.size() == total);
}

TEST_CASE("DetM with J=1 agrees with the companion-matrix route") {
  const LimitProcessSpec spec = LimitProcessSpec::det_m_matrix({0.6}, 1, 3.5, 4242);
  const ZeroSet via_winding = sample_limit_process(spec);
  const ZeroSet via_companion = find_zeros(sample_gaf(0.6, 3.5, derive_seed(4242, 0)));
  REQUIRE(via_winding.zeros.size() == via_companion.zeros.size());
  CHECK(matched_max_distance(via_winding.zeros, via_companion.zeros) < 1e-8);
}

TEST_CASE("DetM with J=2 agrees with the expanded determinant polynomial") {
  const double s = 0.5;
  for (std::uint64_t seed : {31ull, 32ull, 33ull}) {
    const LimitProcessSpec spec =
        LimitProcessSpec::det_m_matrix({s, s, s, s}, 2, 3.0, seed);
    const ZeroSet via_winding = sample_limit_process(spec);

    // oracle: convolve the truncated series, then companion + polish
    std::vector<GafSample> e;
    for (int i = 0; i < 4; ++i) e.push_back(sample_gaf(s, 3.0, derive_seed(seed, i)));
    auto conv = [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
      std::vector<cplx> c(a.size() + b.size() - 1, 0.0);
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
      return c;
    };
    const std::vector<cplx> prod0 = conv(e[0].coeffs, e[3].coeffs);
    const std::vector<cplx> prod1 = conv(e[1].coeffs, e[2].coeffs);
    GafSample det;
    det.sigma = 2.0 * s;  // residual scale of the product
    det.window_radius = 3.0;
    det.seed = 0;
    det.coeffs.resize(prod0.size());
    for (std::size_t i = 0; i < prod0.size(); ++i) det.coeffs[i] = prod0[i] - prod1[i];
    det.truncation = static_cast<int>(det.coeffs.size()) - 1;
    const ZeroSet oracle = find_zeros(det);

    // compare away from the harvest boundary
    std::vector<cplx> a, b;
    for (const cplx& w : via_winding.zeros)
      if (std::abs(w) < 2.8) a.push_back(w);
    for (const cplx& w : oracle.zeros)
      if (std::abs(w) < 2.8) b.push_back(w);
    REQUIRE(a.size() == b.size());
    CHECK(matched_max_distance(a, b) < 1e-6);
  }
}

TEST_CASE("DetM J=2 mean count matches the 1-point density") {
  const double s = 0.5, r = 4.0;
  const int n = 300;
  double mean = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const LimitProcessSpec spec =
        LimitProcessSpec::det_m_matrix({s, s, s, s}, 2, r, 5000 + i);
    const ZeroSet zs = sample_limit_process(spec);
    int count = 0;
    for (const cplx& w : zs.zeros) count += std::abs(w) < r - 1.0;
    mean += count;
    sq += static_cast<double>(count) * count;
  }
  mean /= n;
  sq /= n;
  const double se = std::sqrt((sq - mean * mean) / n);
  // density sum_i (sigma_+^i + sigma_-^i)/(2pi) = 2 s / pi over area pi (r-1)^2
  const double want = 2.0 * s * (r - 1.0) * (r - 1.0);
  CHECK(std::abs(mean - want) <= 3.0 * se);
}

TEST_CASE("translate_process with the identity returns the same zeros") {
  const LimitProcessSpec spec = LimitProcessSpec::product_v({0.5, 0.9}, 3.0, 777);
  const ZeroSet base = sample_limit_process(spec);
  const ZeroSet moved = translate_process(spec, 1.0, 0.0);
  REQUIRE(base.zeros.size() == moved.zeros.size());
  CHECK(matched_max_distance(base.zeros, moved.zeros) < 1e-12);
}

TEST_CASE("translated and rotated windows have equal mean counts") {
  const cplx alpha = std::exp(cplx(0.0, 0.7));
  const cplx beta{0.8, -0.3};
  const double r = 3.0;
  const int n = 400;
  double mean_a = 0.0, mean_b = 0.0, sq_a = 0.0, sq_b = 0.0;
  for (int i = 0; i < n; ++i) {
    const LimitProcessSpec spec = LimitProcessSpec::product_v({0.6}, r, 30000 + i);
    const double ca = static_cast<double>(sample_limit_process(spec).zeros.size());
    const double cb = static_cast<double>(translate_process(spec, alpha, beta).zeros.size());
    mean_a += ca;
    sq_a += ca * ca;
    mean_b += cb;
    sq_b += cb * cb;
  }
  mean_a /= n;
  mean_b /= n;
  const double var = (sq_a / n - mean_a * mean_a) + (sq_b / n - mean_b * mean_b);
  const double se = std::sqrt(var / n);
  CHECK(std::abs(mean_a - mean_b) <= 3.0 * se);
}

TEST_CASE("translate_process rejects dilations") {
  const LimitProcessSpec spec = LimitProcessSpec::product_v({0.5}, 2.0, 1);
  CHECK_THROWS_AS(translate_process(spec, cplx(1.1, 0.0), cplx(0.0, 0.0)), SimError);
}
