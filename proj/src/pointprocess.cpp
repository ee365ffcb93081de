#include "specpert/pointprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specpert/errors.hpp"

namespace specpert {

namespace {
constexpr double kPi = std::numbers::pi;
}

RescaledProcess rescale(const SpectrumRecord& spectrum, cplx z0, double r) {
  if (r <= 0.0 || spectrum.h <= 0.0)
    throw SimError(Err::BadConfig, "rescale: R and h must be positive");
  RescaledProcess out{z0, spectrum.h, r, {}};
  const double inv_sqrt_h = 1.0 / std::sqrt(spectrum.h);
  for (const cplx& z : spectrum.eigenvalues) {
    const cplx w = (z - z0) * inv_sqrt_h;
    if (std::abs(w) < r) out.points.push_back(w);
  }
  return out;
}

double disk_set_covariance(double r, double big_r) {
  if (r >= 2.0 * big_r) return 0.0;
  const double half = 0.5 * r / big_r;
  return 2.0 * big_r * big_r * std::acos(half) -
         0.5 * r * std::sqrt(4.0 * big_r * big_r - r * r);
}

double pair_area_integral(double a, double b, double big_r) {
  // Composite Simpson in r over [sqrt(a), sqrt(b)]; integrand is smooth.
  const double lo = std::sqrt(std::max(a, 0.0));
  const double hi = std::min(std::sqrt(std::max(b, 0.0)), 2.0 * big_r);
  if (hi <= lo) return 0.0;
  const int n = 256;
  const double h = (hi - lo) / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double r = lo + i * h;
    sum += w * 2.0 * kPi * r * disk_set_covariance(r, big_r);
  }
  return sum * h / 3.0;
}

std::vector<double> default_bin_edges(int n_bins, double r2_max) {
  std::vector<double> edges(n_bins + 1);
  for (int i = 0; i <= n_bins; ++i) edges[i] = r2_max * i / n_bins;
  return edges;
}

CorrelationEstimate pair_correlation(const std::vector<RescaledProcess>& processes,
                                     const std::vector<double>& bin_edges) {
  const int m = static_cast<int>(processes.size());
  if (m < 2) throw SimError(Err::EmptyEnsemble, "pair_correlation: need >= 2 realizations");
  const int n_bins = static_cast<int>(bin_edges.size()) - 1;
  if (n_bins < 1) throw SimError(Err::BadConfig, "pair_correlation: need at least one bin");
  for (int b = 0; b < n_bins; ++b)
    if (!(bin_edges[b + 1] > bin_edges[b]))
      throw SimError(Err::BadConfig, "pair_correlation: bin edges must increase");

  const cplx z0 = processes.front().z0;
  const double big_r = processes.front().window_radius;
  for (const auto& p : processes)
    if (p.z0 != z0 || p.window_radius != big_r)
      throw SimError(Err::MetadataMismatch, "pair_correlation: mixed z0 or R");

  // Per-realization counts: points and ordered pairs per bin.
  std::vector<std::int64_t> points_per(m, 0);
  std::vector<std::vector<std::int64_t>> pairs_per(m, std::vector<std::int64_t>(n_bins, 0));
  const double r2_lo = bin_edges.front(), r2_hi = bin_edges.back();
  for (int i = 0; i < m; ++i) {
    const auto& pts = processes[i].points;
    points_per[i] = static_cast<std::int64_t>(pts.size());
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        const double r2 = std::norm(pts[a] - pts[b]);
        if (r2 < r2_lo || r2 >= r2_hi) continue;
        const int bin = static_cast<int>(std::upper_bound(bin_edges.begin(), bin_edges.end(), r2) -
                                         bin_edges.begin()) - 1;
        pairs_per[i][bin] += 2;  // ordered pairs
      }
  }

  std::vector<double> gamma(n_bins);
  for (int b = 0; b < n_bins; ++b)
    gamma[b] = pair_area_integral(bin_edges[b], bin_edges[b + 1], big_r);

  std::int64_t total_points = 0;
  bool pairs_possible = false;
  for (auto v : points_per) {
    total_points += v;
    if (v >= 2) pairs_possible = true;
  }
  const double window_area = kPi * big_r * big_r;
  const double lambda = static_cast<double>(total_points) / (m * window_area);

  CorrelationEstimate est;
  est.bin_edges = bin_edges;
  est.realizations = m;
  est.pooled_intensity = lambda;
  est.pair_counts.assign(n_bins, 0);
  est.khat.assign(n_bins, 0.0);
  est.stderr_.assign(n_bins, 0.0);

  for (int b = 0; b < n_bins; ++b) {
    std::int64_t count = 0;
    for (int i = 0; i < m; ++i) count += pairs_per[i][b];
    est.pair_counts[b] = count;
    const double expected_poisson = m * lambda * lambda * gamma[b];
    // Singleton-only ensembles legitimately estimate zero; otherwise a bin
    // that cannot even expect one reference pair is too fine for the data.
    if (expected_poisson < 1.0 && pairs_possible)
      throw SimError(Err::BinDegenerate,
                     "pair_correlation: bin expects < 1 pair under the Poisson reference");
    est.khat[b] = expected_poisson > 0.0 ? static_cast<double>(count) / expected_poisson : 0.0;

    // Leave-one-realization-out jackknife.
    double mean_loo = 0.0;
    std::vector<double> loo(m);
    for (int i = 0; i < m; ++i) {
      const double lam_i =
          static_cast<double>(total_points - points_per[i]) / ((m - 1) * window_area);
      const double denom = (m - 1) * lam_i * lam_i * gamma[b];
      loo[i] = denom > 0.0 ? static_cast<double>(count - pairs_per[i][b]) / denom : 0.0;
      mean_loo += loo[i];
    }
    mean_loo /= m;
    double ss = 0.0;
    for (int i = 0; i < m; ++i) ss += (loo[i] - mean_loo) * (loo[i] - mean_loo);
    est.stderr_[b] = std::sqrt(ss * (m - 1) / m);
  }
  return est;
}

IntensityEstimate intensity(const std::vector<RescaledProcess>& processes) {
  const int m = static_cast<int>(processes.size());
  if (m < 1) throw SimError(Err::EmptyEnsemble, "intensity: empty ensemble");
  const double area = kPi * processes.front().window_radius * processes.front().window_radius;
  std::vector<double> per(m);
  double mean = 0.0;
  for (int i = 0; i < m; ++i) {
    per[i] = processes[i].points.size() / area;
    mean += per[i];
  }
  mean /= m;
  IntensityEstimate est{mean, 0.0};
  if (m > 1) {
    double ss = 0.0;
    for (int i = 0; i < m; ++i) ss += (per[i] - mean) * (per[i] - mean);
    est.stderr_ = std::sqrt(ss / (m - 1)) / std::sqrt(static_cast<double>(m));
  }
  return est;
}

WeylResult weyl_count(const std::vector<SpectrumRecord>& spectra,
                      const SymbolModel& model, const Rect& gamma) {
  if (spectra.empty()) throw SimError(Err::EmptyEnsemble, "weyl_count: empty ensemble");
  WeylResult res;
  for (const auto& s : spectra) {
    int count = 0;
    for (const cplx& z : s.eigenvalues)
      if (z.real() >= gamma.re_lo && z.real() < gamma.re_hi && z.imag() >= gamma.im_lo &&
          z.imag() < gamma.im_hi)
        ++count;
    res.mean_count += count;
  }
  res.mean_count /= static_cast<double>(spectra.size());
  if (gamma.area() > 0.0)
    res.predicted = phase_space_volume(model, gamma) / (2.0 * kPi * spectra.front().h);
  return res;
}

TwoSampleResult two_sample_correlation_test(const CorrelationEstimate& a,
                                            const CorrelationEstimate& b) {
  if (a.bin_edges != b.bin_edges)
    throw SimError(Err::BinMismatch, "two_sample_correlation_test: bin edges differ");
  TwoSampleResult res;
  const int n = static_cast<int>(a.khat.size());
  for (int i = 0; i < n; ++i) {
    const double se = std::sqrt(a.stderr_[i] * a.stderr_[i] + b.stderr_[i] * b.stderr_[i]);
    const double diff = a.khat[i] - b.khat[i];
    const double z = se > 0.0 ? std::abs(diff) / se : (diff == 0.0 ? 0.0 : INFINITY);
    res.max_abs_z = std::max(res.max_abs_z, z);
    res.mean_abs_z += z;
  }
  if (n > 0) res.mean_abs_z /= n;
  res.pass = res.max_abs_z <= 4.0 && res.mean_abs_z <= 1.5;
  return res;
}

}  // namespace specpert
