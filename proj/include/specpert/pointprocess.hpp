#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specpert/matrix.hpp"
#include "specpert/symbols.hpp"

namespace specpert {

/// One realization's eigenvalues plus provenance.
struct SpectrumRecord {
  double h = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::string ensemble_tag;
  std::vector<cplx> eigenvalues;
};

/// Eigenvalues rescaled to the microscopic window: w = (z - z0)/sqrt(h), |w| < R.
struct RescaledProcess {
  cplx z0;
  double h = 1.0;
  double window_radius = 0.0;
  std::vector<cplx> points;
};

RescaledProcess rescale(const SpectrumRecord& spectrum, cplx z0, double r);

/// Area of the intersection of a disk of radius R with its translate by r
/// (isotropic set covariance); 0 for r >= 2R.
double disk_set_covariance(double r, double big_r);

/// gamma(a,b) = integral_{sqrt(a)}^{sqrt(b)} 2 pi r A_cov(r) dr: expected
/// ordered pairs with squared separation in [a,b) per unit squared intensity.
double pair_area_integral(double a, double b, double big_r);

std::vector<double> default_bin_edges(int n_bins, double r2_max);

struct CorrelationEstimate {
  std::vector<double> bin_edges;           // squared separations, size n_bins+1
  std::vector<std::int64_t> pair_counts;   // ordered pairs, intra-realization
  std::vector<double> khat;
  std::vector<double> stderr_;             // per-realization jackknife
  int realizations = 0;
  double pooled_intensity = 0.0;
};

/// Empirical pair correlation over squared-separation bins with the exact
/// disk set-covariance edge correction; pairs never cross realizations.
CorrelationEstimate pair_correlation(const std::vector<RescaledProcess>& processes,
                                     const std::vector<double>& bin_edges);

struct IntensityEstimate {
  double density = 0.0;
  double stderr_ = 0.0;
};
IntensityEstimate intensity(const std::vector<RescaledProcess>& processes);

struct WeylResult {
  double mean_count = 0.0;
  double predicted = 0.0;
};

/// Mean number of eigenvalues in gamma against the probabilistic Weyl's law
/// prediction vol(p0^{-1}(gamma)) / (2 pi h).
WeylResult weyl_count(const std::vector<SpectrumRecord>& spectra,
                      const SymbolModel& model, const Rect& gamma);

struct TwoSampleResult {
  double max_abs_z = 0.0;
  double mean_abs_z = 0.0;
  bool pass = false;
};

/// Per-bin z-scores from pooled standard errors; pass iff max|z| <= 4 and
/// mean|z| <= 1.5.
TwoSampleResult two_sample_correlation_test(const CorrelationEstimate& a,
                                            const CorrelationEstimate& b);

}  // namespace specpert
