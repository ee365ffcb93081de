#pragma once

#include <string>
#include <vector>

#include "specpert/pointprocess.hpp"

namespace specpert {

/// File schemas (decimal, 17 significant digits):
///   spectra.csv   realization,seed,h,delta,re,im
///   rescaled.csv  ensemble,z0_re,z0_im,h,R,realization,w_re,w_im
///   corr.csv      bin_lo_r2,bin_hi_r2,pairs,khat,stderr
///   curves.csv    r2,value,curve_name

void write_spectra_csv(const std::string& path, const std::vector<SpectrumRecord>& spectra);
std::vector<SpectrumRecord> read_spectra_csv(const std::string& path);

struct RescaledEnsemble {
  std::string tag;
  std::vector<RescaledProcess> processes;
};

void write_rescaled_csv(const std::string& path, const std::string& tag,
                        const std::vector<RescaledProcess>& processes);
RescaledEnsemble read_rescaled_csv(const std::string& path);

void write_corr_csv(const std::string& path, const CorrelationEstimate& est);
CorrelationEstimate read_corr_csv(const std::string& path);

struct CurvePoint {
  double r2;
  double value;
  std::string curve_name;
};
void write_curves_csv(const std::string& path, const std::vector<CurvePoint>& points);
std::vector<CurvePoint> read_curves_csv(const std::string& path);

std::string format_g17(double v);

}  // namespace specpert
