#pragma once

#include <functional>
#include <string>
#include <vector>

#include "specpert/config.hpp"
#include "specpert/gaf.hpp"
#include "specpert/pointprocess.hpp"

namespace specpert {

/// Basis from the coverage rule, optionally forced to cover |z| up to
/// extra_abs as well (Weyl rectangles).
BasisSpec choose_basis(const ExperimentConfig& cfg, double extra_abs = 0.0);

struct SpectrumEnsemble {
  std::vector<SpectrumRecord> spectra;
  std::vector<RescaledProcess> rescaled;
};

/// `realizations` independent draws of the perturbed operator; realization i
/// uses seed derive_seed(master_seed, i). Deterministic for a fixed config,
/// independent of the thread count.
SpectrumEnsemble run_spectrum_ensemble(const ExperimentConfig& cfg, int threads,
                                       double extra_abs = 0.0,
                                       const std::function<void(int)>& progress = {});

/// Zero sets of the limit process: realization i reseeds the spec with
/// derive_seed(master_seed, i), harvests in radius stats_radius + 1 and keeps
/// |w| < stats_radius (truncation-boundary margin).
std::vector<RescaledProcess> run_gaf_ensemble(const LimitProcessSpec& proto,
                                              double stats_radius, int realizations,
                                              std::uint64_t master_seed, int threads);

/// Energy-shell densities sigma_+^j at z0 for the configured model.
std::vector<double> config_sigmas_plus(const ExperimentConfig& cfg);
double config_sigma_sum(const ExperimentConfig& cfg);  // sum_j (sigma_+^j + sigma_-^j)

struct TheoryCurve {
  std::string name;
  std::function<double(double)> value;  // of squared separation
};

/// theory in {kappa, k2v, ginibre}; parameters from the explicit keys
/// theory_sigma / theory_sigmas / theory_sigma_sum, else derived from
/// model and z0.
TheoryCurve make_theory_curve(const std::string& theory, const KeyValues& kv);

struct DeviationSummary {
  double max_abs_z = 0.0;
  double mean_abs_z = 0.0;
  bool pass = false;
};

DeviationSummary compare_to_theory(const CorrelationEstimate& est, const TheoryCurve& curve,
                                   double max_z_threshold = 4.0,
                                   double mean_z_threshold = 1.5);

}  // namespace specpert
