#include "specpert/runner.hpp"

#include <atomic>
#include <cmath>

#include "specpert/eigensolver.hpp"
#include "specpert/errors.hpp"
#include "specpert/limits.hpp"
#include "specpert/rng.hpp"
#include "specpert/stats.hpp"

namespace specpert {

BasisSpec choose_basis(const ExperimentConfig& cfg, double extra_abs) {
  if (cfg.basis_cutoff > 0 && extra_abs == 0.0) return cfg.basis();
  const double wma = std::max(cfg.window_max_abs(), extra_abs);
  if (cfg.model.domain() == DomainKind::Torus) {
    int k = static_cast<int>(std::ceil(std::sqrt(2.0 * wma) / cfg.h));
    k = std::max(k, cfg.basis_cutoff);
    return BasisSpec::fourier_torus(k, cfg.h);
  }
  int n_max = static_cast<int>(std::ceil(wma / cfg.h - 0.5));
  n_max = std::max(n_max, cfg.basis_cutoff);
  return BasisSpec::scaled_hermite(n_max, cfg.h);
}

SpectrumEnsemble run_spectrum_ensemble(const ExperimentConfig& cfg, int threads,
                                       double extra_abs,
                                       const std::function<void(int)>& progress) {
  const BasisSpec basis = choose_basis(cfg, extra_abs);
  const OperatorMatrix p0 =
      build_unperturbed(cfg.model, basis, cfg.h, std::max(cfg.window_max_abs(), extra_abs));
  const double delta = cfg.delta();
  const int dim = basis.dimension();
  const int draw_n =
      cfg.perturbation == PerturbKind::RandomMatrix ? dim : (dim % 2 ? dim : dim - 1);
  const std::string tag = cfg.ensemble_tag();

  SpectrumEnsemble out;
  out.spectra.resize(cfg.realizations);
  out.rescaled.resize(cfg.realizations);
  std::atomic<int> done{0};

  parallel_for_index(cfg.realizations, threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(cfg.master_seed, i);
    const PerturbationDraw draw = draw_perturbation(cfg.perturbation, cfg.law, draw_n,
                                                    cfg.h, cfg.clamp, cfg.clamp_c, seed);
    const OperatorMatrix pd = assemble_perturbed(p0, draw, delta);
    const EigenResult eig = eigenvalues(pd.entries);
    SpectrumRecord rec{cfg.h, delta, seed, tag, eig.eigenvalues};
    out.rescaled[i] = rescale(rec, cfg.z0, cfg.window_radius);
    out.spectra[i] = std::move(rec);
    if (progress) progress(++done);
  });
  return out;
}

std::vector<RescaledProcess> run_gaf_ensemble(const LimitProcessSpec& proto,
                                              double stats_radius, int realizations,
                                              std::uint64_t master_seed, int threads) {
  std::vector<RescaledProcess> out(realizations);
  parallel_for_index(realizations, threads, [&](std::size_t i) {
    LimitProcessSpec spec = proto;
    spec.window_radius = stats_radius + 1.0;
    spec.seed = derive_seed(master_seed, i);
    const ZeroSet zs = sample_limit_process(spec);
    RescaledProcess proc{0.0, 1.0, stats_radius, {}};
    for (const cplx& w : zs.zeros)
      if (std::abs(w) < stats_radius) proc.points.push_back(w);
    out[i] = std::move(proc);
  });
  return out;
}

std::vector<double> config_sigmas_plus(const ExperimentConfig& cfg) {
  return solve_energy_shell(cfg.model, cfg.z0).sigmas_plus();
}

double config_sigma_sum(const ExperimentConfig& cfg) {
  return solve_energy_shell(cfg.model, cfg.z0).density_sum();
}

TheoryCurve make_theory_curve(const std::string& theory, const KeyValues& kv) {
  auto derived_sigmas = [&]() -> std::vector<double> {
    const ExperimentConfig cfg = ExperimentConfig::from_keyvalues(kv);
    return config_sigmas_plus(cfg);
  };

  if (theory == "kappa") {
    double sigma = kv.get_double("theory_sigma", 0.0);
    if (sigma <= 0.0)
      throw SimError(Err::BadConfig, "report: theory=kappa needs theory_sigma > 0");
    return {"kappa", [sigma](double r2) { return kappa(0.5 * sigma * r2); }};
  }
  if (theory == "k2v") {
    std::vector<double> sigmas = kv.get_double_list("theory_sigmas");
    if (sigmas.empty()) sigmas = derived_sigmas();
    return {"k2v", [sigmas](double r2) {
              return limit_2pt_correlation_V(r2, sigmas);
            }};
  }
  if (theory == "ginibre") {
    double sum = kv.get_double("theory_sigma_sum", 0.0);
    if (sum <= 0.0) {
      const ExperimentConfig cfg = ExperimentConfig::from_keyvalues(kv);
      sum = config_sigma_sum(cfg);
    }
    return {"ginibre", [sum](double r2) { return ginibre_2pt_correlation(r2, sum); }};
  }
  throw SimError(Err::BadConfig, "report: theory must be one of kappa, k2v, ginibre");
}

DeviationSummary compare_to_theory(const CorrelationEstimate& est, const TheoryCurve& curve,
                                   double max_z_threshold, double mean_z_threshold) {
  DeviationSummary s;
  const int n = static_cast<int>(est.khat.size());
  for (int b = 0; b < n; ++b) {
    const double center = 0.5 * (est.bin_edges[b] + est.bin_edges[b + 1]);
    const double diff = est.khat[b] - curve.value(center);
    const double z = est.stderr_[b] > 0.0 ? std::abs(diff) / est.stderr_[b]
                                          : (diff == 0.0 ? 0.0 : INFINITY);
    s.max_abs_z = std::max(s.max_abs_z, z);
    s.mean_abs_z += z;
  }
  if (n > 0) s.mean_abs_z /= n;
  s.pass = s.max_abs_z <= max_z_threshold && s.mean_abs_z <= mean_z_threshold;
  return s;
}

}  // namespace specpert
