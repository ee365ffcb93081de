#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <thread>

#include "specpert/csvio.hpp"
#include "specpert/errors.hpp"
#include "specpert/gaf.hpp"
#include "specpert/limits.hpp"
#include "specpert/runner.hpp"
#include "specpert/svgplot.hpp"

namespace fs = std::filesystem;
using namespace specpert;

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "configuration file (key = value lines)");
  cmd->add_option("--set", args.sets, "override, key=value (repeatable)")->take_all();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--threads", args.threads, "worker threads (0: hardware)");
}

KeyValues load_keyvalues(const CommonArgs& args) {
  KeyValues kv = args.config_path.empty() ? KeyValues::from_string("")
                                          : KeyValues::from_file(args.config_path);
  for (const std::string& s : args.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw SimError(Err::BadConfig, "--set expects key=value, got: " + s);
    kv.set(s.substr(0, eq), s.substr(eq + 1));
  }
  if (!args.out_dir.empty()) kv.set("out_dir", args.out_dir);
  return kv;
}

int thread_count(const CommonArgs& args) {
  if (args.threads > 0) return args.threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

fs::path ensure_out_dir(const KeyValues& kv) {
  const fs::path dir = kv.get_string("out_dir", "out");
  fs::create_directories(dir);
  return dir;
}

int cmd_spectrum(const CommonArgs& args) {
  const KeyValues kv = load_keyvalues(args);
  const ExperimentConfig cfg = ExperimentConfig::from_keyvalues(kv);
  const fs::path dir = ensure_out_dir(kv);
  const fs::path spectra_path = dir / "spectra.csv";
  const fs::path rescaled_path = dir / "rescaled.csv";
  try {
    const SpectrumEnsemble ens = run_spectrum_ensemble(cfg, thread_count(args));
    write_spectra_csv(spectra_path.string(), ens.spectra);
    write_rescaled_csv(rescaled_path.string(), cfg.ensemble_tag(), ens.rescaled);
  } catch (...) {
    std::error_code ec;
    fs::remove(spectra_path, ec);
    fs::remove(rescaled_path, ec);
    throw;
  }
  std::printf("spectrum: %d realizations -> %s\n", cfg.realizations, dir.string().c_str());
  return 0;
}

LimitProcessSpec gaf_spec_from_config(const KeyValues& kv) {
  const std::string kind = kv.get_string("gaf_kind", "product");
  const double r = kv.get_double("window_radius", 5.0);
  const std::uint64_t seed = kv.get_u64("master_seed", 1);
  if (kind == "product") {
    std::vector<double> sigmas = kv.get_double_list("gaf_sigmas");
    if (sigmas.empty()) {
      const ExperimentConfig cfg = ExperimentConfig::from_keyvalues(kv);
      sigmas = config_sigmas_plus(cfg);
    }
    return LimitProcessSpec::product_v(sigmas, r, seed);
  }
  if (kind == "det") {
    std::vector<double> sp = kv.get_double_list("gaf_sigma_plus");
    std::vector<double> sm = kv.get_double_list("gaf_sigma_minus");
    if (sp.empty() || sm.empty()) {
      const ExperimentConfig cfg = ExperimentConfig::from_keyvalues(kv);
      const EnergyShell shell = solve_energy_shell(cfg.model, cfg.z0);
      sp = shell.sigmas_plus();
      sm = shell.sigmas_minus();
    }
    return LimitProcessSpec::det_m(sp, sm, r, seed);
  }
  throw SimError(Err::BadConfig, "gaf: gaf_kind must be product or det");
}

int cmd_gaf(const CommonArgs& args) {
  const KeyValues kv = load_keyvalues(args);
  const LimitProcessSpec spec = gaf_spec_from_config(kv);
  const int realizations = kv.get_int("realizations", 2000);
  const fs::path dir = ensure_out_dir(kv);
  const fs::path path = dir / "rescaled.csv";
  const std::string tag =
      spec.kind == LimitProcessSpec::Kind::ProductV ? "gaf_product" : "gaf_det";
  try {
    const std::vector<RescaledProcess> procs = run_gaf_ensemble(
        spec, spec.window_radius, realizations, kv.get_u64("master_seed", 1),
        thread_count(args));
    write_rescaled_csv(path.string(), tag, procs);
  } catch (...) {
    std::error_code ec;
    fs::remove(path, ec);
    throw;
  }
  std::printf("gaf: %d realizations -> %s\n", realizations, path.string().c_str());
  return 0;
}

int cmd_correlate(const CommonArgs& args, const std::vector<std::string>& inputs) {
  const KeyValues kv = load_keyvalues(args);
  if (inputs.empty()) throw SimError(Err::BadConfig, "correlate: need at least one --input");
  std::vector<RescaledProcess> pool;
  for (const std::string& path : inputs) {
    RescaledEnsemble ens = read_rescaled_csv(path);
    for (auto& p : ens.processes) pool.push_back(std::move(p));
  }
  const int bins = kv.get_int("bins", 40);
  const double r2_max = kv.get_double("r2_max", 18.0);
  const CorrelationEstimate est = pair_correlation(pool, default_bin_edges(bins, r2_max));
  const fs::path dir = ensure_out_dir(kv);
  const fs::path path = dir / "corr.csv";
  write_corr_csv(path.string(), est);
  std::printf("correlate: %d realizations, intensity %.6g -> %s\n", est.realizations,
              est.pooled_intensity, path.string().c_str());
  return 0;
}

int cmd_report(const CommonArgs& args, const std::string& corr_path,
               const std::string& theory) {
  const KeyValues kv = load_keyvalues(args);
  const CorrelationEstimate est = read_corr_csv(corr_path);
  const TheoryCurve curve = make_theory_curve(theory, kv);
  const double max_thr = kv.get_double("report_max_z", 4.0);
  const double mean_thr = kv.get_double("report_mean_z", 1.5);
  const DeviationSummary dev = compare_to_theory(est, curve, max_thr, mean_thr);

  const fs::path dir = ensure_out_dir(kv);
  std::vector<CurvePoint> curve_points;
  std::vector<std::pair<double, double>> emp, thr;
  std::vector<double> bars;
  const double r2_max = est.bin_edges.back();
  for (std::size_t b = 0; b + 1 < est.bin_edges.size(); ++b) {
    const double c = 0.5 * (est.bin_edges[b] + est.bin_edges[b + 1]);
    curve_points.push_back({c, est.khat[b], "empirical_khat"});
    emp.push_back({c, est.khat[b]});
    bars.push_back(est.stderr_[b]);
  }
  const int n_curve = 200;
  for (int i = 0; i <= n_curve; ++i) {
    const double r2 = r2_max * i / n_curve;
    curve_points.push_back({r2, curve.value(r2), curve.name});
    thr.push_back({r2, curve.value(r2)});
  }
  write_curves_csv((dir / "curves.csv").string(), curve_points);

  double y_hi = 1.3;
  for (const auto& [x, y] : emp) y_hi = std::max(y_hi, y + 0.1);
  SvgPlot plot(0.0, r2_max, 0.0, y_hi, "|w1-w2|^2", "pair correlation");
  plot.add_polyline(thr, "#c62828", curve.name);
  plot.add_scatter(emp, "#1565c0", "empirical");
  plot.add_errorbars(emp, bars, "#1565c0");
  plot.write((dir / "figure.svg").string());

  std::ofstream rep(dir / "report.txt");
  rep << "theory: " << curve.name << "\n"
      << "bins: " << est.khat.size() << "\n"
      << "realizations: " << est.realizations << "\n"
      << "pooled_intensity: " << format_g17(est.pooled_intensity) << "\n"
      << "max_abs_z: " << format_g17(dev.max_abs_z) << "\n"
      << "mean_abs_z: " << format_g17(dev.mean_abs_z) << "\n"
      << "thresholds: max " << max_thr << ", mean " << mean_thr << "\n"
      << "pass: " << (dev.pass ? "yes" : "no") << "\n";

  std::printf("report: theory=%s max|z|=%.3f mean|z|=%.3f -> %s (%s)\n", curve.name.c_str(),
              dev.max_abs_z, dev.mean_abs_z, (dir / "report.txt").string().c_str(),
              dev.pass ? "pass" : "FAIL");
  return dev.pass ? 0 : 2;
}

int cmd_weyl(const CommonArgs& args) {
  const KeyValues kv = load_keyvalues(args);
  const ExperimentConfig cfg = ExperimentConfig::from_keyvalues(kv);
  const Rect gamma{kv.get_double("gamma_re_lo", 0.5), kv.get_double("gamma_re_hi", 1.5),
                   kv.get_double("gamma_im_lo", 0.5), kv.get_double("gamma_im_hi", 1.5)};
  const double corner = std::max(
      std::hypot(gamma.re_lo, gamma.im_lo),
      std::max(std::hypot(gamma.re_hi, gamma.im_hi),
               std::max(std::hypot(gamma.re_lo, gamma.im_hi), std::hypot(gamma.re_hi, gamma.im_lo))));
  const SpectrumEnsemble ens = run_spectrum_ensemble(cfg, thread_count(args), corner);
  const WeylResult res = weyl_count(ens.spectra, cfg.model, gamma);
  const double rel = res.predicted != 0.0
                         ? std::abs(res.mean_count - res.predicted) / res.predicted
                         : 0.0;
  std::printf("weyl: mean_count=%.6g predicted=%.6g relative_deviation=%.4f\n",
              res.mean_count, res.predicted, rel);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of randomly perturbed nonselfadjoint semiclassical operators"};
  app.require_subcommand(1);

  CommonArgs spectrum_args, gaf_args, corr_args, report_args, weyl_args;
  std::vector<std::string> corr_inputs;
  std::string report_corr, report_theory = "k2v";

  CLI::App* spectrum = app.add_subcommand("spectrum", "Monte Carlo perturbed spectra");
  add_common(spectrum, spectrum_args);
  CLI::App* gaf = app.add_subcommand("gaf", "sample limit-process zero sets");
  add_common(gaf, gaf_args);
  CLI::App* correlate = app.add_subcommand("correlate", "empirical pair correlation");
  add_common(correlate, corr_args);
  correlate->add_option("--input", corr_inputs, "rescaled.csv inputs")->take_all();
  CLI::App* report = app.add_subcommand("report", "compare correlation to a limit curve");
  add_common(report, report_args);
  report->add_option("--corr", report_corr, "corr.csv input")->required();
  report->add_option("--theory", report_theory, "k2v | ginibre | kappa");
  CLI::App* weyl = app.add_subcommand("weyl", "probabilistic Weyl count in a rectangle");
  add_common(weyl, weyl_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed()) return cmd_spectrum(spectrum_args);
    if (gaf->parsed()) return cmd_gaf(gaf_args);
    if (correlate->parsed()) return cmd_correlate(corr_args, corr_inputs);
    if (report->parsed()) return cmd_report(report_args, report_corr, report_theory);
    if (weyl->parsed()) return cmd_weyl(weyl_args);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
