// End-to-end checks of the command line tool: determinism across runs and
// thread counts, file schemas, exit codes. The binary path arrives in the
// SPECPERT_CLI environment variable.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "specpert/csvio.hpp"
#include "specpert/limits.hpp"

namespace fs = std::filesystem;
using namespace specpert;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
  std::printf("%s %s\n", ok ? "ok  " : "FAIL", what.c_str());
  if (!ok) ++g_failures;
}

std::string cli_path() {
  const char* p = std::getenv("SPECPERT_CLI");
  return p ? p : "specpert";
}

int run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "specpert_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string base =
      "--set model=torus_exp --set q=1 --set h=0.2 --set delta_exponent=4 "
      "--set z0_re=1.6 --set z0_im=0 --set window_radius=3 --set realizations=4 "
      "--set perturbation=potential --set law=gaussian --set master_seed=11";

  // determinism: identical config twice, then a different thread count
  const fs::path out_a = dir / "a", out_b = dir / "b", out_c = dir / "c";
  check(run("spectrum " + base + " --threads 2 --out " + out_a.string()) == 0,
        "spectrum run #1 exits 0");
  check(run("spectrum " + base + " --threads 2 --out " + out_b.string()) == 0,
        "spectrum run #2 exits 0");
  check(run("spectrum " + base + " --threads 1 --out " + out_c.string()) == 0,
        "spectrum run #3 (1 thread) exits 0");
  check(slurp(out_a / "spectra.csv") == slurp(out_b / "spectra.csv"),
        "spectra.csv byte-identical across runs");
  check(slurp(out_a / "rescaled.csv") == slurp(out_b / "rescaled.csv"),
        "rescaled.csv byte-identical across runs");
  check(slurp(out_a / "spectra.csv") == slurp(out_c / "spectra.csv"),
        "spectra.csv independent of thread count");

  // schema spot checks
  {
    std::ifstream in(out_a / "spectra.csv");
    std::string header;
    std::getline(in, header);
    check(header == "realization,seed,h,delta,re,im", "spectra.csv header");
  }

  // gaf + correlate round
  const fs::path gaf_dir = dir / "gaf";
  check(run("gaf --set gaf_kind=product --set gaf_sigmas=0.5 --set window_radius=4 "
            "--set realizations=60 --set master_seed=5 --out " +
            gaf_dir.string()) == 0,
        "gaf run exits 0");
  const RescaledEnsemble ens = read_rescaled_csv((gaf_dir / "rescaled.csv").string());
  check(ens.tag == "gaf_product", "gaf ensemble tag");
  check(ens.processes.size() == 60, "gaf realization count");
  check(run("correlate --input " + (gaf_dir / "rescaled.csv").string() +
            " --set bins=8 --set r2_max=8 --out " + gaf_dir.string()) == 0,
        "correlate exits 0");

  // report on self-consistent data passes, on the wrong theory fails with 2
  {
    CorrelationEstimate est = read_corr_csv((gaf_dir / "corr.csv").string());
    for (std::size_t b = 0; b < est.khat.size(); ++b) {
      const double c = 0.5 * (est.bin_edges[b] + est.bin_edges[b + 1]);
      est.khat[b] = kappa(0.25 * c);
      est.stderr_[b] = 0.02;
    }
    write_corr_csv((dir / "exact.csv").string(), est);
    check(run("report --corr " + (dir / "exact.csv").string() +
              " --theory kappa --set theory_sigma=0.5 --out " + dir.string()) == 0,
          "report on exact kappa samples passes");
    check(fs::exists(dir / "curves.csv") && fs::exists(dir / "figure.svg") &&
              fs::exists(dir / "report.txt"),
          "report writes curves.csv, figure.svg, report.txt");
    check(run("report --corr " + (dir / "exact.csv").string() +
              " --theory ginibre --set theory_sigma_sum=2.0 --out " + dir.string()) == 2,
          "report against the wrong curve exits 2");
  }

  // hard errors exit 1
  check(run("spectrum --set model=bogus") == 1, "bad config exits 1");
  check(run("report --corr /nonexistent.csv --theory kappa --set theory_sigma=1") == 1,
        "missing input exits 1");

  // weyl smoke: small torus run
  check(run("weyl " + base +
            " --set gamma_re_lo=1.2 --set gamma_re_hi=2.0 --set gamma_im_lo=-0.3 "
            "--set gamma_im_hi=0.3 --threads 2") == 0,
        "weyl exits 0");

  std::printf("%s\n", g_failures == 0 ? "ALL CLI CHECKS PASSED" : "CLI CHECKS FAILED");
  return g_failures == 0 ? 0 : 1;
}
