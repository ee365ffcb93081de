#include "specpert/csvio.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "specpert/errors.hpp"

namespace specpert {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  return out;
}

std::ifstream open_or_throw(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw SimError(Err::IoError, std::string(what) + ": cannot open " + path);
  return in;
}

void expect_header(std::ifstream& in, const std::string& expected, const std::string& path) {
  std::string line;
  if (!std::getline(in, line) || line != expected)
    throw SimError(Err::IoError, "unexpected header in " + path + " (want '" + expected + "')");
}

double to_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

void write_spectra_csv(const std::string& path, const std::vector<SpectrumRecord>& spectra) {
  std::ofstream out(path);
  if (!out) throw SimError(Err::IoError, "write_spectra_csv: cannot open " + path);
  out << "realization,seed,h,delta,re,im\n";
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    const auto& s = spectra[i];
    for (const cplx& z : s.eigenvalues)
      out << i << ',' << s.seed << ',' << format_g17(s.h) << ',' << format_g17(s.delta)
          << ',' << format_g17(z.real()) << ',' << format_g17(z.imag()) << '\n';
  }
}

std::vector<SpectrumRecord> read_spectra_csv(const std::string& path) {
  std::ifstream in = open_or_throw(path, "read_spectra_csv");
  expect_header(in, "realization,seed,h,delta,re,im", path);
  std::map<long, SpectrumRecord> by_realization;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw SimError(Err::IoError, "read_spectra_csv: malformed row");
    const long idx = std::strtol(f[0].c_str(), nullptr, 10);
    SpectrumRecord& rec = by_realization[idx];
    rec.seed = std::strtoull(f[1].c_str(), nullptr, 10);
    rec.h = to_double(f[2]);
    rec.delta = to_double(f[3]);
    rec.eigenvalues.emplace_back(to_double(f[4]), to_double(f[5]));
  }
  std::vector<SpectrumRecord> out;
  out.reserve(by_realization.size());
  for (auto& [idx, rec] : by_realization) out.push_back(std::move(rec));
  return out;
}

void write_rescaled_csv(const std::string& path, const std::string& tag,
                        const std::vector<RescaledProcess>& processes) {
  std::ofstream out(path);
  if (!out) throw SimError(Err::IoError, "write_rescaled_csv: cannot open " + path);
  out << "ensemble,z0_re,z0_im,h,R,realization,w_re,w_im\n";
  for (std::size_t i = 0; i < processes.size(); ++i) {
    const auto& p = processes[i];
    for (const cplx& w : p.points)
      out << tag << ',' << format_g17(p.z0.real()) << ',' << format_g17(p.z0.imag()) << ','
          << format_g17(p.h) << ',' << format_g17(p.window_radius) << ',' << i << ','
          << format_g17(w.real()) << ',' << format_g17(w.imag()) << '\n';
  }
}

RescaledEnsemble read_rescaled_csv(const std::string& path) {
  std::ifstream in = open_or_throw(path, "read_rescaled_csv");
  expect_header(in, "ensemble,z0_re,z0_im,h,R,realization,w_re,w_im", path);
  RescaledEnsemble ens;
  std::map<long, RescaledProcess> by_realization;
  std::string line;
  long max_idx = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 8) throw SimError(Err::IoError, "read_rescaled_csv: malformed row");
    if (ens.tag.empty())
      ens.tag = f[0];
    else if (ens.tag != f[0])
      throw SimError(Err::MetadataMismatch, "read_rescaled_csv: mixed ensemble tags");
    const long idx = std::strtol(f[5].c_str(), nullptr, 10);
    max_idx = std::max(max_idx, idx);
    RescaledProcess& p = by_realization[idx];
    p.z0 = {to_double(f[1]), to_double(f[2])};
    p.h = to_double(f[3]);
    p.window_radius = to_double(f[4]);
    p.points.emplace_back(to_double(f[6]), to_double(f[7]));
  }
  if (by_realization.empty())
    throw SimError(Err::EmptyEnsemble, "read_rescaled_csv: no rows in " + path);
  // Realizations with zero retained points are legitimate; keep index gaps as
  // empty processes with the file's shared metadata.
  const RescaledProcess& ref = by_realization.begin()->second;
  ens.processes.assign(max_idx + 1, RescaledProcess{ref.z0, ref.h, ref.window_radius, {}});
  for (auto& [idx, p] : by_realization) ens.processes[idx] = std::move(p);
  return ens;
}

void write_corr_csv(const std::string& path, const CorrelationEstimate& est) {
  std::ofstream out(path);
  if (!out) throw SimError(Err::IoError, "write_corr_csv: cannot open " + path);
  out << "bin_lo_r2,bin_hi_r2,pairs,khat,stderr\n";
  for (std::size_t b = 0; b + 1 < est.bin_edges.size(); ++b)
    out << format_g17(est.bin_edges[b]) << ',' << format_g17(est.bin_edges[b + 1]) << ','
        << est.pair_counts[b] << ',' << format_g17(est.khat[b]) << ','
        << format_g17(est.stderr_[b]) << '\n';
}

CorrelationEstimate read_corr_csv(const std::string& path) {
  std::ifstream in = open_or_throw(path, "read_corr_csv");
  expect_header(in, "bin_lo_r2,bin_hi_r2,pairs,khat,stderr", path);
  CorrelationEstimate est;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 5) throw SimError(Err::IoError, "read_corr_csv: malformed row");
    if (first) {
      est.bin_edges.push_back(to_double(f[0]));
      first = false;
    }
    est.bin_edges.push_back(to_double(f[1]));
    est.pair_counts.push_back(std::strtoll(f[2].c_str(), nullptr, 10));
    est.khat.push_back(to_double(f[3]));
    est.stderr_.push_back(to_double(f[4]));
  }
  if (est.khat.empty()) throw SimError(Err::IoError, "read_corr_csv: no rows in " + path);
  return est;
}

void write_curves_csv(const std::string& path, const std::vector<CurvePoint>& points) {
  std::ofstream out(path);
  if (!out) throw SimError(Err::IoError, "write_curves_csv: cannot open " + path);
  out << "r2,value,curve_name\n";
  for (const auto& p : points)
    out << format_g17(p.r2) << ',' << format_g17(p.value) << ',' << p.curve_name << '\n';
}

std::vector<CurvePoint> read_curves_csv(const std::string& path) {
  std::ifstream in = open_or_throw(path, "read_curves_csv");
  expect_header(in, "r2,value,curve_name", path);
  std::vector<CurvePoint> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 3) throw SimError(Err::IoError, "read_curves_csv: malformed row");
    out.push_back({to_double(f[0]), to_double(f[1]), f[2]});
  }
  return out;
}

}  // namespace specpert
